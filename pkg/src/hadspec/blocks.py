"""Coordinate-equality structure induced by a generating vector mu.

Two coordinates i, j of {0..n-1} are equivalent when mu[i] == mu[j]
(exact float equality by default).  The resulting partition drives the
in/out matrix splits, the block-constancy and simultaneous-permutation
symmetry predicates, and block-diagonal orthogonal factors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .eig import eigh
from .tensor import DenseTensor, _check_capacity


@dataclass(frozen=True)
class BlockPartition:
    """Partition of {0..n-1} by equal coordinates of mu.

    Block 0 contains index 0; each later block starts at the smallest
    index not yet covered.  ``reps[l]`` is the largest index in block l.
    """

    n: int
    block_id: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]
    reps: tuple[int, ...]
    mu: np.ndarray

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def same_block(self, i: int, j: int) -> bool:
        return self.block_id[i] == self.block_id[j]

    def is_contiguous(self) -> bool:
        """True when every block is a consecutive index run (mu sorted)."""
        return all(
            b[-1] - b[0] + 1 == len(b) for b in self.blocks
        )

    def to_json(self) -> dict:
        return {"mu": self.mu.tolist(), "blocks": [list(b) for b in self.blocks]}


def partition_from_mu(mu, tol: float = 0.0) -> BlockPartition:
    """Group coordinates of mu by value.

    With tol == 0 grouping is exact equality.  A positive tol groups by
    single-linkage: coordinates whose sorted values differ by at most
    tol from their neighbour chain into one block (a convenience for
    noisy inputs, off by default).
    """
    mu = np.array(mu, dtype=float)
    n = len(mu)
    if n < 1:
        raise ValueError("mu must have at least one coordinate")

    if tol > 0.0:
        order = np.argsort(mu, kind="stable")
        labels = np.zeros(n, dtype=int)
        current = 0
        for pos in range(1, n):
            if mu[order[pos]] - mu[order[pos - 1]] > tol:
                current += 1
            labels[order[pos]] = current
        key = [labels[i] for i in range(n)]
    else:
        key = [mu[i] for i in range(n)]

    block_of_key: dict = {}
    blocks: list[list[int]] = []
    block_id = [0] * n
    for i in range(n):
        k = key[i]
        if k not in block_of_key:
            block_of_key[k] = len(blocks)
            blocks.append([])
        b = block_of_key[k]
        block_id[i] = b
        blocks[b].append(i)

    reps = tuple(b[-1] for b in blocks)
    return BlockPartition(
        n=n,
        block_id=tuple(block_id),
        blocks=tuple(tuple(b) for b in blocks),
        reps=reps,
        mu=mu,
    )


def _in_mask(p: BlockPartition) -> np.ndarray:
    bid = np.asarray(p.block_id)
    return bid[:, None] == bid[None, :]


def split_in_out(h, p: BlockPartition) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal-block part and off-block part of h; h_in + h_out == h exactly."""
    h = np.asarray(h, dtype=float)
    if h.shape != (p.n, p.n):
        raise ValueError(f"matrix shape {h.shape} incompatible with n={p.n}")
    mask = _in_mask(p)
    h_in = np.where(mask, h, 0.0)
    h_out = h - h_in
    return h_in, h_out


def _rep_index_arrays(t: DenseTensor, p: BlockPartition):
    rep_map = np.array([p.reps[p.block_id[i]] for i in range(p.n)])
    return np.ix_(*([rep_map] * t.order)) if t.order else ()


def is_block_constant(t: DenseTensor, p: BlockPartition, atol: float = 0.0) -> bool:
    """Entries agree (within atol) on equivalent multi-indices.

    Each entry is compared to the entry at the representative
    multi-index obtained by mapping every index to its block rep.
    """
    if t.dim != p.n:
        raise ValueError(f"tensor dim {t.dim} != partition size {p.n}")
    if t.order == 0:
        return True
    rep_view = t.nd[_rep_index_arrays(t, p)]
    if atol == 0.0:
        return bool(np.array_equal(t.nd, rep_view))
    return bool(np.max(np.abs(t.nd - rep_view)) <= atol)


def make_block_constant(
    p: BlockPartition,
    k: int,
    values=None,
    rng: np.random.Generator | None = None,
) -> DenseTensor:
    """Block-constant order-k tensor from one value per block multi-index.

    ``values`` is an array of shape (r,)*k (r = number of blocks); when
    omitted it is drawn standard-normal from rng.
    """
    _check_capacity(k, p.n)
    r = p.num_blocks
    if values is None:
        if rng is None:
            raise ValueError("provide values or an rng")
        values = rng.standard_normal((r,) * k)
    values = np.asarray(values, dtype=float).reshape((r,) * k)
    if k == 0:
        return DenseTensor.from_array(values)
    bid = np.asarray(p.block_id)
    return DenseTensor.from_array(values[np.ix_(*([bid] * k))])


def stabilizer_generators(p: BlockPartition) -> list[tuple[int, int]]:
    """Adjacent coordinate swaps within each block.

    These transpositions generate all coordinate permutations fixing mu
    (a product of symmetric groups, one per block).
    """
    gens = []
    for b in p.blocks:
        for a, c in zip(b, b[1:]):
            gens.append((a, c))
    return gens


def is_mu_symmetric(t: DenseTensor, p: BlockPartition) -> bool:
    """Invariance under simultaneous slot-wise coordinate permutations fixing mu."""
    if t.dim != p.n:
        raise ValueError(f"tensor dim {t.dim} != partition size {p.n}")
    if t.order == 0:
        return True
    for a, c in stabilizer_generators(p):
        g = np.arange(p.n)
        g[a], g[c] = g[c], g[a]
        permuted = t.nd[np.ix_(*([g] * t.order))]
        if not np.array_equal(t.nd, permuted):
            return False
    return True


def haar_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed orthogonal matrix: QR of a Gaussian, R-sign corrected."""
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def random_block_orthogonal(p: BlockPartition, rng: np.random.Generator) -> np.ndarray:
    """Orthogonal matrix supported on the diagonal blocks of the partition."""
    u = np.zeros((p.n, p.n))
    for b in p.blocks:
        idx = np.asarray(b)
        u[np.ix_(idx, idx)] = haar_orthogonal(len(b), rng)
    return u


def block_diagonalizer(m, p: BlockPartition) -> tuple[np.ndarray, np.ndarray]:
    """Block-diagonal orthogonal u and vector h with u^T m_in u == Diag h.

    Each diagonal block of m is eigendecomposed on its own; within a
    block the entries of h are its eigenvalues in nonincreasing order
    (placed at the block's member positions in ascending index order).
    """
    m = np.asarray(m, dtype=float)
    if m.shape != (p.n, p.n):
        raise ValueError(f"matrix shape {m.shape} incompatible with n={p.n}")
    if np.max(np.abs(m - m.T)) > 1e-10 * max(1.0, np.max(np.abs(m))):
        raise ValueError("matrix is not symmetric")
    u = np.zeros((p.n, p.n))
    h = np.zeros(p.n)
    for b in p.blocks:
        idx = np.asarray(b)
        dec = eigh(m[np.ix_(idx, idx)])
        u[np.ix_(idx, idx)] = dec.vectors
        h[idx] = dec.eigenvalues
    return u, h
