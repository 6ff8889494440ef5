"""Dense order-k tensors on R^n.

Storage is a flat float64 array of length n**k in row-major order (last
index fastest), so the entry at (i_1, ..., i_k) sits at flat offset
sum(i_s * n**(k-s)).  Matrices are order-2 tensors and vectors order-1;
plain numpy arrays are accepted wherever a matrix or vector argument is
expected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

MAX_ENTRIES = 10**7

ORTHO_TOL = 1e-10

_PARANOID = False


def set_paranoid(enabled: bool) -> None:
    """Globally enable orthogonality precondition checks in :func:`conjugate`.

    Off by default: the check costs O(n^3) per call and the harness
    controls its inputs.
    """
    global _PARANOID
    _PARANOID = bool(enabled)


class CapacityError(ValueError):
    """Requested tensor would exceed the dense-storage entry budget."""


def _check_capacity(order: int, dim: int) -> None:
    if dim**order > MAX_ENTRIES:
        raise CapacityError(
            f"tensor with dim={dim}, order={order} has {dim**order} entries "
            f"(limit {MAX_ENTRIES})"
        )


@dataclass(frozen=True, eq=False)
class DenseTensor:
    order: int
    dim: int
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.order < 0 or self.dim < 1:
            raise ValueError(f"bad shape: order={self.order}, dim={self.dim}")
        _check_capacity(self.order, self.dim)
        flat = np.ascontiguousarray(self.data, dtype=float).reshape(-1)
        if flat.size != self.dim**self.order:
            raise ValueError(
                f"data length {flat.size} != dim**order = {self.dim**self.order}"
            )
        flat.flags.writeable = False
        object.__setattr__(self, "data", flat)

    @property
    def nd(self) -> np.ndarray:
        """Read-only view shaped (dim,) * order."""
        return self.data.reshape((self.dim,) * self.order)

    def get(self, *idx: int) -> float:
        if len(idx) != self.order:
            raise ValueError(f"expected {self.order} indices, got {len(idx)}")
        return float(self.nd[idx])

    def norm(self) -> float:
        return float(np.linalg.norm(self.data))

    @staticmethod
    def from_array(arr) -> DenseTensor:
        arr = np.asarray(arr, dtype=float)
        dims = set(arr.shape)
        if len(dims) > 1:
            raise ValueError(f"all modes must share one dim, got shape {arr.shape}")
        dim = arr.shape[0] if arr.ndim else 1
        return DenseTensor(arr.ndim, dim, arr.reshape(-1))

    @staticmethod
    def zeros(order: int, dim: int) -> DenseTensor:
        _check_capacity(order, dim)
        return DenseTensor(order, dim, np.zeros(dim**order))

    @staticmethod
    def random(order: int, dim: int, rng: np.random.Generator) -> DenseTensor:
        _check_capacity(order, dim)
        return DenseTensor(order, dim, rng.standard_normal(dim**order))


def _require_same_shape(a: DenseTensor, b: DenseTensor) -> None:
    if a.order != b.order or a.dim != b.dim:
        raise ValueError(
            f"shape mismatch: ({a.order},{a.dim}) vs ({b.order},{b.dim})"
        )


def tensor_dot(a: DenseTensor, b: DenseTensor) -> float:
    """Entrywise dot product: sum over all multi-indices of products."""
    _require_same_shape(a, b)
    return float(np.dot(a.data, b.data))


def contract_last(t: DenseTensor, h) -> DenseTensor:
    """Plug the vector h into the last slot, dropping the order by one."""
    if t.order < 1:
        raise ValueError("cannot contract an order-0 tensor")
    h = np.asarray(h, dtype=float)
    if h.shape != (t.dim,):
        raise ValueError(f"vector length {h.shape} incompatible with dim {t.dim}")
    return DenseTensor.from_array(np.tensordot(t.nd, h, axes=([t.order - 1], [0])))


def contract_last_matrix(t: DenseTensor, m) -> DenseTensor:
    """Plug the matrix m into the last matrix slot of an order-2K tensor.

    An order-2K tensor is read as a K-linear form on matrices: its first
    K slots are the row indices and its last K slots the column indices
    of the K matrix arguments.  The result has order 2K-2.
    """
    if t.order % 2 != 0 or t.order < 2:
        raise ValueError(f"need even order >= 2, got {t.order}")
    m = np.asarray(m, dtype=float)
    if m.shape != (t.dim, t.dim):
        raise ValueError(f"matrix shape {m.shape} incompatible with dim {t.dim}")
    half = t.order // 2
    out = np.tensordot(t.nd, m, axes=([half - 1, t.order - 1], [0, 1]))
    return DenseTensor.from_array(out)


def eval_on_matrices(t: DenseTensor, hs) -> float:
    """Evaluate an order-2k tensor as a k-linear form on the k matrices hs."""
    if t.order % 2 != 0:
        raise ValueError(f"need even order, got {t.order}")
    k = t.order // 2
    hs = [np.asarray(h, dtype=float) for h in hs]
    if len(hs) != k:
        raise ValueError(f"expected {k} matrices, got {len(hs)}")
    for h in hs:
        if h.shape != (t.dim, t.dim):
            raise ValueError(f"matrix shape {h.shape} incompatible with dim {t.dim}")
    # row index of slot s is einsum label s, column index is label k+s
    args = [t.nd, list(range(2 * k))]
    for s, h in enumerate(hs):
        args.extend([h, [s, k + s]])
    return float(np.einsum(*args, optimize=False))


def conjugate(u, t: DenseTensor, check: bool = False) -> DenseTensor:
    """Apply the orthogonal matrix u to every slot of t.

    Entry formula: result[i_1..i_k] = sum_p t[p_1..p_k] * prod_s u[i_s, p_s].
    Computed as k successive mode products (cost k * n**(k+1)); a naive
    nested-loop reference lives in the test suite.  Orthogonality of u is
    only verified when ``check`` is set (the paranoid harness flag).
    """
    u = np.asarray(u, dtype=float)
    if u.shape != (t.dim, t.dim):
        raise ValueError(f"matrix shape {u.shape} incompatible with dim {t.dim}")
    if check or _PARANOID:
        err = np.max(np.abs(u.T @ u - np.eye(t.dim)))
        if err > ORTHO_TOL:
            raise ValueError(f"matrix is not orthogonal: max |U^T U - I| = {err:.3e}")
    if t.order == 0:
        return t
    out = t.nd
    for _ in range(t.order):
        # contract current axis 0 with u's second index; new index lands last,
        # so k passes restore the original axis order
        out = np.tensordot(out, u, axes=([0], [1]))
    return DenseTensor.from_array(out)


def is_symmetric_tensor(t: DenseTensor) -> bool:
    """Entry invariance under all slot permutations, via adjacent swaps."""
    nd = t.nd
    for s in range(t.order - 1):
        if not np.array_equal(nd, np.swapaxes(nd, s, s + 1)):
            return False
    return True


def symmetrize(t: DenseTensor) -> DenseTensor:
    """Average over all slot permutations of t.

    Each entry averages its orbit with the terms sorted before summing,
    so equivalent entries come out bitwise equal and the result passes
    :func:`is_symmetric_tensor` exactly.
    """
    import itertools
    import math

    perms = list(itertools.permutations(range(t.order)))
    nd = t.nd
    out = np.empty_like(nd)
    for idx in itertools.product(range(t.dim), repeat=t.order):
        terms = sorted(nd[tuple(idx[a] for a in axes)] for axes in perms)
        out[idx] = math.fsum(terms) / len(perms)
    return DenseTensor.from_array(out)


def basis_matrix(p: int, q: int, n: int) -> np.ndarray:
    """Standard basis matrix with a single 1 at row p, column q."""
    if not (0 <= p < n and 0 <= q < n):
        raise ValueError(f"basis index ({p},{q}) out of range for n={n}")
    m = np.zeros((n, n))
    m[p, q] = 1.0
    return m


def tensor_to_json(t: DenseTensor) -> dict:
    return {"order": t.order, "dim": t.dim, "data": t.data.tolist()}


def tensor_from_json(obj: dict) -> DenseTensor:
    return DenseTensor(int(obj["order"]), int(obj["dim"]), np.asarray(obj["data"]))


def save_tensor(t: DenseTensor, path) -> None:
    with open(path, "w") as fh:
        json.dump(tensor_to_json(t), fh)


def load_tensor(path) -> DenseTensor:
    with open(path) as fh:
        return tensor_from_json(json.load(fh))
