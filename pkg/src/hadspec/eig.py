"""Symmetric eigendecomposition and first-order eigenvalue expansions.

The solver is a self-contained cyclic Jacobi iteration, chosen for its
unconditional convergence on symmetric input and for bitwise
reproducibility: fixed sweep order, fixed rotation formulas, then a
stable nonincreasing sort and a per-column sign convention (the entry of
largest magnitude, first on ties, is made nonnegative).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from .blocks import BlockPartition

MAX_SWEEPS = 100

OFF_DIAG_FACTOR = 1e-14


class ConvergenceError(RuntimeError):
    """Jacobi iteration failed to reach the off-diagonal threshold."""


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues in nonincreasing order; column j of vectors pairs with eigenvalue j."""

    eigenvalues: np.ndarray
    vectors: np.ndarray


def _require_symmetric(a: np.ndarray, tol: float) -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a))) if a.size else 0.0)
    if np.max(np.abs(a - a.T)) > tol * scale:
        raise ValueError("matrix is not symmetric within tolerance")


def eigh(a) -> SpectralDecomposition:
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.

    Sweeps run in fixed (p, q) order until the off-diagonal Frobenius
    mass drops below 1e-14 times the matrix norm, at most 100 sweeps;
    non-convergence raises rather than returning silently.
    """
    a = np.asarray(a, dtype=float)
    _require_symmetric(a, 1e-10)
    n = a.shape[0]
    w = (a + a.T) / 2.0
    v = np.eye(n)

    norm = float(np.linalg.norm(w))
    threshold = OFF_DIAG_FACTOR * norm

    for _ in range(MAX_SWEEPS + 1):
        off = float(np.linalg.norm(w - np.diag(np.diag(w))))
        if off <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = w[p, q]
                if apq == 0.0:
                    continue
                diff = w[q, q] - w[p, p]
                if abs(apq) < 1e-36 * abs(diff):
                    # small-angle limit; also keeps tau*tau from overflowing
                    t = apq / diff
                else:
                    tau = diff / (2.0 * apq)
                    if tau >= 0.0:
                        t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                    else:
                        t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c

                wp = w[p, :].copy()
                wq = w[q, :].copy()
                w[p, :] = c * wp - s * wq
                w[q, :] = s * wp + c * wq
                wp = w[:, p].copy()
                wq = w[:, q].copy()
                w[:, p] = c * wp - s * wq
                w[:, q] = s * wp + c * wq
                w[p, q] = 0.0
                w[q, p] = 0.0

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        raise ConvergenceError(
            f"Jacobi iteration did not converge in {MAX_SWEEPS} sweeps "
            f"(off-diagonal mass {off:.3e}, threshold {threshold:.3e})"
        )

    lam = np.diag(w).copy()
    order = np.argsort(-lam, kind="stable")
    lam = lam[order]
    v = v[:, order]

    for j in range(n):
        i0 = int(np.argmax(np.abs(v[:, j])))
        if v[i0, j] < 0.0:
            v[:, j] = -v[:, j]

    lam.flags.writeable = False
    v.flags.writeable = False
    return SpectralDecomposition(eigenvalues=lam, vectors=v)


@dataclass(frozen=True)
class PerturbationPath:
    """Base point mu (nonincreasing), unit-Frobenius symmetric direction, shrinking scales."""

    mu: np.ndarray
    direction: np.ndarray
    scales: tuple[float, ...]

    def __post_init__(self):
        mu = np.asarray(self.mu, dtype=float)
        m = np.asarray(self.direction, dtype=float)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "direction", m)
        if np.any(np.diff(mu) > 0):
            raise ValueError("mu must be nonincreasing")
        if m.shape != (len(mu), len(mu)):
            raise ValueError("direction shape incompatible with mu")
        if np.max(np.abs(m - m.T)) > 1e-12:
            raise ValueError("direction must be symmetric")
        if abs(np.linalg.norm(m) - 1.0) > 1e-12:
            raise ValueError("direction must have unit Frobenius norm")
        sc = tuple(float(t) for t in self.scales)
        object.__setattr__(self, "scales", sc)
        if not sc or any(t <= 0 for t in sc) or any(
            a <= b for a, b in zip(sc, sc[1:])
        ):
            raise ValueError("scales must be positive and strictly decreasing")


def h_of(m, p: BlockPartition) -> np.ndarray:
    """Concatenated nonincreasing eigenvalues of the diagonal-block compressions of m.

    Requires contiguous blocks (mu sorted), so the concatenation lines up
    with coordinate order.
    """
    m = np.asarray(m, dtype=float)
    if not p.is_contiguous():
        raise ValueError("partition blocks must be contiguous index runs")
    _require_symmetric(m, 1e-10)
    out = np.zeros(p.n)
    for b in p.blocks:
        idx = np.asarray(b)
        out[idx] = eigh(m[np.ix_(idx, idx)]).eigenvalues
    return out


def eigen_expansion_residual(path: PerturbationPath, t: float) -> float:
    """Sup-norm gap between the eigenvalues at scale t and their linear model.

    Computes || lambda(Diag mu + t M) - mu - h(t M) ||_inf, which shrinks
    faster than t along admissible paths.
    """
    from .blocks import partition_from_mu

    if t not in path.scales:
        raise ValueError(f"scale {t} is not on the path")
    p = partition_from_mu(path.mu)
    a = np.diag(path.mu) + t * path.direction
    lam = eigh(a).eigenvalues
    return float(np.max(np.abs(lam - path.mu - h_of(t * path.direction, p))))


def offdiag_expansion_residual(
    path: PerturbationPath, t: float, i: int, j: int, tblock: int
) -> float:
    """Residual of the first-order model for eigenvector row products.

    With U_t the eigenvector matrix at scale t, compares
    sum_{p in block tblock} U_t[i,p] U_t[j,p] against
    delta_ij * [i's block == tblock] plus the divided-difference linear
    term; the sum is invariant under column sign flips and within-block
    column reordering, so no eigenvector alignment is applied.
    """
    from .blocks import partition_from_mu

    if t not in path.scales:
        raise ValueError(f"scale {t} is not on the path")
    p = partition_from_mu(path.mu)
    a = np.diag(path.mu) + t * path.direction
    u = eigh(a).vectors

    cols = np.asarray(p.blocks[tblock])
    s_val = float(np.dot(u[i, cols], u[j, cols]))

    bl = p.block_id[i]
    bs = p.block_id[j]
    d_lt = 1.0 if bl == tblock else 0.0
    d_st = 1.0 if bs == tblock else 0.0
    base = (1.0 if i == j else 0.0) * d_lt
    if d_lt == d_st:
        linear = 0.0
    else:
        scale = t * float(np.linalg.norm(path.direction))
        linear = (d_lt - d_st) / (path.mu[i] - path.mu[j]) * path.direction[i, j] * scale
    return abs(s_val - base - linear)
