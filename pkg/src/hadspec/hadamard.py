"""Permutation-wired Hadamard products of matrices and the diagonal lifting.

The order-k product of matrices H_1..H_k wired by a permutation sigma is

    result[i_1..i_k] = prod_s H_s[i_s, i_{sigma^{-1}(s)}]

which for k = 2 and sigma the swap reduces to the classical entrywise
product of two symmetric matrices.  The diagonal lifting embeds an
order-k tensor into an order-2k tensor supported on the incidence
pattern i_s == j_{sigma(s)}.
"""

from __future__ import annotations

import numpy as np

from .perm import Perm
from .tensor import DenseTensor, _check_capacity


def sigma_hadamard(hs, sigma: Perm) -> DenseTensor:
    """Wire the rows of each H_s to the columns picked out by sigma.

    Implemented as a single einsum: operand s carries labels
    (s, sigma^{-1}(s)); a fixed slot of sigma therefore contributes the
    diagonal of its matrix.
    """
    hs = [np.asarray(h, dtype=float) for h in hs]
    k = len(hs)
    if k < 1:
        raise ValueError("need at least one matrix")
    if sigma.size != k:
        raise ValueError(f"permutation size {sigma.size} != number of matrices {k}")
    n = hs[0].shape[0]
    for h in hs:
        if h.shape != (n, n):
            raise ValueError("all matrices must be square with equal dim")
    inv = sigma.inverse()
    args = []
    for s, h in enumerate(hs):
        args.extend([h, [s, inv(s)]])
    args.append(list(range(k)))
    return DenseTensor.from_array(np.einsum(*args, optimize=False))


def diag_sigma(t: DenseTensor, sigma: Perm) -> DenseTensor:
    """Order-2k tensor carrying t on the incidence i_s == j_{sigma(s)}, zero off it."""
    k = t.order
    if sigma.size != k:
        raise ValueError(f"permutation size {sigma.size} != tensor order {k}")
    _check_capacity(2 * k, t.dim)
    n = t.dim
    out = np.zeros((n,) * (2 * k))
    idx = np.indices((n,) * k)
    inv = sigma.inverse()
    # j_m = i_{sigma^{-1}(m)} parametrizes the support
    j_idx = tuple(idx[inv(m)] for m in range(k))
    out[tuple(idx) + j_idx] = t.nd
    return DenseTensor.from_array(out)


def eval_diag_sigma(t: DenseTensor, sigma: Perm, hs) -> float:
    """Evaluate the diagonal lifting of t on matrices without materializing it.

    Independent of :func:`diag_sigma` + dense evaluation; the two paths
    cross-check each other in the tests.
    """
    hs = [np.asarray(h, dtype=float) for h in hs]
    if len(hs) != t.order:
        raise ValueError(f"expected {t.order} matrices, got {len(hs)}")
    inv = sigma.inverse()
    args = [t.nd, list(range(t.order))]
    for s, h in enumerate(hs):
        args.extend([h, [s, inv(s)]])
    return float(np.einsum(*args, optimize=False))


def dot_hadamard_closed_form(
    t: DenseTensor, basics, h, sigma: Perm
) -> float:
    """Dot product of t against a wired product of basis matrices and one full matrix.

    The full matrix h occupies the last slot k-1; ``basics`` lists the
    (row, col) pairs of the k-1 basis matrices in slots 0..k-2.  Two
    closed forms apply: when sigma fixes the last slot the product
    collapses onto the diagonal of h, otherwise a single entry of t and
    a single entry of h survive.
    """
    k = t.order
    if sigma.size != k or len(basics) != k - 1:
        raise ValueError("need k-1 basis index pairs and a size-k permutation")
    h = np.asarray(h, dtype=float)
    if h.shape != (t.dim, t.dim):
        raise ValueError(f"matrix shape {h.shape} incompatible with dim {t.dim}")
    n = t.dim
    rows = [p for p, _ in basics]
    cols = [q for _, q in basics]
    if any(not (0 <= p < n and 0 <= q < n) for p, q in basics):
        raise ValueError("basis index out of range")
    inv = sigma.inverse()
    last = k - 1

    if inv(last) == last:
        coeff = 1.0
        for s in range(k - 1):
            if rows[s] != cols[sigma(s)]:
                return 0.0
        diag_sum = float(np.dot(t.nd[tuple(rows)], np.diag(h)))
        return coeff * diag_sum

    l = inv(last)
    for s in range(k - 1):
        if s == l:
            continue
        if rows[s] != cols[sigma(s)]:
            return 0.0
    j_last = cols[sigma(last)]
    entry_t = float(t.nd[tuple(rows) + (j_last,)])
    return entry_t * float(h[j_last, rows[l]])
