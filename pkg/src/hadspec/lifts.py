"""Order-raising linear maps on dense tensors.

Two families: quotient maps that difference a slot against a new last
index and divide by the gap in mu (supported off the diagonal blocks),
and inflation maps that copy a tensor onto an equality or equivalence
hyperplane (supported on them).  Both preserve block-constancy.  The
cycle lifting generalizes the inflation maps: it places an order-s
tensor on the coincidence subspace cut out by a permutation with s
cycles.
"""

from __future__ import annotations

import numpy as np

from .blocks import BlockPartition
from .perm import Perm, cycle_decomposition, sigma_sub_l
from .tensor import DenseTensor, _check_capacity
from .hadamard import diag_sigma


def _slot_replaced_view(t: DenseTensor, l: int) -> np.ndarray:
    """Broadcast view B[i_0..i_{k-1}, i_k] = t[i_0.., i_k at slot l, ..i_{k-1}]."""
    k = t.order
    shape = (t.dim,) * (k + 1)
    moved = np.moveaxis(t.nd, l, -1)
    return np.broadcast_to(np.expand_dims(moved, l), shape)


def _original_view(t: DenseTensor) -> np.ndarray:
    shape = (t.dim,) * (t.order + 1)
    return np.broadcast_to(t.nd[..., None], shape)


def _pair_grids(t: DenseTensor, l: int):
    """Index grids (i_l, i_k) broadcast over the order-(k+1) result shape."""
    k = t.order
    n = t.dim
    g_l = np.arange(n).reshape((1,) * l + (n,) + (1,) * (k - l))
    g_new = np.arange(n).reshape((1,) * k + (n,))
    return g_l, g_new


def divided_difference_out(t: DenseTensor, l: int, p: BlockPartition) -> DenseTensor:
    """Difference slot l against a new last index, divided by the mu gap.

    Entries with the slot-l index equivalent to the new index are zero,
    so every evaluated denominator is structurally nonzero; no epsilon
    guard is involved.
    """
    k = t.order
    if not 0 <= l < k:
        raise ValueError(f"slot {l} out of range for order {k}")
    if t.dim != p.n:
        raise ValueError(f"tensor dim {t.dim} != partition size {p.n}")
    _check_capacity(k + 1, t.dim)
    g_l, g_new = _pair_grids(t, l)
    bid = np.asarray(p.block_id)
    same = bid[g_l] == bid[g_new]
    mu = p.mu
    denom = np.where(same, 1.0, mu[g_new] - mu[g_l])
    numer = _slot_replaced_view(t, l) - _original_view(t)
    return DenseTensor.from_array(np.where(same, 0.0, numer / denom))


def lift_in(t: DenseTensor, l: int, p: BlockPartition) -> DenseTensor:
    """Copy t onto the equivalence hyperplane of slot l and a new last index.

    On entries whose slot-l index is equivalent to the new index, slot l
    is replaced by the new index (a no-op for block-constant t); off the
    hyperplane the result is zero.
    """
    k = t.order
    if not 0 <= l < k:
        raise ValueError(f"slot {l} out of range for order {k}")
    if t.dim != p.n:
        raise ValueError(f"tensor dim {t.dim} != partition size {p.n}")
    _check_capacity(k + 1, t.dim)
    g_l, g_new = _pair_grids(t, l)
    bid = np.asarray(p.block_id)
    same = bid[g_l] == bid[g_new]
    return DenseTensor.from_array(np.where(same, _slot_replaced_view(t, l), 0.0))


def lift_tau(t: DenseTensor, l: int) -> DenseTensor:
    """Copy t onto the equality hyperplane i_l == i_k of one extra slot."""
    k = t.order
    if not 0 <= l < k:
        raise ValueError(f"slot {l} out of range for order {k}")
    _check_capacity(k + 1, t.dim)
    g_l, g_new = _pair_grids(t, l)
    return DenseTensor.from_array(
        np.where(g_l == g_new, _original_view(t), 0.0)
    )


def lift_cycle(t: DenseTensor, nu: Perm) -> DenseTensor:
    """Place an order-s tensor on the coincidence subspace of a permutation.

    nu acts on {0..k-1} and has s disjoint cycles; the result is the
    order-k tensor equal to t (read off one index per cycle, in
    canonical cycle order) on multi-indices constant along every cycle,
    and zero elsewhere.
    """
    decomp = cycle_decomposition(nu)
    s = len(decomp.cycles)
    if t.order != s:
        raise ValueError(
            f"tensor order {t.order} != number of cycles {s} of the permutation"
        )
    k = nu.size
    n = t.dim
    _check_capacity(k, n)
    idx = np.indices((n,) * k)
    mask = np.ones((n,) * k, dtype=bool)
    for l in range(k):
        mask &= idx[l] == idx[nu(l)]
    gather = t.nd[tuple(idx[c[0]] for c in decomp.cycles)]
    return DenseTensor.from_array(np.where(mask, gather, 0.0))


def delta_matrix(tensors, i, j) -> np.ndarray:
    """Coincidence matrix whose determinant vanishes for admissible families.

    Entry (p, q) is [i_p == j_q] for q < s-1; the last column carries
    T_p[i] * [i_p == j_{s-1}].  The family must satisfy the two support
    conditions (values refine the multi-index; zero on pairwise-distinct
    multi-indices) for the vanishing to hold.
    """
    s = len(tensors)
    i = list(i)
    j = list(j)
    if len(i) != s or len(j) != s:
        raise ValueError(f"multi-indices must have length {s}")
    for t in tensors:
        if t.order != s:
            raise ValueError("every tensor must have order equal to the family size")
    out = np.zeros((s, s))
    for p in range(s):
        for q in range(s - 1):
            out[p, q] = 1.0 if i[p] == j[q] else 0.0
        out[p, s - 1] = tensors[p].nd[tuple(i)] * (1.0 if i[p] == j[s - 1] else 0.0)
    return out


def kp_sum(tensors) -> DenseTensor:
    """Signed sum of diagonal liftings over all slot insertions.

    For a family T_0..T_{s-1} of order-s tensors, accumulates
    sign(sigma_(l)) * DiagLift(T_l, sigma_(l)) over every permutation
    sigma of {0..s-2} and every insertion slot l; the result vanishes
    when the family satisfies the coincidence-matrix conditions.
    """
    import itertools

    s = len(tensors)
    if s < 1:
        raise ValueError("need at least one tensor")
    if s > 4:
        raise ValueError("family size capped at 4")
    n = tensors[0].dim
    for t in tensors:
        if t.order != s or t.dim != n:
            raise ValueError("tensors must share order s and dim")
    _check_capacity(2 * s, n)
    acc = DenseTensor.zeros(2 * s, n).nd.copy()
    for img in itertools.permutations(range(s - 1)):
        sigma = Perm(img)
        for l in range(s):
            lifted = sigma_sub_l(sigma, l)
            acc += lifted.sign() * diag_sigma(tensors[l], lifted).nd
    return DenseTensor.from_array(acc)
