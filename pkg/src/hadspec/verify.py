"""Randomized checkers, one per identity, vanishing result, or limit theorem.

Each checker draws an admissible instance from its rng, evaluates both
sides of the claim through independent code paths, and returns a
CheckReport.  Exact identities record scaleless residuals against a
fixed tolerance; limit claims record one residual per scale plus a
fitted log-log convergence order.  Checkers are deterministic given
(seed, params) and attach a replayable instance description.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .blocks import (
    BlockPartition,
    block_diagonalizer,
    haar_orthogonal,
    is_block_constant,
    make_block_constant,
    partition_from_mu,
    random_block_orthogonal,
    split_in_out,
    stabilizer_generators,
)
from .eig import eigh, PerturbationPath, eigen_expansion_residual, offdiag_expansion_residual
from .hadamard import diag_sigma, dot_hadamard_closed_form, sigma_hadamard
from .lifts import delta_matrix, divided_difference_out, kp_sum, lift_cycle, lift_in, lift_tau
from .perm import Perm, all_perms, cycle_decomposition, perm_to_matrix, random_perm, sigma_sub_l
from .tensor import (
    DenseTensor,
    conjugate,
    contract_last,
    contract_last_matrix,
    eval_on_matrices,
    tensor_dot,
    tensor_to_json,
)

DEFAULT_SCALES = (1e-2, 1e-3, 1e-4)

RESIDUAL_FLOOR = 1e-13


@dataclass
class CheckReport:
    """Outcome of one randomized check."""

    check_name: str
    params: dict
    residuals: list  # (scale or None, value) pairs
    order_estimate: float | None
    tolerance: float
    passed: bool
    instance: dict = field(default_factory=dict, repr=False)

    def to_json(self) -> dict:
        return {
            "name": self.check_name,
            "params": self.params,
            "residuals": [[s, r] for s, r in self.residuals],
            "order_estimate": self.order_estimate,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }

    def worst_residual(self) -> float:
        return max((r for _, r in self.residuals), default=0.0)


def fit_loglog_slope(scales, residuals, floor: float = RESIDUAL_FLOOR):
    """Least-squares slope of log residual vs log scale.

    Residuals at or below the floor sit in rounding noise and are
    dropped; with fewer than two informative points the order is
    unresolvable (None), which limit checks treat as vacuous success.
    """
    pts = [(t, r) for t, r in zip(scales, residuals) if r > floor]
    if len(pts) < 2:
        return None
    x = np.log([t for t, _ in pts])
    y = np.log([r for _, r in pts])
    return float(np.polyfit(x, y, 1)[0])


def _rel(lhs: float, rhs: float) -> float:
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def _rel_max(a: np.ndarray, b: np.ndarray) -> float:
    scale = max(1.0, float(np.max(np.abs(a))), float(np.max(np.abs(b))))
    return float(np.max(np.abs(a - b))) / scale


def _exact_report(name, params, residuals, tolerance, instance) -> CheckReport:
    passed = all(r <= tolerance for _, r in residuals)
    return CheckReport(name, params, residuals, None, tolerance, passed, instance)


# ---------------------------------------------------------------------------
# admissible instance generation


def gen_mu(rng: np.random.Generator, n: int, num_blocks: int) -> np.ndarray:
    """Nonincreasing mu with the given block count and inter-block gaps >= 1."""
    if not 1 <= num_blocks <= n:
        raise ValueError(f"cannot split {n} coordinates into {num_blocks} blocks")
    sizes = rng.multinomial(n - num_blocks, [1.0 / num_blocks] * num_blocks) + 1
    values = np.empty(num_blocks)
    values[0] = rng.uniform(0.0, 2.0)
    for i in range(1, num_blocks):
        values[i] = values[i - 1] - 1.0 - rng.uniform(0.0, 1.0)
    return np.repeat(values, sizes)


def gen_unit_direction(
    rng: np.random.Generator,
    p: BlockPartition,
    gap: float = 0.1,
    max_tries: int = 500,
) -> np.ndarray:
    """Unit-Frobenius symmetric direction whose block compressions have
    eigenvalue gaps >= ``gap`` (resampled until admissible)."""
    for _ in range(max_tries):
        a = rng.standard_normal((p.n, p.n))
        m = (a + a.T) / 2.0
        m /= np.linalg.norm(m)
        ok = True
        for b in p.blocks:
            if len(b) < 2:
                continue
            lam = eigh(m[np.ix_(b, b)]).eigenvalues
            if np.min(-np.diff(lam)) < gap:
                ok = False
                break
        if ok:
            return m
    raise RuntimeError(f"no admissible direction after {max_tries} tries")


def gen_symmetric(rng: np.random.Generator, n: int) -> np.ndarray:
    a = rng.standard_normal((n, n))
    return (a + a.T) / 2.0


def _mat_list(m) -> list:
    return np.asarray(m).tolist()


# ---------------------------------------------------------------------------
# exact identities


def check_jen3a(rng: np.random.Generator, n: int, k: int, seed=None) -> CheckReport:
    """Conjugated diagonal lifting vs wired product of back-rotated matrices,
    over every permutation of the slots."""
    t = DenseTensor.random(k, n, rng)
    hs = [rng.standard_normal((n, n)) for _ in range(k)]
    v = haar_orthogonal(n, rng)
    hts = [v.T @ h @ v for h in hs]
    residuals = []
    for sigma in all_perms(k):
        lhs = tensor_dot(t, sigma_hadamard(hts, sigma))
        rhs = eval_on_matrices(conjugate(v, diag_sigma(t, sigma)), hs)
        residuals.append((None, _rel(lhs, rhs)))
    instance = {
        "T": tensor_to_json(t),
        "H": [_mat_list(h) for h in hs],
        "V": _mat_list(v),
    }
    return _exact_report(
        "check_jen3a", {"n": n, "k": k, "seed": seed}, residuals, 1e-10, instance
    )


def check_invar_lem(
    rng: np.random.Generator, n: int, k: int, p: BlockPartition, seed=None
) -> CheckReport:
    """Block-diagonal conjugation fixes the diagonal lifting of a
    block-constant tensor."""
    t = make_block_constant(p, k, rng=rng)
    u = random_block_orthogonal(p, rng)
    residuals = []
    for sigma in all_perms(k):
        ds = diag_sigma(t, sigma)
        residuals.append((None, float(np.max(np.abs(conjugate(u, ds).nd - ds.nd)))))
    instance = {"T": tensor_to_json(t), "U": _mat_list(u), "mu": p.mu.tolist()}
    return _exact_report(
        "check_invar_lem",
        {"n": n, "k": k, "blocks": p.num_blocks, "seed": seed},
        residuals,
        1e-10,
        instance,
    )


def check_dec15a(
    rng: np.random.Generator, part: int, n: int, k: int, p: BlockPartition, seed=None
) -> CheckReport:
    """Plugging the compression spectrum into a block-constant tensor equals
    appending the in-part of the perturbation as one more wired factor."""
    if part not in (1, 2):
        raise ValueError(f"part must be 1 or 2, got {part}")
    m = gen_symmetric(rng, n)
    u, h = block_diagonalizer(m, p)
    m_in, _ = split_in_out(m, p)
    hs = [rng.standard_normal((n, n)) for _ in range(k)]
    hts = [u.T @ hh @ u for hh in hs]
    residuals = []
    if part == 1:
        t = make_block_constant(p, k + 1, rng=rng)
        for sigma in all_perms(k):
            lhs = tensor_dot(contract_last(t, h), sigma_hadamard(hts, sigma))
            rhs = tensor_dot(t, sigma_hadamard(hs + [m_in], sigma_sub_l(sigma, k)))
            residuals.append((None, _rel(lhs, rhs)))
    else:
        t = make_block_constant(p, k, rng=rng)
        for sigma in all_perms(k):
            for l in range(k):
                lhs = tensor_dot(
                    contract_last(lift_tau(t, l), h), sigma_hadamard(hts, sigma)
                )
                rhs = tensor_dot(
                    lift_in(t, l, p), sigma_hadamard(hs + [m_in], sigma_sub_l(sigma, l))
                )
                residuals.append((None, _rel(lhs, rhs)))
    instance = {
        "T": tensor_to_json(t),
        "M": _mat_list(m),
        "H": [_mat_list(hh) for hh in hs],
        "mu": p.mu.tolist(),
    }
    return _exact_report(
        "check_dec15a",
        {"part": part, "n": n, "k": k, "blocks": p.num_blocks, "seed": seed},
        residuals,
        1e-10,
        instance,
    )


def check_dec15b(
    rng: np.random.Generator,
    part: int,
    n: int,
    k: int,
    l: int,
    p: BlockPartition,
    seed=None,
) -> CheckReport:
    """Structural vanishing of lifted tensors against in- or out-supported
    matrices under block-diagonal conjugation."""
    if part not in (1, 2, 3):
        raise ValueError(f"part must be 1, 2 or 3, got {part}")
    u = random_block_orthogonal(p, rng)
    h_mat = rng.standard_normal((n, n))
    h_in, h_out = split_in_out(h_mat, p)
    base = make_block_constant(p, k, rng=rng)
    residuals = []
    if part == 1:
        t = divided_difference_out(base, l, p)
        h_used = h_in
        slot = l
    elif part == 2:
        t = lift_in(base, l, p)
        h_used = h_out
        slot = l
    else:
        t = DenseTensor.random(k + 1, n, rng)
        h_used = h_out
        slot = k
    for sigma in all_perms(k):
        lifted = sigma_sub_l(sigma, slot)
        val = contract_last_matrix(conjugate(u, diag_sigma(t, lifted)), h_used)
        residuals.append((None, float(np.max(np.abs(val.nd)))))
    instance = {
        "T": tensor_to_json(t),
        "U": _mat_list(u),
        "H": _mat_list(h_mat),
        "mu": p.mu.tolist(),
    }
    return _exact_report(
        "check_dec15b",
        {"part": part, "n": n, "k": k, "l": l, "blocks": p.num_blocks, "seed": seed},
        residuals,
        1e-12,
        instance,
    )


def check_jan11(
    rng: np.random.Generator, variant: str, n: int, k: int, p: BlockPartition, seed=None
) -> CheckReport:
    """Tensor-level forms of the compression-spectrum identities: conjugated
    diagonal liftings of contracted tensors vs one extra matrix slot."""
    if variant not in ("a1", "a2", "abc1", "abc2"):
        raise ValueError(f"unknown variant {variant!r}")
    residuals = []
    if variant in ("a1", "a2"):
        m = gen_symmetric(rng, n)
        u, h = block_diagonalizer(m, p)
        if variant == "a1":
            t = make_block_constant(p, k + 1, rng=rng)
            for sigma in all_perms(k):
                lhs = conjugate(u, diag_sigma(contract_last(t, h), sigma))
                rhs = contract_last_matrix(diag_sigma(t, sigma_sub_l(sigma, k)), m)
                residuals.append((None, _rel_max(lhs.nd, rhs.nd)))
        else:
            t = make_block_constant(p, k, rng=rng)
            for sigma in all_perms(k):
                for l in range(k):
                    lhs = conjugate(u, diag_sigma(contract_last(lift_tau(t, l), h), sigma))
                    rhs = contract_last_matrix(
                        diag_sigma(lift_in(t, l, p), sigma_sub_l(sigma, l)), m
                    )
                    residuals.append((None, _rel_max(lhs.nd, rhs.nd)))
        instance = {"T": tensor_to_json(t), "M": _mat_list(m), "mu": p.mu.tolist()}
    else:
        h_mat = rng.standard_normal((n, n))
        dh = np.diag(h_mat).copy()
        if variant == "abc1":
            t = DenseTensor.random(k + 1, n, rng)
            for sigma in all_perms(k):
                lhs = diag_sigma(contract_last(t, dh), sigma)
                rhs = contract_last_matrix(diag_sigma(t, sigma_sub_l(sigma, k)), h_mat)
                residuals.append((None, _rel_max(lhs.nd, rhs.nd)))
        else:
            t = DenseTensor.random(k, n, rng)
            for sigma in all_perms(k):
                for l in range(k):
                    lifted = lift_tau(t, l)
                    lhs = diag_sigma(contract_last(lifted, dh), sigma)
                    rhs = contract_last_matrix(
                        diag_sigma(lifted, sigma_sub_l(sigma, l)), h_mat
                    )
                    residuals.append((None, _rel_max(lhs.nd, rhs.nd)))
        instance = {"T": tensor_to_json(t), "H": _mat_list(h_mat)}
    return _exact_report(
        "check_jan11",
        {"variant": variant, "n": n, "k": k, "blocks": p.num_blocks, "seed": seed},
        residuals,
        1e-10,
        instance,
    )


def check_determinant_section(
    rng: np.random.Generator, s: int, n: int, p: BlockPartition, seed=None,
    det_pairs: int = 200,
) -> CheckReport:
    """Coincidence-matrix determinants vanish and the signed sum of diagonal
    liftings cancels, for a family built from divided differences of a
    symmetric tensor supported on coincident multi-indices."""
    if not 2 <= s <= 3:
        raise ValueError(f"family size {s} outside supported range 2..3")
    if s == 2:
        d = DenseTensor.from_array(np.diag(rng.standard_normal(n)))
        family = [d, d]
        base = d
    else:
        k = s - 1
        arr = rng.standard_normal((n,) * k)
        idx = np.indices((n,) * k)
        distinct = np.ones((n,) * k, dtype=bool)
        for a in range(k):
            for b in range(a + 1, k):
                distinct &= idx[a] != idx[b]
        arr[distinct] = 0.0
        from .tensor import symmetrize

        base = symmetrize(DenseTensor.from_array(arr))
        family = [divided_difference_out(base, l, p) for l in range(k)]
        family.append(DenseTensor.zeros(k + 1, n))
    residuals = []
    worst_det = 0.0
    for _ in range(det_pairs):
        i = [int(x) for x in rng.integers(0, n, size=s)]
        j = [int(x) for x in rng.integers(0, n, size=s)]
        worst_det = max(worst_det, abs(float(np.linalg.det(delta_matrix(family, i, j)))))
    residuals.append((None, worst_det))
    residuals.append((None, float(np.max(np.abs(kp_sum(family).nd)))))
    instance = {"base": tensor_to_json(base), "mu": p.mu.tolist()}
    return _exact_report(
        "check_determinant_section",
        {"s": s, "n": n, "blocks": p.num_blocks, "det_pairs": det_pairs, "seed": seed},
        residuals,
        1e-12,
        instance,
    )


def check_cycle_lifting(
    rng: np.random.Generator,
    k: int,
    s: int | None,
    n: int,
    p: BlockPartition,
    seed=None,
    nu: Perm | None = None,
) -> CheckReport:
    """Contracting a cycle-lifted block-constant tensor with the compression
    spectrum equals contracting with the perturbation's diagonal."""
    if nu is None:
        for _ in range(200):
            cand = Perm(tuple(int(i) for i in rng.permutation(k)) + (k,))
            if s is None or len(cycle_decomposition(cand).cycles) == s:
                nu = cand
                break
        else:
            raise RuntimeError(f"no permutation with {s} cycles found for k={k}")
    if nu.size != k + 1 or nu(k) != k:
        raise ValueError("permutation must act on one more symbol and fix the last")
    s_actual = len(cycle_decomposition(nu).cycles)

    m = gen_symmetric(rng, n)
    u, h = block_diagonalizer(m, p)
    dm = np.diag(m).copy()

    residuals = []
    t_plain = make_block_constant(p, max(k, 1), rng=rng)
    residuals.append(
        (None, _rel_max(contract_last(t_plain, h).nd, contract_last(t_plain, dm).nd))
    )

    t = make_block_constant(p, s_actual, rng=rng)
    t_nu = lift_cycle(t, nu)
    residuals.append(
        (None, _rel_max(contract_last(t_nu, h).nd, contract_last(t_nu, dm).nd))
    )

    for sigma in all_perms(k):
        lhs = diag_sigma(contract_last(t_nu, h), sigma)
        rhs = contract_last_matrix(diag_sigma(t_nu, sigma_sub_l(sigma, k)), m)
        residuals.append((None, _rel_max(lhs.nd, rhs.nd)))

    instance = {
        "T": tensor_to_json(t),
        "M": _mat_list(m),
        "nu": list(nu.image),
        "mu": p.mu.tolist(),
    }
    return _exact_report(
        "check_cycle_lifting",
        {
            "k": k,
            "s": s_actual,
            "n": n,
            "blocks": p.num_blocks,
            "nu": list(nu.image),
            "seed": seed,
        },
        residuals,
        1e-10,
        instance,
    )


# ---------------------------------------------------------------------------
# symmetric-function invariance via finite differences

SYMMETRIC_FUNCTIONS = {
    # separable: sum of g(x_i) with g(x) = x**3
    "sum-of-cubes": lambda x: float(np.sum(np.asarray(x) ** 3)),
    # second elementary symmetric polynomial
    "elementary-symmetric-2": lambda x: float(
        (np.sum(np.asarray(x)) ** 2 - np.sum(np.asarray(x) ** 2)) / 2.0
    ),
}


def _fd_gradient(f, mu: np.ndarray) -> np.ndarray:
    n = len(mu)
    g = np.zeros(n)
    for i in range(n):
        d = 1e-5 * max(1.0, abs(mu[i]))
        e = np.zeros(n)
        e[i] = d
        g[i] = (f(mu + e) - f(mu - e)) / (2.0 * d)
    return g


def _fd_hessian(f, mu: np.ndarray) -> np.ndarray:
    n = len(mu)
    hess = np.zeros((n, n))
    steps = [1e-5 * max(1.0, abs(mu[i])) for i in range(n)]
    for i in range(n):
        di = steps[i]
        ei = np.zeros(n)
        ei[i] = di
        hess[i, i] = (f(mu + ei) - 2.0 * f(mu) + f(mu - ei)) / (di * di)
        for j in range(i + 1, n):
            dj = steps[j]
            ej = np.zeros(n)
            ej[j] = dj
            val = (
                f(mu + ei + ej) - f(mu + ei - ej) - f(mu - ei + ej) + f(mu - ei - ej)
            ) / (4.0 * di * dj)
            hess[i, j] = val
            hess[j, i] = val
    return hess


def check_block_l(f_id: str, mu, s: int = 2, seed=None) -> CheckReport:
    """Finite-difference derivatives of a symmetric function are invariant
    under coordinate permutations fixing the base point, and the gradient is
    block-constant."""
    if f_id not in SYMMETRIC_FUNCTIONS:
        raise ValueError(
            f"unknown function id {f_id!r}; choose from {sorted(SYMMETRIC_FUNCTIONS)}"
        )
    if s not in (1, 2):
        raise ValueError(f"derivative order s must be 1 or 2, got {s}")
    f = SYMMETRIC_FUNCTIONS[f_id]
    mu = np.asarray(mu, dtype=float)
    p = partition_from_mu(mu)
    grad = _fd_gradient(f, mu)
    residuals = []
    gens = stabilizer_generators(p)
    for a, b in gens:
        perm = Perm.transposition(p.n, a, b)
        pm = perm_to_matrix(perm)
        residuals.append((None, float(np.max(np.abs(grad - pm.T @ grad)))))
    gdev = 0.0
    for blk in p.blocks:
        vals = grad[np.asarray(blk)]
        gdev = max(gdev, float(np.max(vals) - np.min(vals)))
    residuals.append((None, gdev))
    if s == 2:
        hess = _fd_hessian(f, mu)
        for a, b in gens:
            perm = Perm.transposition(p.n, a, b)
            pm = perm_to_matrix(perm)
            residuals.append((None, float(np.max(np.abs(hess - pm.T @ hess @ pm)))))
    instance = {"mu": mu.tolist(), "f_id": f_id}
    return _exact_report(
        "check_block_l",
        {"f_id": f_id, "mu": mu.tolist(), "s": s, "seed": seed},
        residuals,
        1e-5,
        instance,
    )


# ---------------------------------------------------------------------------
# first-order limit checks


def _limit_report(name, params, residual_rows, tolerance, order_floor, extra_exact,
                  instance) -> CheckReport:
    """Assemble a limit-check report from per-sigma rows of (scale, residual)
    sequences plus optional scaleless exactness residuals."""
    residuals = []
    slopes = []
    for row in residual_rows:
        scales = [t for t, _ in row]
        vals = [r for _, r in row]
        residuals.extend(row)
        slope = fit_loglog_slope(scales, vals)
        if slope is not None:
            slopes.append(slope)
    residuals.extend(extra_exact)
    order_estimate = min(slopes) if slopes else None
    passed = (order_estimate is None or order_estimate >= order_floor) and all(
        r <= tolerance for _, r in extra_exact
    )
    params = dict(params, order_floor=order_floor)
    return CheckReport(name, params, residuals, order_estimate, tolerance, passed, instance)


def check_dec14b(
    rng: np.random.Generator,
    n: int,
    k: int,
    p: BlockPartition,
    scales=DEFAULT_SCALES,
    seed=None,
    max_sigmas: int | None = None,
) -> CheckReport:
    """Difference quotient of the conjugated diagonal lifting along an
    eigenvector path converges to the divided-difference sum."""
    mu = p.mu
    if np.any(np.diff(mu) > 0):
        raise ValueError("mu must be nonincreasing for the eigenvector path")
    m = gen_unit_direction(rng, p)
    _, m_out = split_in_out(m, p)
    t = make_block_constant(p, k, rng=rng)

    sigmas = list(all_perms(k))
    if max_sigmas is not None and len(sigmas) > max_sigmas:
        pick = rng.choice(len(sigmas), size=max_sigmas, replace=False)
        sigmas = [sigmas[int(i)] for i in sorted(pick)]

    ds = {sigma.image: diag_sigma(t, sigma) for sigma in sigmas}
    ddo = [divided_difference_out(t, l, p) for l in range(k)]
    rhs = {}
    for sigma in sigmas:
        acc = np.zeros((n,) * (2 * k))
        for l in range(k):
            acc += contract_last_matrix(
                diag_sigma(ddo[l], sigma_sub_l(sigma, l)), m_out
            ).nd
        rhs[sigma.image] = acc

    rows = {sigma.image: [] for sigma in sigmas}
    for scale in scales:
        u_t = eigh(np.diag(mu) + scale * m).vectors
        for sigma in sigmas:
            lhs = (conjugate(u_t, ds[sigma.image]).nd - ds[sigma.image].nd) / scale
            rows[sigma.image].append(
                (scale, float(np.max(np.abs(lhs - rhs[sigma.image]))))
            )

    # spot-check the scalar closed form against one entry of the assembled sum
    spot_sigma = sigmas[0]
    pairs = [(int(a), int(b)) for a, b in rng.integers(0, n, size=(k, 2))]
    scalar = 0.0
    for l in range(k):
        scalar += dot_hadamard_closed_form(
            ddo[l], pairs, m_out, sigma_sub_l(spot_sigma, l)
        )
    entry = rhs[spot_sigma.image][tuple(a for a, _ in pairs) + tuple(b for _, b in pairs)]
    extra = [(None, _rel(scalar, float(entry)))]

    instance = {
        "T": tensor_to_json(t),
        "M": _mat_list(m),
        "mu": mu.tolist(),
        "sigmas": [list(s.image) for s in sigmas],
    }
    return _limit_report(
        "check_dec14b",
        {"n": n, "k": k, "blocks": p.num_blocks, "scales": list(scales), "seed": seed},
        [rows[sigma.image] for sigma in sigmas],
        1e-10,
        0.9,
        extra,
        instance,
    )


def check_eigen_expansion(
    rng: np.random.Generator,
    n: int,
    p: BlockPartition,
    scales=DEFAULT_SCALES,
    seed=None,
) -> CheckReport:
    """Eigenvalues along an admissible path match the compression-spectrum
    linear model to higher than first order."""
    m = gen_unit_direction(rng, p)
    path = PerturbationPath(p.mu, m, tuple(scales))
    row = [(t, eigen_expansion_residual(path, t)) for t in scales]
    instance = {"mu": p.mu.tolist(), "M": _mat_list(m)}
    return _limit_report(
        "check_eigen_expansion",
        {"n": n, "blocks": p.num_blocks, "scales": list(scales), "seed": seed},
        [row],
        1e-10,
        1.5,
        [],
        instance,
    )


def check_offdiag_expansion(
    rng: np.random.Generator,
    n: int,
    p: BlockPartition,
    scales=DEFAULT_SCALES,
    seed=None,
) -> CheckReport:
    """Eigenvector row products match their first-order divided-difference
    model for every index pair and target block."""
    m = gen_unit_direction(rng, p)
    path = PerturbationPath(p.mu, m, tuple(scales))
    rows = []
    for i in range(n):
        for j in range(n):
            for tb in range(p.num_blocks):
                rows.append(
                    [(t, offdiag_expansion_residual(path, t, i, j, tb)) for t in scales]
                )
    instance = {"mu": p.mu.tolist(), "M": _mat_list(m)}
    return _limit_report(
        "check_offdiag_expansion",
        {"n": n, "blocks": p.num_blocks, "scales": list(scales), "seed": seed},
        rows,
        1e-10,
        1.5,
        [],
        instance,
    )
