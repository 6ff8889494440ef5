"""Command-line entry point: run the verification suite or single checks.

Subcommands:

    hadspec suite run [flags]      run every registered check family
    hadspec check NAME [flags]     run one family (supports --part/--variant)
    hadspec tensor show FILE       pretty-print a tensor JSON file

Exit codes: 0 all checks pass, 1 some check failed, 2 bad configuration,
unknown checker, or I/O failure.  Reports are deterministic for a fixed
seed; the JSON report carries no timestamp.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import zlib
from dataclasses import dataclass, field

import numpy as np

from . import tensor as tensor_mod
from .blocks import partition_from_mu
from .tensor import load_tensor
from . import verify
from .verify import CheckReport

SUITE_VERSION = "0.1.0"

DEFAULT_SEED = 20240601


class ConfigError(ValueError):
    pass


@dataclass
class SuiteConfig:
    seed: int = DEFAULT_SEED
    n_list: tuple[int, ...] = (3, 4)
    k_max: int = 3
    trials: int = 6
    scales: tuple[float, ...] = verify.DEFAULT_SCALES
    block_tol: float = 0.0
    output_path: str | None = None
    paranoid: bool = False
    only: str | None = None
    tol_override: float | None = None
    capacity_override: bool = False

    def validate(self) -> None:
        if self.seed < 0:
            raise ConfigError("seed must be nonnegative")
        if not self.n_list or any(n < 2 for n in self.n_list):
            raise ConfigError("dimension list must contain integers >= 2")
        if self.k_max < 1:
            raise ConfigError("k_max must be at least 1")
        if self.k_max > 3 and not self.capacity_override:
            raise ConfigError("k_max > 3 requires --capacity-override")
        if self.trials < 1:
            raise ConfigError("trials must be positive")
        if not self.scales or any(t <= 0 for t in self.scales):
            raise ConfigError("scales must be positive")
        if any(a <= b for a, b in zip(self.scales, self.scales[1:])):
            raise ConfigError("scales must be strictly decreasing")
        if self.block_tol < 0:
            raise ConfigError("block tolerance must be nonnegative")
        if self.tol_override is not None and self.tol_override <= 0:
            raise ConfigError("tolerance override must be positive")


def _rng(config: SuiteConfig, name: str, trial: int) -> np.random.Generator:
    return np.random.default_rng([config.seed, zlib.crc32(name.encode()), trial])


def _grid(config: SuiteConfig, trial: int) -> tuple[int, int, int]:
    """Cycle (n, k, num_blocks) deterministically across trials."""
    n = config.n_list[trial % len(config.n_list)]
    k = (trial % config.k_max) + 1
    nb = min(2 + (trial % 2), n)
    return n, k, nb


def _partition(config: SuiteConfig, rng, n: int, nb: int):
    return partition_from_mu(verify.gen_mu(rng, n, nb), tol=config.block_tol)


def _run_jen3a(config, part=None, variant=None):
    out = []
    for i in range(config.trials):
        n, k, _ = _grid(config, i)
        out.append(verify.check_jen3a(_rng(config, "check_jen3a", i), n, k, seed=i))
    return out


def _run_invar_lem(config, part=None, variant=None):
    out = []
    for i in range(config.trials):
        n, k, nb = _grid(config, i)
        rng = _rng(config, "check_invar_lem", i)
        p = _partition(config, rng, n, nb)
        out.append(verify.check_invar_lem(rng, n, k, p, seed=i))
    return out


def _run_dec14b(config, part=None, variant=None):
    out = []
    for i in range(config.trials):
        n, k, nb = _grid(config, i)
        rng = _rng(config, "check_dec14b", i)
        p = _partition(config, rng, n, nb)
        out.append(
            verify.check_dec14b(
                rng, n, k, p, scales=config.scales, seed=i,
                max_sigmas=None if k <= 2 else 3,
            )
        )
    return out


def _run_dec15a(config, part=None, variant=None):
    parts = (1, 2) if part is None else (part,)
    out = []
    for i in range(config.trials):
        n, k, nb = _grid(config, i)
        rng = _rng(config, "check_dec15a", i)
        p = _partition(config, rng, n, nb)
        for pt in parts:
            out.append(verify.check_dec15a(rng, pt, n, k, p, seed=i))
    return out


def _run_dec15b(config, part=None, variant=None):
    parts = (1, 2, 3) if part is None else (part,)
    out = []
    for i in range(config.trials):
        n, k, nb = _grid(config, i)
        rng = _rng(config, "check_dec15b", i)
        p = _partition(config, rng, n, nb)
        l = i % k
        for pt in parts:
            out.append(verify.check_dec15b(rng, pt, n, k, l, p, seed=i))
    return out


def _run_jan11(config, part=None, variant=None):
    variants = ("a1", "a2", "abc1", "abc2") if variant is None else (variant,)
    out = []
    for i in range(config.trials):
        n, k, nb = _grid(config, i)
        rng = _rng(config, "check_jan11", i)
        p = _partition(config, rng, n, nb)
        for var in variants:
            out.append(verify.check_jan11(rng, var, n, k, p, seed=i))
    return out


def _run_determinant(config, part=None, variant=None):
    out = []
    for i in range(config.trials):
        n, _, nb = _grid(config, i)
        n = min(n, 4)
        s = 2 + (i % 2)
        rng = _rng(config, "check_determinant_section", i)
        p = _partition(config, rng, n, min(nb, n))
        out.append(verify.check_determinant_section(rng, s, n, p, seed=i))
    return out


def _run_cycle_lifting(config, part=None, variant=None):
    out = []
    for i in range(config.trials):
        n, k, nb = _grid(config, i)
        rng = _rng(config, "check_cycle_lifting", i)
        p = _partition(config, rng, n, nb)
        out.append(verify.check_cycle_lifting(rng, k, None, n, p, seed=i))
    return out


def _run_block_l(config, part=None, variant=None):
    out = []
    for i in range(config.trials):
        n, _, nb = _grid(config, i)
        rng = _rng(config, "check_block_l", i)
        mu = verify.gen_mu(rng, n, nb)
        for f_id in sorted(verify.SYMMETRIC_FUNCTIONS):
            out.append(verify.check_block_l(f_id, mu, s=2, seed=i))
    return out


def _run_eigen_expansion(config, part=None, variant=None):
    out = []
    for i in range(config.trials):
        n, _, nb = _grid(config, i)
        rng = _rng(config, "check_eigen_expansion", i)
        p = _partition(config, rng, n, nb)
        out.append(verify.check_eigen_expansion(rng, n, p, scales=config.scales, seed=i))
    return out


def _run_offdiag_expansion(config, part=None, variant=None):
    out = []
    for i in range(config.trials):
        n, _, nb = _grid(config, i)
        rng = _rng(config, "check_offdiag_expansion", i)
        p = _partition(config, rng, n, nb)
        out.append(
            verify.check_offdiag_expansion(rng, n, p, scales=config.scales, seed=i)
        )
    return out


REGISTRY = {
    "check_jen3a": _run_jen3a,
    "check_invar_lem": _run_invar_lem,
    "check_dec14b": _run_dec14b,
    "check_dec15a": _run_dec15a,
    "check_dec15b": _run_dec15b,
    "check_jan11": _run_jan11,
    "check_determinant_section": _run_determinant,
    "check_cycle_lifting": _run_cycle_lifting,
    "check_block_l": _run_block_l,
    "check_eigen_expansion": _run_eigen_expansion,
    "check_offdiag_expansion": _run_offdiag_expansion,
}


def _apply_tol_override(report: CheckReport, tol: float) -> None:
    report.tolerance = tol
    floor = report.params.get("order_floor")
    exact_ok = all(r <= tol for s, r in report.residuals if s is None)
    if report.order_estimate is None:
        slope_ok = True
    else:
        slope_ok = floor is None or report.order_estimate >= floor
    report.passed = exact_ok and slope_ok


def _collect(config: SuiteConfig, names, part=None, variant=None) -> list[CheckReport]:
    reports = []
    for name in names:
        reports.extend(REGISTRY[name](config, part=part, variant=variant))
    if config.tol_override is not None:
        for r in reports:
            _apply_tol_override(r, config.tol_override)
    return reports


def _human_lines(reports) -> list[str]:
    lines = []
    header = f"{'check':32s} {'params':28s} {'worst resid':>12s} {'slope':>7s} {'status':>7s}"
    lines.append(header)
    lines.append("-" * len(header))
    for r in reports:
        keys = [
            f"{k}={v}"
            for k, v in r.params.items()
            if k in ("n", "k", "part", "variant", "s", "blocks", "f_id")
        ]
        slope = f"{r.order_estimate:.2f}" if r.order_estimate is not None else "-"
        lines.append(
            f"{r.check_name:32s} {','.join(keys)[:28]:28s} "
            f"{r.worst_residual():12.3e} {slope:>7s} "
            f"{'pass' if r.passed else 'FAIL':>7s}"
        )
    return lines


def _dump_failures(reports, directory: str) -> list[str]:
    paths = []
    for r in reports:
        if r.passed:
            continue
        trial = r.params.get("seed")
        fname = f"fail_{r.check_name}_trial{trial}.json"
        path = os.path.join(directory, fname)
        with open(path, "w") as fh:
            json.dump({"report": r.to_json(), "instance": r.instance}, fh, indent=1)
        paths.append(path)
    return paths


def _write_report(config: SuiteConfig, reports) -> None:
    if config.output_path is None:
        return
    payload = {
        "suite_version": SUITE_VERSION,
        "seed": config.seed,
        "checks": [r.to_json() for r in reports],
        "all_pass": all(r.passed for r in reports),
    }
    with open(config.output_path, "w") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
        fh.write("\n")


def run_suite(config: SuiteConfig) -> int:
    """Run every registered family (or --only one); 0 iff everything passes."""
    try:
        config.validate()
        if config.only is not None and config.only not in REGISTRY:
            print(
                f"unknown checker {config.only!r}; valid: {', '.join(sorted(REGISTRY))}",
                file=sys.stderr,
            )
            return 2
        tensor_mod.set_paranoid(config.paranoid)
        names = [config.only] if config.only else sorted(REGISTRY)
        reports = _collect(config, names)
        for line in _human_lines(reports):
            print(line)
        _write_report(config, reports)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 2
    finally:
        tensor_mod.set_paranoid(False)
    failing = [r for r in reports if not r.passed]
    if failing:
        out_dir = os.path.dirname(config.output_path) if config.output_path else "."
        dumps = _dump_failures(failing, out_dir or ".")
        print(f"\n{len(failing)} failing check(s):")
        for r in failing:
            print(f"  {r.check_name} params={r.params}")
        for d in dumps:
            print(f"  instance dumped to {d}")
        return 1
    return 0


def run_check(name: str, config: SuiteConfig, part=None, variant=None) -> int:
    """Run a single family by registry name and print its reports."""
    if name not in REGISTRY:
        print(
            f"unknown checker {name!r}; valid: {', '.join(sorted(REGISTRY))}",
            file=sys.stderr,
        )
        return 2
    try:
        config.validate()
        tensor_mod.set_paranoid(config.paranoid)
        reports = _collect(config, [name], part=part, variant=variant)
        for line in _human_lines(reports):
            print(line)
        _write_report(config, reports)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 2
    finally:
        tensor_mod.set_paranoid(False)
    failing = [r for r in reports if not r.passed]
    if failing:
        _dump_failures(failing, ".")
        return 1
    return 0


def _parse_floats(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.split(","))


def _parse_ints(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(","))


def _add_common_flags(sub) -> None:
    sub.add_argument("--seed", type=int, default=None, help="master RNG seed")
    sub.add_argument("--n", type=_parse_ints, default=None, metavar="N1,N2",
                     help="comma-separated dimensions")
    sub.add_argument("--kmax", type=int, default=None, help="largest tensor order")
    sub.add_argument("--trials", type=int, default=None, help="instances per family")
    sub.add_argument("--scales", type=_parse_floats, default=None,
                     metavar="T1,T2,...", help="perturbation scales, decreasing")
    sub.add_argument("--block-tol", type=float, default=None,
                     help="coordinate grouping tolerance (default exact)")
    sub.add_argument("--tol-override", type=float, default=None,
                     help="replace every checker tolerance")
    sub.add_argument("--json", default=None, metavar="PATH", help="write JSON report")
    sub.add_argument("--paranoid", action="store_true",
                     help="verify orthogonality preconditions on every conjugation")
    sub.add_argument("--capacity-override", action="store_true",
                     help="allow k_max > 3")


def _config_from_args(args) -> SuiteConfig:
    cfg = SuiteConfig()
    if args.seed is not None:
        cfg.seed = args.seed
    elif os.environ.get("SUITE_SEED"):
        cfg.seed = int(os.environ["SUITE_SEED"])
    if args.n is not None:
        cfg.n_list = args.n
    if args.kmax is not None:
        cfg.k_max = args.kmax
    if args.trials is not None:
        cfg.trials = args.trials
    if args.scales is not None:
        cfg.scales = args.scales
    if args.block_tol is not None:
        cfg.block_tol = args.block_tol
    if args.tol_override is not None:
        cfg.tol_override = args.tol_override
    cfg.output_path = args.json
    cfg.paranoid = args.paranoid
    cfg.capacity_override = args.capacity_override
    if getattr(args, "only", None):
        cfg.only = args.only
    return cfg


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="hadspec",
        description="Randomized verification of wired Hadamard-product and "
        "eigenvalue-perturbation identities.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    suite = subs.add_parser("suite", help="suite operations")
    suite_subs = suite.add_subparsers(dest="suite_command", required=True)
    suite_run = suite_subs.add_parser("run", help="run the full verification suite")
    _add_common_flags(suite_run)
    suite_run.add_argument("--only", default=None, metavar="NAME",
                           help="restrict to one check family")

    check = subs.add_parser("check", help="run one check family")
    check.add_argument("name", help="registered checker name")
    _add_common_flags(check)
    check.add_argument("--part", type=int, default=None, help="part selector")
    check.add_argument("--variant", default=None, help="variant selector")

    tshow = subs.add_parser("tensor", help="tensor file utilities")
    tshow_subs = tshow.add_subparsers(dest="tensor_command", required=True)
    show = tshow_subs.add_parser("show", help="print a tensor JSON file")
    show.add_argument("file")

    args = parser.parse_args(argv)

    if args.command == "suite":
        return run_suite(_config_from_args(args))
    if args.command == "check":
        return run_check(
            args.name, _config_from_args(args), part=args.part, variant=args.variant
        )
    if args.command == "tensor":
        try:
            t = load_tensor(args.file)
        except (OSError, ValueError, KeyError) as exc:
            print(f"cannot read tensor file: {exc}", file=sys.stderr)
            return 2
        print(f"order {t.order}, dim {t.dim}, norm {t.norm():.6g}")
        with np.printoptions(precision=6, suppress=True):
            print(t.nd)
        return 0
    return 2


if __name__ == "__main__":
    sys.exit(main())
