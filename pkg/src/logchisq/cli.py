"""Command-line interface.

Every computation is a subcommand emitting CSV (default) or JSON on
stdout; diagnostics go to stderr. JSON output is a single object with
"config" and "rows" keys. Values are formatted with repr-round-trip
precision 17 for JSON and 10 for CSV unless --precision overrides.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 numerical/runtime error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys

import numpy as np

from .distributions import (
    ProductSpec,
    WeightedSumSpec,
    prod_cdf,
    prod_density,
    prod_density_naive,
    prod_quantile,
    sumlog_cdf,
    sumlog_cumulants,
    sumlog_density,
    sumlog_quantile,
)
from .errors import DomainError, TruncationError
from .logmoments import (
    LogNcChiSqParams,
    TruncationPolicy,
    noncentral_log_moments,
)
from .sampling import RngState, sample_chisq, sample_prod, sample_sumlog
from .verify import compare_densities, verify_moments

SEED_ENV_VAR = "LOGCHISQ_SEED"
DEFAULT_SEED = 12345

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_COMPUTE = 3


class UsageError(Exception):
    """Bad flag combinations detected after argparse."""


# ---------------------------------------------------------------------------
# argparse value types


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(value) or value <= 0.0:
        raise argparse.ArgumentTypeError(f"must be finite and > 0: {text!r}")
    return value


def _nonnegative_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(value) or value < 0.0:
        raise argparse.ArgumentTypeError(f"must be finite and >= 0: {text!r}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return value


def _order_value(text: str) -> int:
    value = _positive_int(text)
    if value > 32:
        raise argparse.ArgumentTypeError(f"order must be <= 32: {text!r}")
    return value


def _precision_value(text: str) -> int:
    value = _positive_int(text)
    if value > 17:
        raise argparse.ArgumentTypeError(f"precision must be in [1, 17]: {text!r}")
    return value


def _seed_value(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be a decimal integer: {text!r}")
    if not (0 <= value < 2**64):
        raise argparse.ArgumentTypeError(f"seed must be in [0, 2**64): {text!r}")
    return value


def _float_list(text: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated number list: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _grid_spec(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must be lo:hi:n, got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must be lo:hi:n, got {text!r}")
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi and n >= 2):
        raise argparse.ArgumentTypeError(f"grid needs lo < hi and n >= 2, got {text!r}")
    return lo, hi, n


# ---------------------------------------------------------------------------
# output


def _fmt(value, precision: int):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(f"{float(value):.{precision}g}")
    if isinstance(value, (list, tuple)):
        return [_fmt(v, precision) for v in value]
    return value


def _emit(args, config: dict, columns: list[str], rows: list[dict]) -> None:
    if args.format == "json":
        precision = args.precision if args.precision is not None else 17
        payload = {
            "config": {k: _fmt(v, precision) for k, v in config.items()},
            "rows": [{c: _fmt(row[c], precision) for c in columns} for row in rows],
        }
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        precision = args.precision if args.precision is not None else 10
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            out = []
            for c in columns:
                v = _fmt(row[c], precision)
                out.append(f"{v:.{precision}g}" if isinstance(v, float) else v)
            writer.writerow(out)


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return _seed_value(env)
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"invalid {SEED_ENV_VAR}: {exc}") from exc
    return DEFAULT_SEED


def _policy_from(args) -> TruncationPolicy | None:
    tol = getattr(args, "tail_tol", None)
    max_terms = getattr(args, "max_terms", None)
    if tol is None and max_terms is None:
        return None
    return TruncationPolicy(
        tail_mass_tol=tol if tol is not None else 1e-14,
        max_terms=max_terms if max_terms is not None else 10000,
    )


# ---------------------------------------------------------------------------
# spec assembly for the multi-factor commands


def _assemble_lists(args, what: str):
    dfs = args.dfs if args.dfs is not None else ([args.df] if args.df is not None else None)
    if dfs is None:
        raise UsageError(f"{what}: provide --df or --dfs")
    k = len(dfs)
    weights = args.weights if args.weights is not None else [1.0] * k
    ncps = args.ncps if args.ncps is not None else (
        [args.ncp] * k if args.ncp is not None and k == 1 else [0.0] * k
    )
    if not (len(weights) == len(dfs) == len(ncps)):
        raise UsageError(f"{what}: --weights/--dfs/--ncps lengths differ")
    for df in dfs:
        if df <= 0 or not math.isfinite(df):
            raise UsageError(f"{what}: degrees of freedom must be > 0")
    for ncp in ncps:
        if ncp < 0 or not math.isfinite(ncp):
            raise UsageError(f"{what}: non-centrality must be >= 0")
    return weights, dfs, ncps


def _eval_points(args, positive: bool) -> np.ndarray:
    if args.at is not None and args.grid is not None:
        raise UsageError("give either --at or --grid, not both")
    if args.at is not None:
        points = np.asarray(args.at, dtype=float)
    elif args.grid is not None:
        lo, hi, n = args.grid
        points = np.linspace(lo, hi, n)
    else:
        raise UsageError("one of --at or --grid is required")
    if positive and np.any(points <= 0.0):
        raise UsageError("product distributions reject evaluation points <= 0")
    return points


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_moments(args) -> int:
    params = LogNcChiSqParams(args.df, args.ncp)
    mu = noncentral_log_moments(params, args.order, _policy_from(args))
    config = {"command": "moments", "df": args.df, "ncp": args.ncp, "order": args.order}
    rows = [{"order": k + 1, "value": v} for k, v in enumerate(mu)]
    _emit(args, config, ["order", "value"], rows)
    return EXIT_OK


def _cmd_cumulants(args) -> int:
    weights, dfs, ncps = _assemble_lists(args, "cumulants")
    spec = WeightedSumSpec.from_lists(weights, dfs, ncps)
    kappa = sumlog_cumulants(spec, args.order, _policy_from(args))
    config = {
        "command": "cumulants",
        "weights": weights,
        "dfs": dfs,
        "ncps": ncps,
        "order": args.order,
    }
    rows = [{"order": k + 1, "value": v} for k, v in enumerate(kappa)]
    _emit(args, config, ["order", "value"], rows)
    return EXIT_OK


def _eval_command(args, kind: str) -> int:
    dist = args.dist
    order = args.order if args.order is not None else (4 if dist == "prod-naive" else 6)
    policy = _policy_from(args)
    positive_points = dist in ("prod", "prod-naive") and kind in ("density", "cdf")
    points = _eval_points(args, positive=positive_points)
    if kind == "quantile" and (np.any(points <= 0.0) or np.any(points >= 1.0)):
        raise UsageError("quantile probabilities must lie strictly inside (0, 1)")

    weights, dfs, ncps = _assemble_lists(args, kind)
    if dist == "prod-naive":
        if any(w != 1.0 for w in weights) or any(c != 0.0 for c in ncps):
            raise UsageError("prod-naive supports only central factors with weight 1")
        if kind != "density":
            raise UsageError("prod-naive provides the density only")
        values = prod_density_naive(dfs, points, order_max=order, clamp=not args.raw)
    elif dist == "prod":
        spec = ProductSpec.from_lists(weights, dfs, ncps)
        if kind == "density":
            values = prod_density(spec, points, order, clamp=not args.raw, policy=policy)
        elif kind == "cdf":
            values = prod_cdf(spec, points, order, policy=policy)
        else:
            values = prod_quantile(spec, points, order, policy=policy)
    else:
        spec = WeightedSumSpec.from_lists(weights, dfs, ncps)
        if kind == "density":
            values = sumlog_density(spec, points, order, clamp=not args.raw, policy=policy)
        elif kind == "cdf":
            values = sumlog_cdf(spec, points, order, policy=policy)
        else:
            values = sumlog_quantile(spec, points, order, policy=policy)

    config = {
        "command": kind,
        "dist": dist,
        "weights": weights,
        "dfs": dfs,
        "ncps": ncps,
        "order": order,
    }
    xname = "p" if kind == "quantile" else "x"
    rows = [{xname: x, "value": v} for x, v in zip(points, np.atleast_1d(values))]
    _emit(args, config, [xname, "value"], rows)
    return EXIT_OK


def _cmd_sample(args) -> int:
    seed = _resolve_seed(args)
    rng = RngState(seed)
    weights, dfs, ncps = _assemble_lists(args, "sample")
    if args.dist == "chisq":
        if len(dfs) != 1 or weights[0] != 1.0:
            raise UsageError("sample --dist chisq takes exactly one factor")
        draws = sample_chisq(rng, dfs[0], ncps[0], args.n)
    elif args.dist == "prod":
        draws = sample_prod(rng, ProductSpec.from_lists(weights, dfs, ncps), args.n)
    else:
        draws = sample_sumlog(rng, WeightedSumSpec.from_lists(weights, dfs, ncps), args.n)
    config = {
        "command": "sample",
        "dist": args.dist,
        "weights": weights,
        "dfs": dfs,
        "ncps": ncps,
        "n": args.n,
        "seed": seed,
    }
    rows = [{"draw": v} for v in draws]
    _emit(args, config, ["draw"], rows)
    return EXIT_OK


def _cmd_verify(args) -> int:
    seed = _resolve_seed(args)
    params = LogNcChiSqParams(args.df, args.ncp)
    theoretical = None
    if args.corrupt_theoretical is not None:
        theoretical = noncentral_log_moments(params, args.order, _policy_from(args))
        theoretical = theoretical * args.corrupt_theoretical
    report = verify_moments(
        params,
        args.n,
        args.order,
        seed=seed,
        threshold=args.threshold,
        policy=_policy_from(args),
        theoretical=theoretical,
    )
    payload = report.as_dict()
    columns = ["order", "empirical", "theoretical", "std_error", "z_score", "passed"]
    _emit(args, payload["config"], columns, payload["rows"])
    if args.plot is not None:
        from . import plots

        plots.plot_moment_verification(report, args.plot)
        print(f"wrote {args.plot}", file=sys.stderr)
    if not report.passed:
        worst = max(report.rows, key=lambda r: abs(r.z_score))
        print(
            f"verification FAILED: worst |z| = {abs(worst.z_score):.3g} at order "
            f"{worst.order} (threshold {args.threshold:g})",
            file=sys.stderr,
        )
        return EXIT_VERIFY_FAIL
    return EXIT_OK


def _cmd_compare(args) -> int:
    seed = _resolve_seed(args)
    report = compare_densities(
        args.dfs,
        args.n,
        grid_size=args.grid_size,
        orders=(args.naive_order, args.order),
        seed=seed,
        policy=_policy_from(args),
    )
    payload = report.as_dict()
    columns = ["x", "empirical", "naive", "logspace"]
    _emit(args, payload["config"], columns, payload["rows"])
    print(
        f"IAE naive (order {args.naive_order}) = {report.iae_naive:.6g}; "
        f"IAE log-space (order {args.order}) = {report.iae_logspace:.6g}; "
        f"naive negative on grid: {report.naive_has_negative}",
        file=sys.stderr,
    )
    if args.plot is not None:
        from . import plots

        plots.plot_density_comparison(report, args.plot)
        print(f"wrote {args.plot}", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_format_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="output format (default csv)")
    p.add_argument("--precision", type=_precision_value, default=None,
                   help="significant digits (default: 10 for csv, 17 for json)")


def _add_policy_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tail-tol", type=_positive_float, default=None,
                   help="Poisson mixture tail mass tolerance (default 1e-14)")
    p.add_argument("--max-terms", type=_positive_int, default=None,
                   help="Poisson mixture term budget (default 10000)")


def _add_spec_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--df", type=_positive_float, default=None,
                   help="degrees of freedom (single factor)")
    p.add_argument("--ncp", type=_nonnegative_float, default=None,
                   help="non-centrality (single factor, default 0)")
    p.add_argument("--dfs", type=_float_list, default=None,
                   help="comma list of degrees of freedom")
    p.add_argument("--ncps", type=_float_list, default=None,
                   help="comma list of non-centralities (default all 0)")
    p.add_argument("--weights", type=_float_list, default=None,
                   help="comma list of weights/powers (default all 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logchisq",
        description="Moments of log chi-square variates and Edgeworth/"
                    "Cornish-Fisher approximants for sums of logs and "
                    "products of chi-squares.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", help="raw moments of log chi-square(df, ncp)")
    p.add_argument("--df", type=_positive_float, required=True)
    p.add_argument("--ncp", type=_nonnegative_float, default=0.0)
    p.add_argument("--order", type=_order_value, default=6)
    _add_policy_flags(p)
    _add_format_flags(p)
    p.set_defaults(func=_cmd_moments)

    p = sub.add_parser("cumulants",
                       help="cumulants of log chi-square or a weighted sum of logs")
    _add_spec_flags(p)
    p.add_argument("--order", type=_order_value, default=6)
    _add_policy_flags(p)
    _add_format_flags(p)
    p.set_defaults(func=_cmd_cumulants)

    for kind, desc in (
        ("density", "density values"),
        ("cdf", "CDF values"),
        ("quantile", "quantile values"),
    ):
        p = sub.add_parser(kind, help=f"{desc} of sumlog/prod/prod-naive distributions")
        p.add_argument("--dist", choices=("sumlog", "prod", "prod-naive"),
                       default="sumlog")
        _add_spec_flags(p)
        p.add_argument("--at", type=_float_list, default=None,
                       help="comma list of evaluation points")
        p.add_argument("--grid", type=_grid_spec, default=None,
                       help="evaluation grid lo:hi:n")
        p.add_argument("--order", type=_order_value, default=None,
                       help="expansion order (default 6; 4 for prod-naive)")
        p.add_argument("--raw", action="store_true",
                       help="density only: emit the raw series without "
                            "clamping negative values to 0")
        _add_policy_flags(p)
        _add_format_flags(p)
        p.set_defaults(func=lambda a, k=kind: _eval_command(a, k))

    p = sub.add_parser("sample", help="draw random variates")
    p.add_argument("--dist", choices=("chisq", "sumlog", "prod"), default="chisq")
    _add_spec_flags(p)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--seed", type=_seed_value, default=None,
                   help=f"decimal RNG seed (default ${SEED_ENV_VAR} or {DEFAULT_SEED})")
    _add_format_flags(p)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("verify",
                       help="Monte Carlo check of the log chi-square moment formulas")
    p.add_argument("--df", type=_positive_float, required=True)
    p.add_argument("--ncp", type=_nonnegative_float, default=0.0)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--order", type=_order_value, default=6)
    p.add_argument("--seed", type=_seed_value, default=None)
    p.add_argument("--threshold", type=_positive_float, default=5.0,
                   help="|z| pass threshold (default 5)")
    p.add_argument("--corrupt-theoretical", type=_positive_float, default=None,
                   metavar="SCALE",
                   help="test hook: scale the theoretical column to force failure")
    p.add_argument("--plot", default=None, metavar="FILE",
                   help="also render the z-score chart to FILE")
    _add_policy_flags(p)
    _add_format_flags(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("compare",
                       help="empirical vs method densities for a product of chi-squares")
    p.add_argument("--dfs", type=_float_list, required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--grid-size", type=_positive_int, default=512)
    p.add_argument("--naive-order", type=_order_value, default=4)
    p.add_argument("--order", type=_order_value, default=6,
                   help="log-space expansion order (default 6)")
    p.add_argument("--seed", type=_seed_value, default=None)
    p.add_argument("--plot", default=None, metavar="FILE",
                   help="also render the comparison figure to FILE")
    _add_policy_flags(p)
    _add_format_flags(p)
    p.set_defaults(func=_cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, TruncationError, OverflowError, FloatingPointError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
