"""Command-line front end: decompose, simulate, spectrum.

Errors raised by the library are printed as one line to stderr in the
form ``error[Category]: detail`` and mapped to stable exit codes:
0 success, 2 bad parameters or usage, 3 unreadable or malformed input
data, 4 numeric failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .decomposition import basic_ssa, cissa, toeplitz_ssa
from .diagnostics import residual_seasonality_check, w_correlation_matrix
from .exceptions import (
    CissaError,
    ColumnMissing,
    ConvergenceFailure,
    DegenerateRegressor,
    EmptyGrouping,
    EmptyMatrix,
    FileNotFound,
    InvalidParams,
    IoFailure,
    LagOutOfRange,
    NonFiniteInput,
    NonMonotoneDates,
    NonNumericCell,
    NotMonthlyCompatible,
    TooFewRows,
    VariantMismatch,
    ZeroNorm,
)
from .grouping import GroupingSpec, default_monthly_grouping, parse_bands
from .io import (
    RunConfig,
    read_config,
    read_series,
    write_decomposition,
    write_quantile_tables,
    write_seasonality_report,
)
from .moments import circulant_matrix
from .simulate import (
    LinearModelParams,
    NonlinearModelParams,
    monte_carlo,
)
from .spectral import circulant_eigenvalues
from .validation import check_window

__all__ = ["main"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_NUMERIC = 4

_INPUT_ERRORS = (
    FileNotFound,
    ColumnMissing,
    NonNumericCell,
    NonMonotoneDates,
    NonFiniteInput,
    TooFewRows,
    IoFailure,
)
_USAGE_ERRORS = (
    InvalidParams,
    EmptyGrouping,
    NotMonthlyCompatible,
    LagOutOfRange,
    VariantMismatch,
)
_NUMERIC_ERRORS = (ConvergenceFailure, ZeroNorm, DegenerateRegressor, EmptyMatrix)

_VARIANT_FUNCTIONS = {"cissa": cissa, "basic": basic_ssa, "toeplitz": toeplitz_ssa}

_SHARE_ORDER = ("trend", "cycle", "seasonal", "irregular")


def _exit_code(exc: CissaError) -> int:
    if isinstance(exc, _INPUT_ERRORS):
        return EXIT_INPUT
    if isinstance(exc, _NUMERIC_ERRORS):
        return EXIT_NUMERIC
    if isinstance(exc, _USAGE_ERRORS):
        return EXIT_USAGE
    return EXIT_USAGE


def _default_out() -> str:
    return os.environ.get("CISSA_OUT_DIR", "cissa_output")


def _merge(flag_value, config_value, fallback):
    if flag_value is not None:
        return flag_value
    if config_value is not None:
        return config_value
    return fallback


def _load_grouping(bands: str | None, window: int) -> GroupingSpec:
    if bands is None:
        return default_monthly_grouping(window)
    if "=" in bands:
        return parse_bands(bands)
    path = Path(bands)
    if not path.is_file():
        raise FileNotFound(f"no such bands file: {path}")
    return parse_bands(path.read_text(encoding="utf-8"))


def _ordered_shares(shares: dict[str, float]) -> list[tuple[str, float]]:
    front = [n for n in _SHARE_ORDER if n in shares]
    rest = [n for n in shares if n not in front]
    return [(n, shares[n]) for n in front + rest]


def _print_shares(shares: dict[str, float]) -> None:
    print(f"{'component':<16}{'share_pct':>10}")
    for name, value in _ordered_shares(shares):
        print(f"{name:<16}{value:>10.2f}")


def cmd_decompose(args: argparse.Namespace) -> int:
    config = read_config(args.config) if args.config else RunConfig()
    window = _merge(args.window, config.window, None)
    if window is None:
        raise InvalidParams("a window length is required (--window or config)")
    variant = _merge(args.variant, config.variant, "cissa")
    if variant not in _VARIANT_FUNCTIONS:
        raise InvalidParams(
            f"unknown variant {variant!r}; expected one of {sorted(_VARIANT_FUNCTIONS)}"
        )
    demean = _merge(args.demean, config.demean, True)
    bands = _merge(args.bands, config.bands, None)
    out_dir = Path(_merge(args.out, config.out, _default_out()))
    column = _merge(args.column, config.column, None)
    date_column = _merge(args.date_column, config.date_column, None)

    series = read_series(args.input, column=column, date_column=date_column)
    window = check_window(series.size, window)
    grouping = _load_grouping(bands, window)

    work = series
    mean = 0.0
    if demean:
        mean = float(series.mean())
        work = series - mean

    decomposition = _VARIANT_FUNCTIONS[variant](work, window, grouping)

    if demean:
        target = grouping.locate(0.0)
        if target is None:
            target = grouping.residual_name
        if target is None or target not in decomposition.components:
            raise InvalidParams(
                "demeaning needs a component covering frequency zero "
                "or a residual component to return the mean to"
            )
        decomposition.components[target] = decomposition.components[target] + mean
        decomposition.series = series

    wcorr = w_correlation_matrix(decomposition, window) if args.wcorr else None

    report = None
    if "seasonal" in decomposition.components:
        from .grouping import assign_bins

        bins = assign_bins(grouping, window).get("seasonal", ())
        frequencies = sorted({b.center_frequency for b in bins})
        if frequencies:
            adjusted = decomposition.series - decomposition.components["seasonal"]
            report = residual_seasonality_check(adjusted, frequencies)

    written = write_decomposition(decomposition, out_dir, w_correlations=wcorr)
    if report is not None:
        written.append(
            write_seasonality_report(report, out_dir / "seasonality_check.csv")
        )

    print(
        f"decomposed {series.size} observations "
        f"(variant={variant}, window={window}, demean={'on' if demean else 'off'})"
    )
    _print_shares(decomposition.shares)
    if report is not None and report.any_flagged:
        flagged = [f for f, hit in zip(report.frequencies, report.flags) if hit]
        print(
            "warning: residual seasonal power above "
            f"{report.threshold:.0%} near frequencies {flagged}"
        )
    print(f"wrote {len(written)} files to {out_dir}")
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    variants = tuple(v.strip() for v in args.variant.split(",") if v.strip())
    for v in variants:
        if v not in _VARIANT_FUNCTIONS:
            raise InvalidParams(
                f"unknown variant {v!r}; expected one of {sorted(_VARIANT_FUNCTIONS)}"
            )
    if args.model == "nonlinear":
        params = NonlinearModelParams(n_obs=args.length, seed=args.seed)
    else:
        params = LinearModelParams(n_obs=args.length, seed=args.seed)
    out_dir = Path(args.out if args.out is not None else _default_out())

    result = monte_carlo(
        model=args.model,
        params=params,
        n_reps=args.reps,
        variants=variants,
        window_length=args.window,
    )
    written = write_quantile_tables(result, out_dir)

    print(
        f"{args.model} model, {args.reps} replications, "
        f"window {args.window}, seed {args.seed}"
    )
    for variant in variants:
        failed = len(result.failures[variant])
        print(f"[{variant}] failures: {failed}")
        print(f"  {'component':<10}{'statistic':<11}{'median':>12}")
        for row in result.tables[variant]:
            print(f"  {row.component:<10}{row.statistic:<11}{row.q50:>12.5f}")
    print(f"wrote {len(written)} files to {out_dir}")
    return EXIT_OK


def cmd_spectrum(args: argparse.Namespace) -> int:
    series = read_series(args.input, column=args.column, date_column=args.date_column)
    window = check_window(series.size, args.window)
    demean = True if args.demean is None else args.demean
    work = series - series.mean() if demean else series
    out_dir = Path(args.out if args.out is not None else _default_out())

    matrix = circulant_matrix(work, window)
    values = circulant_eigenvalues(matrix.entries[0])
    frequencies = np.arange(window) / window

    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "spectrum.csv"
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("frequency,eigenvalue\n")
        for f, v in zip(frequencies, values):
            handle.write(f"{f:.17g},{v:.17g}\n")

    half = window // 2 + 1
    order = np.argsort(values[1:half])[::-1][:5]
    print(f"circulant spectrum of {series.size} observations, window {window}")
    print(f"{'frequency':>12}{'period':>10}{'eigenvalue':>14}")
    for b in order + 1:
        f = frequencies[b]
        period = 1.0 / f
        print(f"{f:>12.5f}{period:>10.2f}{values[b]:>14.6g}")
    print(f"wrote {path}")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cissa",
        description="Signal extraction by singular spectrum analysis "
        "with circulant, basic, and Toeplitz variants.",
    )
    parser.add_argument("--version", action="version", version=f"cissa {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    dec = sub.add_parser("decompose", help="decompose a CSV series into components")
    dec.add_argument("--input", required=True, help="input CSV file")
    dec.add_argument("--column", help="value column name or index")
    dec.add_argument("--date-column", help="date column name or index to check ordering")
    dec.add_argument("--variant", choices=sorted(_VARIANT_FUNCTIONS))
    dec.add_argument("--window", type=int, help="embedding window length L")
    dec.add_argument(
        "--bands",
        help="frequency bands: inline 'name=lo:hi;...' or a file of such lines",
    )
    dec.add_argument(
        "--demean",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="subtract the mean before decomposing (default: on)",
    )
    dec.add_argument(
        "--wcorr",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="also write the component w-correlation matrix (default: on)",
    )
    dec.add_argument("--config", help="key=value config file; flags take precedence")
    dec.add_argument("--out", help="output directory (default: $CISSA_OUT_DIR or ./cissa_output)")
    dec.set_defaults(func=cmd_decompose)

    sim = sub.add_parser("simulate", help="Monte Carlo extraction quality tables")
    sim.add_argument("--model", choices=("linear", "nonlinear"), default="linear")
    sim.add_argument("--reps", type=int, default=500, help="number of replications")
    sim.add_argument("--seed", type=int, default=0, help="master seed")
    sim.add_argument("--length", type=int, default=193, help="series length per replication")
    sim.add_argument("--window", type=int, default=48, help="embedding window length L")
    sim.add_argument(
        "--variant",
        default="cissa",
        help="comma-separated subset of cissa,basic,toeplitz",
    )
    sim.add_argument("--out", help="output directory (default: $CISSA_OUT_DIR or ./cissa_output)")
    sim.set_defaults(func=cmd_simulate)

    spec = sub.add_parser("spectrum", help="write the circulant eigenvalue spectrum")
    spec.add_argument("--input", required=True, help="input CSV file")
    spec.add_argument("--column", help="value column name or index")
    spec.add_argument("--date-column", help="date column name or index to check ordering")
    spec.add_argument("--window", type=int, required=True, help="embedding window length L")
    spec.add_argument(
        "--demean",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="subtract the mean first (default: on)",
    )
    spec.add_argument("--out", help="output directory (default: $CISSA_OUT_DIR or ./cissa_output)")
    spec.set_defaults(func=cmd_spectrum)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CissaError as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return _exit_code(exc)


if __name__ == "__main__":
    sys.exit(main())
