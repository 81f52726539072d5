"""CSV reading and writing for series, decompositions, and run tables.

All output files carry a header row, use UTF-8 with LF line endings, and
print floats with 17 significant digits so a written value reads back to
the identical double.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .decomposition import Decomposition
from .diagnostics import SeasonalityReport, WCorrelationMatrix
from .exceptions import (
    ColumnMissing,
    FileNotFound,
    InvalidParams,
    IoFailure,
    NonMonotoneDates,
    NonNumericCell,
    TooFewRows,
)
from .simulate import MonteCarloResult
from .validation import as_series

__all__ = [
    "RunConfig",
    "read_series",
    "read_config",
    "parse_config_text",
    "write_series",
    "write_decomposition",
    "write_quantile_tables",
    "write_seasonality_report",
]

MIN_ROWS = 4

_SHARE_ORDER = ("trend", "cycle", "seasonal", "irregular")


def _fmt(value) -> str:
    return f"{float(value):.17g}"


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def _read_rows(path: Path) -> list[list[str]]:
    try:
        with open(path, encoding="utf-8", newline="") as handle:
            return [row for row in csv.reader(handle) if any(c.strip() for c in row)]
    except OSError as exc:
        raise IoFailure(f"could not read {path}: {exc}") from exc


def _resolve_column(header, width: int, column, kind: str) -> int:
    if isinstance(column, str) and not column.lstrip("+-").isdigit():
        if header is None:
            raise ColumnMissing(
                f"{kind} column {column!r} needs a header row to match against"
            )
        if column not in header:
            raise ColumnMissing(
                f"no column named {column!r}; header has {header}"
            )
        return header.index(column)
    idx = int(column)
    if not -width <= idx < width:
        raise ColumnMissing(f"{kind} column index {idx} out of range for width {width}")
    return idx % width


def read_series(path, column=None, date_column=None) -> np.ndarray:
    """Read one numeric column from a CSV file as a float array.

    The first row is treated as a header when any of its cells fails to
    parse as a number. ``column`` selects by header name or by index;
    with no ``column`` the file must have exactly one candidate column.
    When ``date_column`` is given those cells must be strictly
    increasing, compared numerically if every one parses as a number and
    as strings otherwise. Fewer than four data rows is an error, as is
    any unparsable or non-finite value cell.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFound(f"no such file: {path}")
    rows = _read_rows(path)
    if not rows:
        raise TooFewRows(f"{path} is empty")
    header = None
    if any(not _is_number(c) for c in rows[0] if c.strip()):
        header = [c.strip() for c in rows[0]]
        rows = rows[1:]
    if len(rows) < MIN_ROWS:
        raise TooFewRows(
            f"{path} has {len(rows)} data rows; at least {MIN_ROWS} are needed"
        )
    width = max(len(r) for r in rows)

    date_idx = None
    if date_column is not None:
        date_idx = _resolve_column(header, width, date_column, "date")
    if column is not None:
        col_idx = _resolve_column(header, width, column, "value")
    else:
        candidates = [i for i in range(width) if i != date_idx]
        if len(candidates) != 1:
            raise ColumnMissing(
                "the file has several columns; pass one by name or index"
            )
        col_idx = candidates[0]

    values = np.empty(len(rows))
    for r, row in enumerate(rows):
        if col_idx >= len(row):
            raise NonNumericCell(r, col_idx, "<missing>")
        cell = row[col_idx].strip()
        try:
            values[r] = float(cell)
        except ValueError:
            raise NonNumericCell(r, col_idx, cell) from None

    if date_idx is not None:
        cells = [row[date_idx].strip() if date_idx < len(row) else "" for row in rows]
        if all(_is_number(c) for c in cells):
            keys = [float(c) for c in cells]
        else:
            keys = cells
        for i in range(1, len(keys)):
            if not keys[i] > keys[i - 1]:
                raise NonMonotoneDates(
                    f"date column not strictly increasing at data row {i}: "
                    f"{cells[i - 1]!r} then {cells[i]!r}"
                )
    return as_series(values, f"column {col_idx} of {path}")


def _open_out(path: Path):
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        return open(path, "w", encoding="utf-8", newline="\n")
    except OSError as exc:
        raise IoFailure(f"could not write {path}: {exc}") from exc


def _write_table(path: Path, header, rows) -> Path:
    with _open_out(path) as handle:
        handle.write(",".join(header) + "\n")
        for row in rows:
            handle.write(",".join(row) + "\n")
    return path


def _safe_name(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", name) or "component"


def write_series(values, path, name: str = "value") -> Path:
    x = as_series(values, name)
    t = np.arange(1, x.size + 1)
    rows = ([str(ti), _fmt(v)] for ti, v in zip(t, x))
    return _write_table(Path(path), ["t", name], rows)


def _ordered_share_names(names) -> list[str]:
    names = list(names)
    front = [n for n in _SHARE_ORDER if n in names]
    return front + [n for n in names if n not in front]


def write_decomposition(
    decomposition: Decomposition,
    directory,
    w_correlations: WCorrelationMatrix | None = None,
) -> list[Path]:
    """Write a decomposition to CSV files under ``directory``.

    Emits one file per component, a combined wide table with the original
    series, the contribution shares, the eigenvalue spectrum when the
    variant provides one, and optionally a w-correlation matrix. Returns
    the written paths.
    """
    d = decomposition
    directory = Path(directory)
    written = []
    t = [str(i) for i in range(1, d.series.size + 1)]

    for name, values in d.components.items():
        path = directory / f"component_{_safe_name(name)}.csv"
        rows = ([ti, _fmt(v)] for ti, v in zip(t, values))
        written.append(_write_table(path, ["t", name], rows))

    names = list(d.components)
    wide_rows = (
        [ti, _fmt(d.series[i])] + [_fmt(d.components[n][i]) for n in names]
        for i, ti in enumerate(t)
    )
    written.append(
        _write_table(
            directory / "components.csv", ["t", "original", *names], wide_rows
        )
    )

    share_rows = (
        [n, _fmt(d.shares[n])] for n in _ordered_share_names(d.shares)
    )
    written.append(
        _write_table(directory / "shares.csv", ["component", "contribution_pct"], share_rows)
    )

    if d.eigenvalue_spectrum is not None:
        spec_rows = (
            [_fmt(f), _fmt(v)] for f, v in d.eigenvalue_spectrum
        )
        written.append(
            _write_table(directory / "spectrum.csv", ["frequency", "eigenvalue"], spec_rows)
        )

    if w_correlations is not None:
        labels = list(w_correlations.labels)
        wc_rows = (
            [labels[i]] + [_fmt(v) for v in w_correlations.entries[i]]
            for i in range(len(labels))
        )
        written.append(
            _write_table(directory / "wcorr.csv", ["component", *labels], wc_rows)
        )
    return written


def write_quantile_tables(result: MonteCarloResult, directory) -> list[Path]:
    """One quantile CSV per variant: quantiles_<model>_<variant>.csv."""
    directory = Path(directory)
    written = []
    header = ["component", "statistic", "q5", "q25", "q50", "q75", "q95"]
    for variant, rows in result.tables.items():
        path = directory / f"quantiles_{_safe_name(result.model)}_{_safe_name(variant)}.csv"
        table = (
            [r.component, r.statistic, *(_fmt(v) for v in r.as_tuple()[2:])]
            for r in rows
        )
        written.append(_write_table(path, header, table))
    return written


def write_seasonality_report(report: SeasonalityReport, path) -> Path:
    rows = (
        [_fmt(f), _fmt(s), str(bool(flag)).lower()]
        for f, s, flag in zip(report.frequencies, report.shares, report.flags)
    )
    return _write_table(Path(path), ["frequency", "power_share", "flagged"], rows)


@dataclass(frozen=True)
class RunConfig:
    """Decoded key=value run configuration; None means not provided."""

    window: int | None = None
    variant: str | None = None
    bands: str | None = None
    demean: bool | None = None
    seed: int | None = None
    out: str | None = None
    column: str | None = None
    date_column: str | None = None


_CONFIG_KEYS = {
    "window",
    "variant",
    "bands",
    "demean",
    "seed",
    "out",
    "column",
    "date_column",
}

_TRUE_WORDS = {"1", "true", "yes", "on"}
_FALSE_WORDS = {"0", "false", "no", "off"}


def _parse_bool(word: str, key: str) -> bool:
    lowered = word.strip().lower()
    if lowered in _TRUE_WORDS:
        return True
    if lowered in _FALSE_WORDS:
        return False
    raise InvalidParams(f"config key {key!r} expects a boolean, got {word!r}")


def _parse_int(word: str, key: str) -> int:
    try:
        return int(word)
    except ValueError:
        raise InvalidParams(f"config key {key!r} expects an integer, got {word!r}") from None


def parse_config_text(text: str) -> RunConfig:
    """Parse flat ``key = value`` lines; '#' starts a comment."""
    fields = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidParams(f"config line {lineno} is not key=value: {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _CONFIG_KEYS:
            raise InvalidParams(
                f"unknown config key {key!r}; known keys: {sorted(_CONFIG_KEYS)}"
            )
        if key in fields:
            raise InvalidParams(f"config key {key!r} given twice")
        if key == "window":
            fields[key] = _parse_int(value, key)
        elif key == "seed":
            fields[key] = _parse_int(value, key)
        elif key == "demean":
            fields[key] = _parse_bool(value, key)
        else:
            fields[key] = value
    return RunConfig(**fields)


def read_config(path) -> RunConfig:
    path = Path(path)
    if not path.is_file():
        raise FileNotFound(f"no such config file: {path}")
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"could not read {path}: {exc}") from exc
    return parse_config_text(text)
