"""Separability and validation statistics for decompositions.

The w-correlation family measures how close two reconstructed series are
under the inner product that weights each time point by the number of
trajectory-matrix antidiagonal entries it came from. The regression and
AR(1) checks quantify extraction quality against known truths, and the
residual-seasonality screen looks for seasonal power left in an adjusted
series.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .decomposition import Decomposition, ElementarySeries
from .exceptions import DegenerateRegressor, InvalidParams, ZeroNorm
from .spectral import periodogram
from .validation import as_series, check_window

__all__ = [
    "WCorrelationMatrix",
    "RegressionCheck",
    "AR1Fit",
    "SeasonalityReport",
    "w_weights",
    "w_correlation",
    "w_correlation_matrix",
    "regression_check",
    "ar1_fit",
    "residual_seasonality_check",
]


def w_weights(n_obs: int, window_length: int) -> np.ndarray:
    """Antidiagonal multiplicity weights: rise 1..L, plateau, fall L..1.

    The value at position t (0-based) is min(t + 1, L, T - t); the
    plateau at L lasts T - 2(L - 1) points and the weights sum to L * N.
    """
    L = check_window(n_obs, window_length)
    t = np.arange(n_obs)
    return np.minimum(np.minimum(t + 1, n_obs - t), L).astype(float)


def _w_inner(x1, x2, w):
    return float(np.sum(w * x1 * x2))


def w_correlation(x1, x2, window_length: int) -> float:
    """Weighted correlation of two equal-length series in [-1, 1].

    Zero means the series are w-orthogonal (well separated); values near
    ±1 mean the pair should live in the same component.
    """
    a = as_series(x1, "x1")
    b = as_series(x2, "x2")
    if a.size != b.size:
        raise InvalidParams(f"series lengths differ: {a.size} vs {b.size}")
    w = w_weights(a.size, window_length)
    na = np.sqrt(_w_inner(a, a, w))
    nb = np.sqrt(_w_inner(b, b, w))
    if na == 0.0 or nb == 0.0:
        raise ZeroNorm("w-correlation is undefined for a series with zero w-norm")
    return _w_inner(a, b, w) / (na * nb)


@dataclass(frozen=True)
class WCorrelationMatrix:
    """Pairwise w-correlations between labeled series.

    Pairs involving a zero-w-norm series are NaN (undefined), never an
    error. ``absolute_values`` is the rendering used for the usual
    separability heat map.
    """

    entries: np.ndarray = field(repr=False)
    labels: tuple[str, ...]
    weights: np.ndarray = field(repr=False)

    @property
    def absolute_values(self) -> np.ndarray:
        return np.abs(self.entries)


def w_correlation_matrix(source, window_length: int) -> WCorrelationMatrix:
    """W-correlation matrix of a decomposition or a list of series.

    ``source`` may be a :class:`Decomposition` (one row per named
    component), a list of :class:`ElementarySeries`, or a plain list of
    equal-length arrays.
    """
    if isinstance(source, Decomposition):
        labels = tuple(source.components)
        rows = [source.components[name] for name in labels]
    elif source and isinstance(source[0], ElementarySeries):
        labels = tuple(e.label for e in source)
        rows = [e.values for e in source]
    else:
        rows = [as_series(s, f"series {i}") for i, s in enumerate(source)]
        labels = tuple(f"s{i + 1}" for i in range(len(rows)))
    if not rows:
        raise InvalidParams("need at least one series")
    lengths = {len(r) for r in rows}
    if len(lengths) != 1:
        raise InvalidParams(f"series lengths differ: {sorted(lengths)}")
    S = np.asarray(rows, dtype=float)
    w = w_weights(S.shape[1], window_length)
    gram = (S * w) @ S.T
    norms = np.sqrt(np.diag(gram).copy())
    denom = np.outer(norms, norms)
    with np.errstate(invalid="ignore", divide="ignore"):
        entries = np.where(denom > 0.0, gram / np.where(denom > 0, denom, 1.0), np.nan)
    return WCorrelationMatrix(entries, labels, w)


@dataclass(frozen=True)
class RegressionCheck:
    """Intercept and slope of OLS of a true component on its extraction.

    Perfect extraction gives intercept 0 and slope 1.
    """

    intercept: float
    slope: float
    label: str = ""


def regression_check(true_component, extracted, label: str = "") -> RegressionCheck:
    """OLS of ``true_component`` on ``extracted`` via the closed form."""
    y = as_series(true_component, "true_component")
    x = as_series(extracted, "extracted")
    if y.size != x.size:
        raise InvalidParams(f"series lengths differ: {y.size} vs {x.size}")
    if y.size < 3:
        raise InvalidParams("regression needs at least 3 observations")
    xm = x.mean()
    ym = y.mean()
    sxx = float(np.sum((x - xm) ** 2))
    if sxx == 0.0:
        raise DegenerateRegressor("extracted series has zero variance")
    slope = float(np.sum((x - xm) * (y - ym))) / sxx
    return RegressionCheck(ym - slope * xm, slope, label)


@dataclass(frozen=True)
class AR1Fit:
    mean: float
    stddev: float
    ar_coefficient: float


def ar1_fit(residuals) -> AR1Fit:
    """Mean, standard deviation (divisor T - 1), and lag-1 LS coefficient.

    The coefficient is the least-squares slope of the demeaned residuals
    on their own lag (fitted with an intercept, so any leftover level
    cannot bias it). Constant residuals give coefficient 0 by convention.
    """
    r = as_series(residuals, "residuals")
    if r.size < 3:
        raise InvalidParams("AR(1) fit needs at least 3 observations")
    mean = float(r.mean())
    stddev = float(r.std(ddof=1))
    z = r - mean
    lagged, current = z[:-1], z[1:]
    lm = lagged.mean()
    cm = current.mean()
    denom = float(np.sum((lagged - lm) ** 2))
    ar = float(np.sum((lagged - lm) * (current - cm))) / denom if denom > 0 else 0.0
    return AR1Fit(mean, stddev, ar)


@dataclass(frozen=True)
class SeasonalityReport:
    """Shares of periodogram power near each probed seasonal frequency.

    This is a narrow-band periodogram screen, not an X12-style combined
    seasonality test; ``method`` says so explicitly so the two are never
    confused.
    """

    frequencies: tuple[float, ...]
    shares: tuple[float, ...]
    flags: tuple[bool, ...]
    threshold: float
    method: str = "periodogram band-power screen (not an X12-style combined test)"

    @property
    def any_flagged(self) -> bool:
        return any(self.flags)

    def share_at(self, frequency: float) -> float:
        return self.shares[self.frequencies.index(frequency)]

    def flag_at(self, frequency: float) -> bool:
        return self.flags[self.frequencies.index(frequency)]


def residual_seasonality_check(
    adjusted, seasonal_frequencies, threshold: float = 0.01
) -> SeasonalityReport:
    """Screen an adjusted series for leftover power at given frequencies.

    For each frequency the share of total periodogram power within one
    bin either side of the nearest grid frequency is computed; a share
    above ``threshold`` raises that frequency's flag.
    """
    x = as_series(adjusted, "adjusted")
    if x.size == 0:
        raise InvalidParams("adjusted series is empty")
    freqs = tuple(sorted(float(f) for f in seasonal_frequencies))
    if not all(0.0 <= f <= 0.5 for f in freqs):
        raise InvalidParams("seasonal frequencies must lie in [0, 1/2]")
    p = periodogram(x)
    total = float(p.powers.sum())
    shares = []
    for f in freqs:
        j = int(round(f * x.size))
        band = p.powers[max(0, j - 1) : j + 2]
        shares.append(float(band.sum()) / total if total > 0 else 0.0)
    flags = tuple(s > threshold for s in shares)
    return SeasonalityReport(freqs, tuple(shares), flags, threshold)
