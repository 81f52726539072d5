"""Synthetic trend + cycle + seasonal + irregular generators and Monte Carlo.

The linear model adds four independent stochastic components; the
nonlinear variant multiplies the seasonal component by an exponential
function of the trend level. Both consume the random stream in the same
fixed order (trend innovations, cycle innovations, seasonal innovations,
irregular draws), so two models with the same seed share every draw.

``monte_carlo`` repeats simulate-decompose-measure over independent
child seeds and aggregates extraction diagnostics into quantile tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Mapping

import numpy as np

from .decomposition import basic_ssa, cissa, toeplitz_ssa
from .diagnostics import ar1_fit, regression_check
from .exceptions import CissaError, InvalidParams
from .grouping import Band, GroupingSpec

__all__ = [
    "LinearModelParams",
    "NonlinearModelParams",
    "Realization",
    "MonteCarloResult",
    "QuantileRow",
    "simulate_linear",
    "simulate_nonlinear",
    "model_grouping",
    "replication_seeds",
    "monte_carlo",
]

QUANTILE_LEVELS = (5, 25, 50, 75, 95)


@dataclass(frozen=True)
class LinearModelParams:
    """Configuration for the additive trend-cycle-seasonal-irregular model.

    Defaults give a monthly series of 193 observations with a 4-year
    cycle, an integrated random-walk trend, six stochastic seasonal
    harmonics, and white-noise irregular.
    """

    n_obs: int = 193
    seasonal_period: int = 12
    cycle_period: float = 48.0
    cycle_damping: float = 1.0
    trend_noise_std: float = 0.0006
    cycle_noise_std: float = 0.008
    seasonal_noise_std: float = 0.004
    irregular_noise_std: float = 0.06
    seed: int | None = None

    def validate(self) -> None:
        if self.n_obs < 3:
            raise InvalidParams("n_obs must be at least 3")
        if self.seasonal_period < 2:
            raise InvalidParams("seasonal_period must be at least 2")
        if not self.cycle_period > 2.0:
            raise InvalidParams("cycle_period must exceed 2 observations")
        if not 0.0 < self.cycle_damping <= 1.0:
            raise InvalidParams("cycle_damping must be in (0, 1]")
        for name in (
            "trend_noise_std",
            "cycle_noise_std",
            "seasonal_noise_std",
            "irregular_noise_std",
        ):
            if getattr(self, name) < 0.0:
                raise InvalidParams(f"{name} must be nonnegative")


@dataclass(frozen=True)
class NonlinearModelParams(LinearModelParams):
    """Linear-model configuration plus trend-driven seasonal modulation.

    The seasonal component is scaled by exp(modulation_intercept +
    modulation_slope * trend). When that factor would leave [1/2, 3/2]
    for the realized trend path, the two coefficients are remapped so the
    factor spans exactly that interval; modulation_slope stays positive.
    """

    modulation_intercept: float = 0.0
    modulation_slope: float = 1.0

    def validate(self) -> None:
        super().validate()
        if not self.modulation_slope > 0.0:
            raise InvalidParams("modulation_slope must be positive")


@dataclass(frozen=True)
class Realization:
    observed: np.ndarray = field(repr=False)
    true_components: dict[str, np.ndarray] = field(repr=False)
    seed: int | None = None


def _draw_components(params: LinearModelParams, rng: np.random.Generator):
    """Draw the four latent components in the documented stream order."""
    T = params.n_obs
    trend_innovations = rng.normal(0.0, params.trend_noise_std, T)
    cycle_innovations = rng.normal(0.0, params.cycle_noise_std, (T, 2))
    n_harmonics = params.seasonal_period // 2
    seasonal_innovations = rng.normal(
        0.0, params.seasonal_noise_std, (n_harmonics, T, 2)
    )
    irregular = rng.normal(0.0, params.irregular_noise_std, T)

    # Integrated random walk from zero initial level and slope: the level
    # at t accumulates the slope, the slope accumulates the innovations.
    slope_path = np.cumsum(trend_innovations)
    trend = np.cumsum(np.concatenate(([0.0], slope_path[:-1])))

    angle = 2.0 * np.pi / params.cycle_period
    rotation = params.cycle_damping * np.array(
        [[np.cos(angle), np.sin(angle)], [-np.sin(angle), np.cos(angle)]]
    )
    cycle = np.empty(T)
    state = np.zeros(2)
    for t in range(T):
        state = rotation @ state + cycle_innovations[t]
        cycle[t] = state[0]

    tgrid = np.arange(1, T + 1, dtype=float)
    seasonal = np.zeros(T)
    for j in range(1, n_harmonics + 1):
        cos_walk = np.cumsum(seasonal_innovations[j - 1, :, 0])
        sin_walk = np.cumsum(seasonal_innovations[j - 1, :, 1])
        phase = 2.0 * np.pi * j * tgrid / params.seasonal_period
        seasonal += cos_walk * np.cos(phase) + sin_walk * np.sin(phase)

    return trend, cycle, seasonal, irregular


def simulate_linear(params: LinearModelParams | None = None) -> Realization:
    """Simulate one realization of the additive model.

    Returns the observed series together with the four true components;
    the observation is exactly their sum.
    """
    params = params if params is not None else LinearModelParams()
    params.validate()
    rng = np.random.default_rng(params.seed)
    trend, cycle, seasonal, irregular = _draw_components(params, rng)
    components = {
        "trend": trend,
        "cycle": cycle,
        "seasonal": seasonal,
        "irregular": irregular,
    }
    observed = trend + cycle + seasonal + irregular
    return Realization(observed, components, params.seed)


def _rescaled_modulation(params: NonlinearModelParams, trend: np.ndarray):
    """Log-modulation path, remapped onto [log 1/2, log 3/2] if it exits."""
    log_path = params.modulation_intercept + params.modulation_slope * trend
    lo, hi = np.log(0.5), np.log(1.5)
    pmin, pmax = float(log_path.min()), float(log_path.max())
    if lo <= pmin and pmax <= hi:
        return log_path
    if pmax > pmin:
        slope = params.modulation_slope * (hi - lo) / (pmax - pmin)
        tmin = float(trend.min())
        intercept = lo - slope * tmin
        return intercept + slope * trend
    # Constant trend path: clip the constant, keep the slope.
    shift = np.clip(pmin, lo, hi) - pmin
    return log_path + shift


def simulate_nonlinear(params: NonlinearModelParams | None = None) -> Realization:
    """Simulate the model with trend-modulated seasonal amplitude.

    The stored seasonal truth is the modulated series, so the components
    still sum exactly to the observation.
    """
    params = params if params is not None else NonlinearModelParams()
    params.validate()
    rng = np.random.default_rng(params.seed)
    trend, cycle, seasonal, irregular = _draw_components(params, rng)
    modulation = np.exp(_rescaled_modulation(params, trend))
    components = {
        "trend": trend,
        "cycle": cycle,
        "seasonal": modulation * seasonal,
        "irregular": irregular,
    }
    observed = trend + cycle + components["seasonal"] + irregular
    return Realization(observed, components, params.seed)


def model_grouping(
    window_length: int, seasonal_period: int = 12, cycle_period: float = 48.0
) -> GroupingSpec:
    """Degenerate bands at the model's exact structural frequencies.

    Trend sits at frequency zero, the cycle at 1/cycle_period, and one
    band per seasonal harmonic j/seasonal_period up to Nyquist. The
    window must place a grid frequency on each of these, i.e. be a
    multiple of seasonal_period and of cycle_period.
    """
    L = int(window_length)
    cycle_freq = 1.0 / cycle_period
    grid = [b / L for b in range(L // 2 + 1)]
    bands = [Band("trend", 0.0, 0.0), Band("cycle", cycle_freq, cycle_freq)]
    seasonal_freqs = [
        j / seasonal_period for j in range(1, seasonal_period // 2 + 1)
    ]
    for f in bands[1].low, *seasonal_freqs:
        if f not in grid:
            raise InvalidParams(
                f"frequency {f} is not on the grid of window {L}; "
                "choose a window divisible by the relevant period"
            )
    bands.extend(Band("seasonal", f, f) for f in seasonal_freqs)
    return GroupingSpec(tuple(bands), residual_name="irregular")


def replication_seeds(master_seed, n_reps: int) -> np.ndarray:
    """Child seeds for ``n_reps`` independent replications.

    Deterministic given ``master_seed``; replication i of a Monte Carlo
    run can be reproduced by simulating with seed ``out[i]``.
    """
    if n_reps < 1:
        raise InvalidParams("n_reps must be at least 1")
    return np.random.SeedSequence(master_seed).generate_state(n_reps, dtype=np.uint64)


@dataclass(frozen=True)
class QuantileRow:
    component: str
    statistic: str
    q5: float
    q25: float
    q50: float
    q75: float
    q95: float

    def as_tuple(self):
        return (
            self.component,
            self.statistic,
            self.q5,
            self.q25,
            self.q50,
            self.q75,
            self.q95,
        )


@dataclass(frozen=True)
class MonteCarloResult:
    model: str
    n_reps: int
    window_length: int
    tables: dict[str, tuple[QuantileRow, ...]]
    failures: dict[str, tuple[tuple[int, str], ...]]

    def row(self, variant: str, component: str, statistic: str) -> QuantileRow:
        for r in self.tables[variant]:
            if r.component == component and r.statistic == statistic:
                return r
        raise KeyError(f"no row ({component}, {statistic}) for variant {variant!r}")

    def median(self, variant: str, component: str, statistic: str) -> float:
        return self.row(variant, component, statistic).q50


_PIPELINE_BUILDERS = {
    "cissa": cissa,
    "circulant": cissa,
    "basic": basic_ssa,
    "toeplitz": toeplitz_ssa,
}

_REGRESSED = ("trend", "cycle", "seasonal")


def _variant_pipeline(name: str, window_length: int, grouping: GroupingSpec):
    fn = _PIPELINE_BUILDERS[name]

    def extract(observed: np.ndarray) -> Mapping[str, np.ndarray]:
        return fn(observed, window_length, grouping).components

    return extract


def monte_carlo(
    model: str = "linear",
    params: LinearModelParams | None = None,
    n_reps: int = 500,
    variants=("cissa",),
    window_length: int = 48,
    grouping: GroupingSpec | None = None,
    pipelines: Mapping[str, Callable[[np.ndarray], Mapping[str, np.ndarray]]] | None = None,
) -> MonteCarloResult:
    """Simulate, decompose, and score ``n_reps`` independent realizations.

    For each replication and each variant, the true trend, cycle, and
    seasonal are regressed on their extracted counterparts, and an AR(1)
    model is fitted to the residual observed - trend - cycle - seasonal.
    Rows of the result tables hold the 5/25/50/75/95 percent quantiles of
    each statistic across replications.

    ``variants`` names entries of ``pipelines`` when given, otherwise the
    built-in extractors ("cissa", "basic", "toeplitz"). A replication
    where a variant raises is counted in ``failures`` for that variant
    and excluded from its quantiles, never from the other variants'.
    Given the same seeded ``params`` the run is reproducible bit for bit.
    """
    if model == "linear":
        base = params if params is not None else LinearModelParams()
        simulate = simulate_linear
    elif model == "nonlinear":
        base = params if params is not None else NonlinearModelParams()
        if not isinstance(base, NonlinearModelParams):
            raise InvalidParams("the nonlinear model needs NonlinearModelParams")
        simulate = simulate_nonlinear
    else:
        raise InvalidParams(f"unknown model {model!r}; expected linear or nonlinear")
    base.validate()
    if n_reps < 1:
        raise InvalidParams("n_reps must be at least 1")
    variants = tuple(variants)
    if not variants:
        raise InvalidParams("need at least one variant")
    if grouping is None:
        grouping = model_grouping(
            window_length, base.seasonal_period, base.cycle_period
        )
    resolved: dict[str, Callable[[np.ndarray], Mapping[str, np.ndarray]]] = {}
    for name in variants:
        if pipelines is not None and name in pipelines:
            resolved[name] = pipelines[name]
        elif name in _PIPELINE_BUILDERS:
            resolved[name] = _variant_pipeline(name, window_length, grouping)
        else:
            raise InvalidParams(f"unknown variant {name!r}")

    seeds = replication_seeds(base.seed, n_reps)
    samples: dict[str, dict[tuple[str, str], list[float]]] = {
        name: {} for name in variants
    }
    failures: dict[str, list[tuple[int, str]]] = {name: [] for name in variants}

    for i in range(n_reps):
        realization = simulate(replace(base, seed=int(seeds[i])))
        for name in variants:
            try:
                extracted = resolved[name](realization.observed)
                stats: list[tuple[str, str, float]] = []
                residual = realization.observed.copy()
                for comp in _REGRESSED:
                    check = regression_check(
                        realization.true_components[comp], extracted[comp], comp
                    )
                    stats.append((comp, "intercept", check.intercept))
                    stats.append((comp, "slope", check.slope))
                    residual = residual - extracted[comp]
                fit = ar1_fit(residual)
                stats.append(("residual", "mean", fit.mean))
                stats.append(("residual", "stddev", fit.stddev))
                stats.append(("residual", "ar1", fit.ar_coefficient))
            except CissaError as exc:
                failures[name].append((i, f"{type(exc).__name__}: {exc}"))
                continue
            table = samples[name]
            for comp, stat, value in stats:
                table.setdefault((comp, stat), []).append(value)

    tables: dict[str, tuple[QuantileRow, ...]] = {}
    for name in variants:
        rows = []
        for (comp, stat), values in samples[name].items():
            q = np.percentile(values, QUANTILE_LEVELS)
            rows.append(QuantileRow(comp, stat, *map(float, q)))
        tables[name] = tuple(rows)
    return MonteCarloResult(
        model=model,
        n_reps=n_reps,
        window_length=window_length,
        tables=tables,
        failures={name: tuple(failures[name]) for name in variants},
    )
