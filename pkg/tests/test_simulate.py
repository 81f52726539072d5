import numpy as np
import pytest
from numpy.testing import assert_allclose

from cissa.exceptions import InvalidParams
from cissa.simulate import (
    LinearModelParams,
    NonlinearModelParams,
    model_grouping,
    monte_carlo,
    replication_seeds,
    simulate_linear,
    simulate_nonlinear,
)


def test_linear_realization_is_additive_and_reproducible():
    """Seeded draws are bitwise stable and the truth sums to the data.

    Both properties anchor the Monte Carlo harness: quantile tables are
    reproducible, and the residual observed minus extracted components
    is meaningful because the model is exactly additive.
    """
    a = simulate_linear(LinearModelParams(seed=123))
    b = simulate_linear(LinearModelParams(seed=123))
    for name in a.true_components:
        assert np.array_equal(a.true_components[name], b.true_components[name])
    total = sum(a.true_components.values())
    assert_allclose(a.observed, total, rtol=0, atol=0)
    assert a.observed.size == 193
    assert set(a.true_components) == {"trend", "cycle", "seasonal", "irregular"}


def test_different_seeds_differ():
    a = simulate_linear(LinearModelParams(seed=1))
    b = simulate_linear(LinearModelParams(seed=2))
    assert not np.array_equal(a.observed, b.observed)


def test_component_scales_track_their_noise_levels():
    # with all other noise off, each component reduces to its own source
    base = dict(n_obs=300, seed=9)
    quiet = LinearModelParams(
        trend_noise_std=0.0,
        cycle_noise_std=0.0,
        seasonal_noise_std=0.0,
        irregular_noise_std=1.0,
        **base,
    )
    r = simulate_linear(quiet)
    assert np.all(r.true_components["trend"] == 0.0)
    assert np.all(r.true_components["cycle"] == 0.0)
    assert np.all(r.true_components["seasonal"] == 0.0)
    assert np.std(r.true_components["irregular"]) > 0.5


def test_trend_is_an_integrated_random_walk():
    r = simulate_linear(LinearModelParams(seed=5, n_obs=50))
    trend = r.true_components["trend"]
    assert trend[0] == 0.0
    # second differences of the trend are the slope innovations: white
    second = np.diff(trend, 2)
    assert np.std(second) < 5 * 0.0006
    assert np.std(second) > 0.0


def test_nonlinear_modulation_stays_in_bounds():
    r = simulate_nonlinear(NonlinearModelParams(seed=11, modulation_slope=50.0))
    lin = simulate_linear(LinearModelParams(seed=11))
    ratio = np.divide(
        r.true_components["seasonal"],
        lin.true_components["seasonal"],
        out=np.ones_like(r.observed),
        where=lin.true_components["seasonal"] != 0.0,
    )
    assert ratio.min() >= 0.5 - 1e-9
    assert ratio.max() <= 1.5 + 1e-9
    total = sum(r.true_components.values())
    assert_allclose(r.observed, total, rtol=0, atol=0)


def test_nonlinear_shares_the_linear_draw_streams():
    # same seed: trend, cycle, irregular identical; seasonal rescaled
    lin = simulate_linear(LinearModelParams(seed=21))
    non = simulate_nonlinear(NonlinearModelParams(seed=21))
    assert np.array_equal(lin.true_components["trend"], non.true_components["trend"])
    assert np.array_equal(lin.true_components["cycle"], non.true_components["cycle"])
    assert np.array_equal(
        lin.true_components["irregular"], non.true_components["irregular"]
    )
    assert not np.array_equal(
        lin.true_components["seasonal"], non.true_components["seasonal"]
    )


def test_params_validation():
    with pytest.raises(InvalidParams):
        simulate_linear(LinearModelParams(n_obs=2))
    with pytest.raises(InvalidParams):
        simulate_linear(LinearModelParams(cycle_period=2.0))
    with pytest.raises(InvalidParams):
        simulate_linear(LinearModelParams(irregular_noise_std=-1.0))
    with pytest.raises(InvalidParams):
        simulate_nonlinear(NonlinearModelParams(modulation_slope=0.0))


def test_model_grouping_pins_structural_frequencies():
    g = model_grouping(48)
    names = [b.name for b in g.bands]
    assert names == ["trend", "cycle"] + ["seasonal"] * 6
    assert g.bands[0].low == g.bands[0].high == 0.0
    assert g.bands[1].low == pytest.approx(1 / 48)
    with pytest.raises(InvalidParams):
        model_grouping(50)


def test_replication_seeds_deterministic():
    a = replication_seeds(7, 10)
    b = replication_seeds(7, 10)
    assert np.array_equal(a, b)
    assert len(set(a.tolist())) == 10
    with pytest.raises(InvalidParams):
        replication_seeds(7, 0)


def test_monte_carlo_structure_and_reproducibility():
    res = monte_carlo(
        model="linear",
        params=LinearModelParams(seed=3),
        n_reps=8,
        variants=("cissa", "toeplitz"),
        window_length=48,
    )
    assert res.model == "linear"
    assert res.n_reps == 8
    assert set(res.tables) == {"cissa", "toeplitz"}
    row = res.row("cissa", "trend", "slope")
    assert row.q5 <= row.q25 <= row.q50 <= row.q75 <= row.q95
    again = monte_carlo(
        model="linear",
        params=LinearModelParams(seed=3),
        n_reps=8,
        variants=("cissa", "toeplitz"),
        window_length=48,
    )
    assert again.tables == res.tables
    assert res.failures == {"cissa": (), "toeplitz": ()}


def test_monte_carlo_accepts_injected_pipelines():
    """An oracle pipeline that returns the truth gives a perfect table.

    Regression of truth on truth has intercept 0 and slope 1 exactly,
    and the residual equals the irregular component.
    """
    params = LinearModelParams(seed=6)
    seeds = replication_seeds(6, 5)
    truth = {}
    for s in seeds:
        r = simulate_linear(LinearModelParams(seed=int(s)))
        truth[r.observed.tobytes()] = r.true_components

    def oracle(observed):
        return truth[observed.tobytes()]

    res = monte_carlo(
        model="linear",
        params=params,
        n_reps=5,
        variants=("oracle",),
        pipelines={"oracle": oracle},
        window_length=48,
    )
    for comp in ("trend", "cycle", "seasonal"):
        assert res.median("oracle", comp, "intercept") == pytest.approx(0.0, abs=1e-12)
        assert res.median("oracle", comp, "slope") == pytest.approx(1.0, abs=1e-12)
    sd = res.median("oracle", "residual", "stddev")
    assert sd == pytest.approx(0.06, rel=0.3)


def test_monte_carlo_counts_failures_per_variant():
    def broken(observed):
        raise InvalidParams("always fails")

    res = monte_carlo(
        model="linear",
        params=LinearModelParams(seed=4),
        n_reps=3,
        variants=("cissa", "broken"),
        pipelines={"broken": broken},
        window_length=48,
    )
    assert len(res.failures["broken"]) == 3
    assert res.failures["cissa"] == ()
    assert res.row("cissa", "trend", "slope") is not None
    with pytest.raises(KeyError):
        res.row("broken", "trend", "slope")


def test_monte_carlo_validates_inputs():
    with pytest.raises(InvalidParams):
        monte_carlo(model="quadratic", n_reps=2)
    with pytest.raises(InvalidParams):
        monte_carlo(model="linear", n_reps=0)
    with pytest.raises(InvalidParams):
        monte_carlo(model="linear", n_reps=2, variants=())
    with pytest.raises(InvalidParams):
        monte_carlo(model="linear", n_reps=2, variants=("svd",))
    with pytest.raises(InvalidParams):
        monte_carlo(model="nonlinear", params=LinearModelParams(seed=1), n_reps=2)
