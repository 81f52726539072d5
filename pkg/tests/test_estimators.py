import numpy as np
import pytest
from numpy.testing import assert_allclose
from sklearn.base import clone

from cissa import BasicSSA, CirculantSSA, ToeplitzSSA
from cissa.grouping import Band, GroupingSpec

ESTIMATORS = [CirculantSSA, BasicSSA, ToeplitzSSA]


def _series(n=150, seed=30):
    rng = np.random.default_rng(seed)
    return np.cumsum(rng.normal(size=n)) + rng.normal(size=n)


@pytest.mark.parametrize("cls", ESTIMATORS)
def test_get_params_and_clone(cls):
    est = cls(window_length=24)
    params = est.get_params()
    assert params["window_length"] == 24
    assert params["grouping"] is None
    other = clone(est)
    assert other.get_params() == params


@pytest.mark.parametrize("cls", ESTIMATORS)
def test_fit_exposes_the_decomposition(cls):
    x = _series()
    est = cls(window_length=24).fit(x)
    assert est.component_names_ == ("trend", "cycle", "seasonal", "irregular")
    assert est.n_features_in_ == 1
    total = sum(est.components_[n] for n in est.component_names_)
    assert_allclose(total, x, rtol=0, atol=1e-9)
    assert sum(est.shares_.values()) == pytest.approx(100.0, abs=1e-9)


@pytest.mark.parametrize("cls", ESTIMATORS)
def test_transform_stacks_components(cls):
    x = _series()
    est = cls(window_length=24)
    mat = est.fit_transform(x)
    assert mat.shape == (x.size, 4)
    assert_allclose(est.inverse_transform(mat), x, rtol=0, atol=1e-9)
    # transform is stateless: a second series of another length works
    y = _series(n=130, seed=31)
    assert est.transform(y).shape == (130, 4)


@pytest.mark.parametrize("cls", ESTIMATORS)
def test_custom_grouping_controls_columns(cls):
    g = GroupingSpec((Band("low", 0.0, 0.1),), residual_name="rest")
    est = cls(window_length=20, grouping=g).fit(_series())
    assert est.component_names_ == ("low", "rest")
    names = est.get_feature_names_out()
    assert list(names) == ["low", "rest"]


def test_feature_names_before_fit_use_the_grouping():
    est = CirculantSSA(window_length=24)
    assert list(est.get_feature_names_out()) == [
        "trend",
        "cycle",
        "seasonal",
        "irregular",
    ]


def test_basic_estimator_exposes_frequency_source():
    est = BasicSSA(window_length=24, frequency_source="pc")
    assert est.get_params()["frequency_source"] == "pc"
    est.fit(_series())
    assert est.decomposition_.variant == "basic"


def test_variants_disagree_only_in_routing():
    x = _series()
    a = CirculantSSA(window_length=24).fit(x)
    b = ToeplitzSSA(window_length=24).fit(x)
    assert a.decomposition_.variant == "circulant"
    assert b.decomposition_.variant == "toeplitz"
    assert_allclose(
        sum(a.components_.values()), sum(b.components_.values()), rtol=0, atol=1e-9
    )
