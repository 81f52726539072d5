"""Estimator-style wrappers around the decomposition pipelines.

These follow the scikit-learn conventions: constructor arguments are
stored untouched, ``fit`` learns nothing beyond running the configured
decomposition and stashing its results with trailing-underscore names,
and ``transform`` maps a series to the (T, n_components) matrix of
reconstructed component columns. They compose with scikit-learn tooling
(``clone``, ``get_params``, pipelines) while the functional API in
:mod:`cissa.decomposition` stays the primary entry point.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .decomposition import Decomposition, basic_ssa, cissa, toeplitz_ssa
from .grouping import GroupingSpec, default_monthly_grouping
from .validation import as_series

__all__ = ["CirculantSSA", "BasicSSA", "ToeplitzSSA"]


class _SSABase(BaseEstimator, TransformerMixin):
    """Shared fit/transform plumbing for the three variants."""

    def __init__(self, window_length=48, grouping=None):
        self.window_length = window_length
        self.grouping = grouping

    def _resolved_grouping(self) -> GroupingSpec:
        if self.grouping is None:
            return default_monthly_grouping(self.window_length)
        return self.grouping

    def _decompose(self, x) -> Decomposition:
        raise NotImplementedError

    def fit(self, X, y=None):
        """Decompose ``X`` and store the results as fitted attributes."""
        d = self._decompose(X)
        self.decomposition_ = d
        self.components_ = d.components
        self.shares_ = d.shares
        self.grouping_ = d.grouping
        self.component_names_ = tuple(d.components)
        self.n_features_in_ = 1
        return self

    def transform(self, X) -> np.ndarray:
        """Column-stack the reconstructed components of ``X``.

        Stateless apart from the constructor parameters, so it accepts
        any series compatible with the configured window.
        """
        d = self._decompose(X)
        return np.column_stack([d.components[n] for n in d.components])

    def fit_transform(self, X, y=None) -> np.ndarray:
        d = self.fit(X).decomposition_
        return np.column_stack([d.components[n] for n in d.components])

    def inverse_transform(self, Xt) -> np.ndarray:
        """Sum component columns back into a single series."""
        Xt = np.asarray(Xt, dtype=float)
        if Xt.ndim != 2:
            Xt = np.atleast_2d(Xt)
        return Xt.sum(axis=1)

    def get_feature_names_out(self, input_features=None):
        if hasattr(self, "component_names_"):
            return np.asarray(self.component_names_, dtype=object)
        return np.asarray(self._resolved_grouping().component_names(), dtype=object)


class CirculantSSA(_SSABase):
    """Circulant-variant decomposition with frequency-indexed grouping.

    Parameters
    ----------
    window_length : int
        Embedding window L, with 1 < L < T/2.
    grouping : GroupingSpec, optional
        Frequency bands per named component; defaults to the monthly
        trend/cycle/seasonal layout, which requires L divisible by 12.

    Examples
    --------
    >>> est = CirculantSSA(window_length=24)
    >>> mat = est.fit_transform(series)          # doctest: +SKIP
    >>> est.shares_["seasonal"]                  # doctest: +SKIP
    """

    def _decompose(self, x):
        return cissa(as_series(x), self.window_length, self._resolved_grouping())


class BasicSSA(_SSABase):
    """Covariance-eigendecomposition variant with frequency-routed grouping."""

    def __init__(self, window_length=48, grouping=None, frequency_source="eigenvector"):
        super().__init__(window_length=window_length, grouping=grouping)
        self.frequency_source = frequency_source

    def _decompose(self, x):
        return basic_ssa(
            as_series(x),
            self.window_length,
            self._resolved_grouping(),
            frequency_source=self.frequency_source,
        )


class ToeplitzSSA(BasicSSA):
    """Autocovariance-Toeplitz variant with frequency-routed grouping."""

    def _decompose(self, x):
        return toeplitz_ssa(
            as_series(x),
            self.window_length,
            self._resolved_grouping(),
            frequency_source=self.frequency_source,
        )
