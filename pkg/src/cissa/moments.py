"""Sample second moments and the three L x L second-moment matrices.

Three related matrices drive the three decomposition variants:

* ``basic_matrix``     S = X X' / N from the trajectory matrix X,
* ``toeplitz_matrix``  entries are the sample autocovariances at |i - j|,
* ``circulant_matrix`` a circulant blend of autocovariances at lag m and
  lag L - m, which is what ties eigenvectors to fixed frequencies.

No mean is subtracted anywhere in this module: all quantities are raw
second moments, and demeaning (if wanted) is a preprocessing decision
left to the caller. The autocovariance at lag m uses the divisor
1 / (T - m).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import toeplitz

from .embedding import embed
from .exceptions import InvalidParams, LagOutOfRange
from .validation import as_series, check_window

__all__ = [
    "VARIANTS",
    "SecondMomentMatrix",
    "autocovariances",
    "circulant_coefficients",
    "basic_matrix",
    "toeplitz_matrix",
    "circulant_matrix",
]

VARIANTS = ("basic", "toeplitz", "circulant")


@dataclass(frozen=True)
class SecondMomentMatrix:
    """An L x L second-moment matrix tagged with the variant that built it.

    The tag is what downstream eigensolvers dispatch on, so Basic/Toeplitz
    matrices cannot be fed to the circulant closed-form solver by accident.
    """

    entries: np.ndarray = field(repr=False)
    variant: str

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise InvalidParams(
                f"variant must be one of {VARIANTS}, got {self.variant!r}"
            )

    @property
    def window_length(self) -> int:
        return self.entries.shape[0]


def autocovariances(series, max_lag: int) -> np.ndarray:
    """Raw second moments at lags 0..max_lag, divisor 1/(T - m).

    The value at lag m is ``sum(x[t] * x[t + m]) / (T - m)`` over the
    T - m available products. No mean subtraction.
    """
    x = as_series(series)
    T = x.size
    if not 0 <= max_lag < T:
        raise LagOutOfRange(f"max_lag={max_lag} must satisfy 0 <= max_lag < T={T}")
    return np.array([x[: T - m] @ x[m:] / (T - m) for m in range(max_lag + 1)])


def circulant_coefficients(acov: np.ndarray) -> np.ndarray:
    """Blend autocovariances into the first row of the circulant matrix.

    For an input of lags 0..L-1 the m-th output is

        c[m] = ((L - m) / L) * acov[m] + (m / L) * acov[L - m]

    with c[0] = acov[0]. The two terms swap under m -> L - m, so the
    result is exactly symmetric: c[m] == c[L - m].
    """
    g = np.asarray(acov, dtype=float)
    L = g.size
    if L < 2:
        raise InvalidParams("need autocovariances at lags 0..L-1 with L >= 2")
    m = np.arange(L)
    c = (L - m) / L * g
    c[1:] += m[1:] / L * g[L - m[1:]]
    return c


def basic_matrix(series, window_length: int) -> SecondMomentMatrix:
    """S = X X' / N from the trajectory matrix X."""
    X = embed(series, window_length)
    N = X.shape[1]
    return SecondMomentMatrix(X @ X.T / N, "basic")


def toeplitz_matrix(series, window_length: int) -> SecondMomentMatrix:
    """Symmetric Toeplitz matrix of autocovariances at |i - j|."""
    x = as_series(series)
    L = check_window(x.size, window_length)
    g = autocovariances(x, L - 1)
    return SecondMomentMatrix(toeplitz(g), "toeplitz")


def circulant_matrix(series, window_length: int) -> SecondMomentMatrix:
    """Circulant matrix whose first row is ``circulant_coefficients``.

    Row i is the right cyclic shift of row i - 1, i.e. entry (i, j)
    equals c[(j - i) mod L]; the coefficient symmetry makes the result
    a symmetric matrix.
    """
    x = as_series(series)
    L = check_window(x.size, window_length)
    c = circulant_coefficients(autocovariances(x, L - 1))
    idx = (np.arange(L)[None, :] - np.arange(L)[:, None]) % L
    return SecondMomentMatrix(c[idx], "circulant")
