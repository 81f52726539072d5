"""Lag embedding and its inverse, diagonal averaging.

The embedding step turns a series of length T into the L x N trajectory
matrix whose columns are consecutive windows of the series (N = T - L + 1).
Diagonal averaging maps any L x N matrix back to a series of length
L + N - 1 by averaging its antidiagonals, and is the exact inverse of
``embed`` on matrices that are already Hankel.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import hankel

from .exceptions import EmptyMatrix, InvalidParams
from .validation import as_series, check_window

__all__ = ["embed", "diagonal_average", "antidiagonal_counts", "extend_series"]


def embed(series, window_length: int) -> np.ndarray:
    """Build the L x N trajectory matrix of a series.

    Parameters
    ----------
    series : array-like, shape (T,)
        Input series, finite values only.
    window_length : int
        Embedding dimension L, required to satisfy 1 < L < T/2.

    Returns
    -------
    ndarray, shape (L, N)
        Hankel matrix with entry (i, j) equal to ``series[i + j]``
        (0-based), so each column is one length-L window and
        N = T - L + 1.

    Raises
    ------
    WindowOutOfRange
        If ``window_length`` is out of the admissible range.
    NonFiniteInput
        If the series contains NaN or infinities.
    """
    x = as_series(series)
    L = check_window(x.size, window_length)
    return hankel(x[:L], x[L - 1 :])


def diagonal_average(matrix) -> np.ndarray:
    """Average the antidiagonals of a matrix into a series.

    The t-th output value is the mean of all entries (i, j) with
    i + j = t, the standard hankelization step. The result has length
    L + N - 1 for an L x N input, and ``diagonal_average(embed(x, L))``
    returns ``x`` exactly.

    Parameters
    ----------
    matrix : array-like, shape (L, N)
        Any real matrix with both dimensions nonzero.

    Returns
    -------
    ndarray, shape (L + N - 1,)

    Raises
    ------
    EmptyMatrix
        If either dimension is zero.
    """
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2:
        raise EmptyMatrix(f"expected a 2-D matrix, got shape {m.shape}")
    L, N = m.shape
    if L == 0 or N == 0:
        raise EmptyMatrix(f"matrix has a zero dimension: shape {m.shape}")
    sums = np.zeros(L + N - 1)
    counts = antidiagonal_counts(L, N)
    for i in range(L):
        sums[i : i + N] += m[i]
    return sums / counts


def antidiagonal_counts(n_rows: int, n_cols: int) -> np.ndarray:
    """Number of entries on each antidiagonal of an n_rows x n_cols matrix."""
    total = n_rows + n_cols - 1
    t = np.arange(total)
    return np.minimum(np.minimum(t + 1, total - t), min(n_rows, n_cols))


def _ar_forecast(seq: np.ndarray, coeffs: np.ndarray, steps: int) -> np.ndarray:
    """Iterate an autoregression ``steps`` points past the end of ``seq``."""
    order = coeffs.size
    buf = np.concatenate([seq, np.empty(steps)])
    for t in range(seq.size, seq.size + steps):
        buf[t] = coeffs @ buf[t - 1 : t - 1 - order : -1]
    return buf[seq.size :]


def _burg_coefficients(x: np.ndarray, order: int) -> np.ndarray:
    """Autoregressive prediction coefficients by Burg's method.

    Returns a of length ``order`` such that x[t] is predicted by
    sum(a[i] * x[t - 1 - i]). Burg keeps every reflection coefficient in
    [-1, 1], so the fitted recursion never diverges when iterated, which
    matters for near-unit-root data. The recursion stops early once the
    prediction error is negligible (an exactly predictable input such as
    a pure cosine); remaining coefficients stay zero.
    """
    a = np.zeros(order)
    f = x[1:].astype(float)
    b = x[:-1].astype(float)
    den0 = float(f @ f + b @ b)
    if den0 == 0.0:
        return a
    for m in range(order):
        den = float(f @ f + b @ b)
        if den <= 1e-24 * den0:
            break
        k = 2.0 * float(f @ b) / den
        if m > 0:
            a[:m] = a[:m] - k * a[m - 1 :: -1]
        a[m] = k
        f, b = f[1:] - k * b[1:], (b - k * f)[:-1]
    return a


def extend_series(series, pad: int, method: str = "ar") -> np.ndarray:
    """Extend a series by ``pad`` points at each end.

    Decomposition error concentrates in the first and last L - 1 points
    otherwise, because those positions average fewer antidiagonal
    entries. Padding by L and keeping the central T points afterwards
    gives every retained point the full multiplicity.

    Parameters
    ----------
    series : array-like, shape (T,)
    pad : int
        Number of points added at each end.
    method : {"ar", "mirror"}
        "ar" models the first differences as drift plus a short
        autoregression (Burg, order about pad // 4) and cumulates the
        backcast/forecast increments; suits stochastic and trending
        data. "mirror" reflects the series around its endpoints; exact
        for even signals around the boundary, cheap, but biased for
        trends.

    Returns
    -------
    ndarray, shape (T + 2 * pad,)
        ``out[pad : pad + T]`` is the original series.
    """
    x = as_series(series)
    pad = int(pad)
    if pad < 0:
        raise InvalidParams(f"pad must be nonnegative, got {pad}")
    if pad == 0:
        return x.copy()
    if method == "mirror":
        if pad >= x.size:
            raise InvalidParams(
                f"mirror extension needs pad < T, got pad {pad} for T {x.size}"
            )
        return np.concatenate([x[pad:0:-1], x, x[-2 : -pad - 2 : -1]])
    if method != "ar":
        raise InvalidParams(f"unknown extension method {method!r}")
    # Model the first differences as drift plus a short autoregression
    # and cumulate the forecast increments. The drift carries the local
    # slope through the boundary (a fit on levels would revert it), and
    # the low order keeps the pads from chasing noise, which would
    # otherwise leak into the narrow-band components near the ends.
    dx = np.diff(x)
    if dx.size == 0:
        return np.full(x.size + 2 * pad, x[0] if x.size else 0.0)
    drift = dx.mean()
    steps = np.arange(1, pad + 1)
    order = min(dx.size - 2, max(2, pad // 4))
    if order < 1:
        left = x[0] - drift * steps[::-1]
        right = x[-1] + drift * steps
        return np.concatenate([left, x, right])
    z = dx - drift
    coeffs = _burg_coefficients(z, order)
    right = x[-1] + np.cumsum(drift + _ar_forecast(z, coeffs, pad))
    left = x[0] + np.cumsum(-drift + _ar_forecast(-z[::-1], coeffs, pad))
    return np.concatenate([left[::-1], x, right])
