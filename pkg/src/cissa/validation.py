"""Input validation helpers used at every public entry point."""

from __future__ import annotations

import numpy as np

from .exceptions import InvalidParams, NonFiniteInput, WindowOutOfRange


def as_series(x, name: str = "series") -> np.ndarray:
    """Coerce input to a 1-D float64 array and check it is finite.

    Accepts any array-like of shape (T,) or a column vector (T, 1).
    """
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise InvalidParams(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size and not np.all(np.isfinite(arr)):
        bad = int(np.flatnonzero(~np.isfinite(arr))[0])
        raise NonFiniteInput(f"{name} contains a non-finite value at position {bad}")
    return arr


def check_window(n_obs: int, window_length: int) -> int:
    """Validate 1 < L < T/2 and return L as a plain int."""
    L = int(window_length)
    if L != window_length:
        raise WindowOutOfRange(f"window_length must be an integer, got {window_length!r}")
    if not (1 < L and 2 * L < n_obs):
        raise WindowOutOfRange(
            f"window_length={L} must satisfy 1 < L < T/2 for T={n_obs}"
        )
    return L
