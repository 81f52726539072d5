"""Eigenstructure of the second-moment matrices, plus periodograms.

Circulant matrices have a closed-form eigendecomposition: eigenvector k
is the k-th discrete Fourier vector and its eigenvalue is the discrete
transform of the first row, which reads out a spectral-density estimate
at frequency (k - 1) / L. Basic/Toeplitz matrices get an ordinary
symmetric eigendecomposition instead, and a periodogram utility supports
assigning those eigenvectors to frequencies after the fact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import ConvergenceFailure, InvalidParams, VariantMismatch
from .moments import SecondMomentMatrix
from .validation import as_series

__all__ = [
    "Eigentriple",
    "Periodogram",
    "circulant_eigenvalues",
    "fourier_eigenvectors",
    "circulant_eigentriples",
    "symmetric_eigentriples",
    "periodogram",
    "dominant_frequency",
]


@dataclass(frozen=True)
class Eigentriple:
    """One (eigenvalue, eigenvector) pair with its bookkeeping.

    ``component_index`` is the classical 1-based eigentriple number k.
    For the circulant variant the entries are ordered by frequency
    (k - 1) / L, stored in ``frequency``; for Basic/Toeplitz they are
    ordered by decreasing eigenvalue and ``frequency`` is None.
    """

    eigenvalue: float
    eigenvector: np.ndarray = field(repr=False)
    component_index: int
    frequency: float | None = None


@dataclass(frozen=True)
class Periodogram:
    """Power at the discrete frequencies j/n for j = 0..floor(n/2)."""

    frequencies: np.ndarray = field(repr=False)
    powers: np.ndarray = field(repr=False)


def _is_seven_smooth(n: int) -> bool:
    for p in (2, 3, 5, 7):
        while n % p == 0:
            n //= p
    return n == 1


def circulant_eigenvalues(coeffs, method: str = "auto") -> np.ndarray:
    """Eigenvalues of the circulant matrix with first row ``coeffs``.

    The k-th value (0-based k) is sum_m coeffs[m] * exp(i 2 pi m k / L),
    returned as its real part; for a symmetric first row the imaginary
    part is rounding noise. ``method`` selects the fast transform
    ("fft"), the direct O(L^2) summation ("direct"), or picks by the
    factorization of L ("auto": fft when L has no prime factor above 7).
    Both paths compute the same quantity and are tested against each
    other.
    """
    c = np.asarray(coeffs, dtype=float)
    L = c.size
    if method == "auto":
        method = "fft" if _is_seven_smooth(L) else "direct"
    if method == "fft":
        return (np.fft.ifft(c) * L).real.copy()
    if method == "direct":
        k = np.arange(L)
        vals = np.empty(L)
        for b in range(L):
            vals[b] = np.sum(c * np.cos(2.0 * np.pi * k * b / L))
        return vals
    raise InvalidParams(f"method must be 'auto', 'fft' or 'direct', got {method!r}")


def fourier_eigenvectors(window_length: int) -> np.ndarray:
    """Unit-norm Fourier eigenvectors as columns of an L x L matrix.

    Column k (0-based) has entries exp(-i 2 pi j k / L) / sqrt(L) for
    j = 0..L-1; these diagonalize every circulant matrix of order L.
    Columns k and L - k are complex conjugates.
    """
    L = int(window_length)
    jk = np.outer(np.arange(L), np.arange(L))
    return np.exp(-2j * np.pi * jk / L) / np.sqrt(L)


def circulant_eigentriples(matrix: SecondMomentMatrix) -> list[Eigentriple]:
    """Closed-form eigentriples of a circulant second-moment matrix.

    Ordered by the frequency index k = 1..L (frequency (k - 1) / L),
    not by eigenvalue magnitude.
    """
    if matrix.variant != "circulant":
        raise VariantMismatch(
            f"circulant_eigentriples needs a circulant matrix, got {matrix.variant!r}"
        )
    L = matrix.window_length
    vals = circulant_eigenvalues(matrix.entries[0])
    U = fourier_eigenvectors(L)
    return [
        Eigentriple(float(vals[b]), U[:, b], b + 1, b / L) for b in range(L)
    ]


def symmetric_eigentriples(matrix: SecondMomentMatrix) -> list[Eigentriple]:
    """Full eigendecomposition of a Basic/Toeplitz matrix.

    Eigentriples come back sorted by decreasing eigenvalue with
    orthonormal real eigenvectors. The frequency field stays None; any
    frequency attribution happens downstream via periodograms.
    """
    if matrix.variant not in ("basic", "toeplitz"):
        raise VariantMismatch(
            f"symmetric_eigentriples needs a basic/toeplitz matrix, got {matrix.variant!r}"
        )
    try:
        vals, vecs = np.linalg.eigh(matrix.entries)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"symmetric eigensolver did not converge: {exc}") from exc
    order = np.argsort(vals)[::-1]
    return [
        Eigentriple(float(vals[b]), vecs[:, b].copy(), rank + 1)
        for rank, b in enumerate(order)
    ]


def periodogram(vector) -> Periodogram:
    """Periodogram on the grid j/n: powers[j] = |sum_t v_t e^{-i2pi jt/n}|^2 / n."""
    v = as_series(vector, name="vector")
    n = v.size
    if n < 2:
        raise InvalidParams(f"periodogram needs at least 2 points, got {n}")
    spec = np.fft.rfft(v)
    powers = (spec.real**2 + spec.imag**2) / n
    freqs = np.arange(powers.size) / n
    return Periodogram(freqs, powers)


def dominant_frequency(p: Periodogram) -> float:
    """Frequency of maximal power; exact ties resolve to the lowest frequency."""
    if p.powers.size == 0:
        raise InvalidParams("empty periodogram")
    return float(p.frequencies[int(np.argmax(p.powers))])
