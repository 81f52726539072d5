import numpy as np
import pytest
from numpy.testing import assert_allclose

from cissa.exceptions import InvalidParams
from cissa.moments import basic_matrix, circulant_matrix, toeplitz_matrix
from cissa.spectral import (
    circulant_eigentriples,
    circulant_eigenvalues,
    dominant_frequency,
    fourier_eigenvectors,
    periodogram,
    symmetric_eigentriples,
)


def test_circulant_eigenvalues_closed_form():
    """Eigenvalues of a 4 x 4 symmetric circulant, worked by hand.

    First row (1, .65, .5, .65) gives lambda_k = sum_m c_m cos(2 pi m k / 4),
    i.e. (2.8, 0.5, 0.2, 0.5): the full sum, then 1 - .5, then the
    alternating sum.
    """
    vals = circulant_eigenvalues(np.array([1.0, 0.65, 0.5, 0.65]))
    assert_allclose(vals, [2.8, 0.5, 0.2, 0.5], rtol=0, atol=1e-14)


@pytest.mark.parametrize("L", [4, 11, 26, 97])
def test_fft_and_direct_paths_agree(L):
    rng = np.random.default_rng(L)
    c = rng.normal(size=L)
    c[1:] = (c[1:] + c[1:][::-1]) / 2.0
    assert_allclose(
        circulant_eigenvalues(c, method="fft"),
        circulant_eigenvalues(c, method="direct"),
        rtol=0,
        atol=1e-10,
    )


def test_eigenvalue_pairing():
    rng = np.random.default_rng(7)
    x = rng.normal(size=300)
    vals = circulant_eigenvalues(circulant_matrix(x, 12).entries[0])
    for k in range(1, 12):
        assert vals[k] == pytest.approx(vals[12 - k], rel=0, abs=1e-12)


def test_fourier_eigenvectors_are_orthonormal():
    U = fourier_eigenvectors(9)
    assert_allclose(U.conj().T @ U, np.eye(9), rtol=0, atol=1e-12)
    # columns k and L - k are conjugate
    for k in range(1, 9):
        assert_allclose(U[:, k].conj(), U[:, 9 - k], rtol=0, atol=1e-12)


def test_circulant_eigentriples_satisfy_eigen_identity():
    rng = np.random.default_rng(8)
    x = rng.normal(size=200)
    M = circulant_matrix(x, 16)
    trips = circulant_eigentriples(M)
    U = fourier_eigenvectors(16)
    assert [t.component_index for t in trips] == list(range(1, 17))
    assert_allclose([t.frequency for t in trips], np.arange(16) / 16)
    lam = np.array([t.eigenvalue for t in trips])
    assert_allclose(M.entries @ U, U * lam, rtol=0, atol=1e-12)


@pytest.mark.parametrize("builder", [basic_matrix, toeplitz_matrix])
def test_symmetric_eigentriples(builder):
    rng = np.random.default_rng(9)
    x = rng.normal(size=150)
    M = builder(x, 10)
    trips = symmetric_eigentriples(M)
    vals = np.array([t.eigenvalue for t in trips])
    assert np.all(np.diff(vals) <= 1e-12)
    V = np.column_stack([t.eigenvector for t in trips])
    assert_allclose(V.T @ V, np.eye(10), rtol=0, atol=1e-10)
    assert_allclose(M.entries @ V, V * vals, rtol=0, atol=1e-10)
    assert all(t.frequency is None for t in trips)


def test_periodogram_of_a_pure_tone():
    # a cosine at an exact grid frequency puts all off-mean power there
    n, j = 64, 5
    t = np.arange(n)
    p = periodogram(np.cos(2 * np.pi * j * t / n))
    assert dominant_frequency(p) == pytest.approx(j / n)
    others = np.delete(p.powers, j)
    assert others.max() < 1e-20 * p.powers[j]


def test_periodogram_parseval():
    rng = np.random.default_rng(10)
    v = rng.normal(size=33)
    p = periodogram(v)
    # rfft halves the spectrum: double the interior bins to recover energy
    doubled = p.powers.copy()
    doubled[1:] *= 2.0
    if v.size % 2 == 0:
        doubled[-1] /= 2.0
    assert doubled.sum() == pytest.approx(np.sum(v**2), rel=1e-10)


def test_periodogram_needs_two_points():
    with pytest.raises(InvalidParams):
        periodogram([1.0])


def test_dominant_frequency_tie_breaks_low():
    p = periodogram(np.zeros(16))
    assert dominant_frequency(p) == 0.0
