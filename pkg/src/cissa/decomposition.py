"""The three decomposition pipelines producing named component series.

All pipelines share the same outer shape: embed the series, diagonalize a
second-moment matrix, split the trajectory matrix into per-eigentriple
(or per-frequency-bin) elementary pieces, route the pieces into named
groups, and diagonal-average each group back into a series. The groups
partition the eigentriple indices, so the named components always sum
back to the input series exactly, up to rounding.

The circulant pipeline knows each bin's frequency a priori; Basic and
Toeplitz assign each eigentriple to a band by the dominant frequency of
its eigenvector periodogram.

Reconstruction error otherwise concentrates in the first and last L - 1
points, where diagonal averaging spans fewer entries, so by default the
pipelines extend the series by L points at each end before embedding and
keep the central T points of every reconstruction. Additivity to the
original series is exact either way; pass ``extension=None`` to embed
the raw series.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .embedding import antidiagonal_counts, embed, extend_series
from .exceptions import EmptyGrouping, InvalidParams
from .grouping import FrequencyGroup, GroupingSpec, assign_bins, frequency_bins
from .moments import basic_matrix, circulant_matrix, toeplitz_matrix
from .spectral import (
    circulant_eigenvalues,
    dominant_frequency,
    fourier_eigenvectors,
    periodogram,
    symmetric_eigentriples,
)
from .validation import as_series, check_window

__all__ = [
    "Decomposition",
    "ElementarySeries",
    "cissa",
    "basic_ssa",
    "toeplitz_ssa",
    "cissa_elementary_series",
]


@dataclass
class Decomposition:
    """Named reconstructed components of one series.

    Attributes
    ----------
    series : ndarray
        The decomposed input, length T.
    components : dict of str to ndarray
        One length-T series per component name; their sum reproduces
        ``series`` to rounding precision.
    shares : dict of str to float
        Variance contribution of each component in percent, from the
        grouped eigenvalues (negative eigenvalues clamped to zero for
        this report only). Sums to 100 unless the series is null.
    variant : str
        "basic", "toeplitz" or "circulant".
    grouping : dict of str to tuple of int
        Realized 1-based eigentriple indices behind each component.
    window_length : int
    eigenvalue_spectrum : ndarray or None
        For the circulant variant, an (L, 2) array of (frequency,
        eigenvalue) pairs; None otherwise.
    """

    series: np.ndarray = field(repr=False)
    components: dict[str, np.ndarray] = field(repr=False)
    shares: dict[str, float]
    variant: str
    grouping: dict[str, tuple[int, ...]]
    window_length: int
    eigenvalue_spectrum: np.ndarray | None = field(repr=False, default=None)


@dataclass(frozen=True)
class ElementarySeries:
    """One reconstructed elementary series tied to a frequency bin.

    ``phase`` distinguishes the two real directions of a paired bin
    ("cos" for the real part of the Fourier eigenvector, "sin" for the
    imaginary part) and is empty for unpaired bins and for unsplit
    per-bin series.
    """

    bin: FrequencyGroup
    phase: str
    values: np.ndarray = field(repr=False)

    @property
    def label(self) -> str:
        tag = f"w={self.bin.center_frequency:.6g}"
        return f"{tag}:{self.phase}" if self.phase else tag


def _share_table(names, masses) -> dict[str, float]:
    clamped = {name: max(m, 0.0) for name, m in masses.items()}
    total = sum(clamped.values())
    if total <= 0.0:
        return {name: 0.0 for name in names}
    return {name: 100.0 * clamped[name] / total for name in names}


def _validated(series, window_length, grouping):
    x = as_series(series)
    L = check_window(x.size, window_length)
    if not isinstance(grouping, GroupingSpec):
        raise InvalidParams(
            f"grouping must be a GroupingSpec, got {type(grouping).__name__}"
        )
    return x, L


def _embedded(x: np.ndarray, L: int, extension: str | None):
    """Trajectory matrix, antidiagonal counts, and the slice of the
    reconstruction that maps back onto the original sample."""
    if extension is None:
        analyzed = x
        start = 0
    else:
        analyzed = extend_series(x, L, extension)
        start = L
    X = embed(analyzed, L)
    counts = antidiagonal_counts(L, X.shape[1])
    return analyzed, X, counts, slice(start, start + x.size)


def cissa(
    series,
    window_length: int,
    grouping: GroupingSpec,
    extension: str | None = "ar",
) -> Decomposition:
    """Circulant SSA: decompose by frequency bins routed into named bands.

    Every frequency bin (k - 1) / L gets one real elementary series from
    the projector of its conjugate eigenvector pair (factor 2) or of its
    single real eigenvector (zero-frequency and Nyquist bins). Elementary
    series whose bin center lies inside a named band sum into that
    component; leftover bins form the residual component.

    Parameters
    ----------
    series : array-like, shape (T,)
    window_length : int
        L with 1 < L < T/2. A multiple of the seasonal period makes the
        seasonal harmonics fall exactly on bins.
    grouping : GroupingSpec
    extension : {"ar", "mirror", None}
        Boundary treatment applied before embedding (see the module
        docstring); the default autoregressive extension keeps trends
        unbiased near the sample ends.

    Returns
    -------
    Decomposition
    """
    x, L = _validated(series, window_length, grouping)
    analyzed, X, counts, window = _embedded(x, L, extension)
    vals = circulant_eigenvalues(circulant_matrix(analyzed, L).entries[0])
    U = fourier_eigenvectors(L)

    assignment = assign_bins(grouping, L)
    components: dict[str, np.ndarray] = {}
    masses: dict[str, float] = {}
    indices: dict[str, tuple[int, ...]] = {}
    for name, bins in assignment.items():
        total = np.zeros(counts.size)
        mass = 0.0
        for fbin in bins:
            k = fbin.indices[0]
            u = U[:, k - 1]
            pc = u.conj() @ X
            factor = 2.0 if len(fbin.indices) == 2 else 1.0
            total += factor * np.convolve(u, pc).real / counts
            mass += float(sum(vals[i - 1] for i in fbin.indices))
        components[name] = total[window]
        masses[name] = mass
        indices[name] = tuple(sorted(i for fbin in bins for i in fbin.indices))

    spectrum = np.column_stack([np.arange(L) / L, vals])
    return Decomposition(
        series=x,
        components=components,
        shares=_share_table(components, masses),
        variant="circulant",
        grouping=indices,
        window_length=L,
        eigenvalue_spectrum=spectrum,
    )


def cissa_elementary_series(
    series,
    window_length: int,
    split_pairs: bool = False,
    extension: str | None = "ar",
) -> list[ElementarySeries]:
    """Per-bin elementary series of the circulant decomposition.

    With ``split_pairs=False`` each frequency bin yields one series (the
    same pieces ``cissa`` sums into components). With
    ``split_pairs=True`` every paired bin is split into its two real
    directions, the "cos" and "sin" series, which sum to the bin series;
    this is the granularity at which separability diagnostics look at a
    decomposition.
    """
    x = as_series(series)
    L = check_window(x.size, window_length)
    _, X, counts, window = _embedded(x, L, extension)
    U = fourier_eigenvectors(L)
    out: list[ElementarySeries] = []
    for fbin in frequency_bins(L):
        k = fbin.indices[0]
        u = U[:, k - 1]
        if len(fbin.indices) == 1:
            r = u.real
            values = (np.convolve(r, r @ X) / counts)[window]
            out.append(ElementarySeries(fbin, "", values))
        elif split_pairs:
            for phase, v in (("cos", u.real), ("sin", u.imag)):
                values = (2.0 * np.convolve(v, v @ X) / counts)[window]
                out.append(ElementarySeries(fbin, phase, values))
        else:
            pc = u.conj() @ X
            values = (2.0 * np.convolve(u, pc).real / counts)[window]
            out.append(ElementarySeries(fbin, "", values))
    return out


def _frequency_of(triple, X, source: str) -> float:
    if source == "eigenvector":
        return dominant_frequency(periodogram(triple.eigenvector))
    if source == "pc":
        return dominant_frequency(periodogram(triple.eigenvector @ X))
    raise InvalidParams(
        f"frequency_source must be 'eigenvector' or 'pc', got {source!r}"
    )


def _symmetric_pipeline(
    series, window_length, grouping, frequency_source, matrix_builder, variant,
    extension,
) -> Decomposition:
    x, L = _validated(series, window_length, grouping)
    analyzed, X, counts, window = _embedded(x, L, extension)
    triples = symmetric_eigentriples(matrix_builder(analyzed, L))

    names = grouping.component_names()
    components = {name: np.zeros(counts.size) for name in names}
    masses = {name: 0.0 for name in names}
    indices: dict[str, list[int]] = {name: [] for name in names}
    for triple in triples:
        f = _frequency_of(triple, X, frequency_source)
        name = grouping.locate(f)
        if name is None:
            if not grouping.residual_name:
                raise EmptyGrouping(
                    f"eigentriple {triple.component_index} (dominant frequency "
                    f"{f:g}) matches no band and the grouping names no residual"
                )
            name = grouping.residual_name
        u = triple.eigenvector
        components[name] += np.convolve(u, u @ X) / counts
        masses[name] += triple.eigenvalue
        indices[name].append(triple.component_index)

    return Decomposition(
        series=x,
        components={name: values[window] for name, values in components.items()},
        shares=_share_table(components, masses),
        variant=variant,
        grouping={name: tuple(sorted(ks)) for name, ks in indices.items()},
        window_length=L,
    )


def basic_ssa(
    series,
    window_length: int,
    grouping: GroupingSpec,
    frequency_source: str = "eigenvector",
    extension: str | None = "ar",
) -> Decomposition:
    """Basic SSA with periodogram-based frequency assignment.

    Eigentriples of S = XX'/N (all L of them, none truncated) are routed
    to the band containing the dominant frequency of their eigenvector
    periodogram; ``frequency_source="pc"`` switches the assignment
    statistic to the principal-component row, an experimental variant
    that is off by default.
    """
    return _symmetric_pipeline(
        series, window_length, grouping, frequency_source, basic_matrix, "basic",
        extension,
    )


def toeplitz_ssa(
    series,
    window_length: int,
    grouping: GroupingSpec,
    frequency_source: str = "eigenvector",
    extension: str | None = "ar",
) -> Decomposition:
    """Toeplitz SSA: like ``basic_ssa`` but on the autocovariance matrix."""
    return _symmetric_pipeline(
        series, window_length, grouping, frequency_source, toeplitz_matrix, "toeplitz",
        extension,
    )
