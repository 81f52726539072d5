"""Frequency bins, named band specifications, and bin-to-band assignment.

A window length L fixes a grid of frequency bins (k - 1) / L. Bins pair
up by conjugacy: bin k and bin L + 2 - k carry the same frequency, with
the zero-frequency bin (and the Nyquist bin when L is even) standing
alone. A ``GroupingSpec`` names frequency intervals; each bin lands in
the band containing its center frequency, endpoints inclusive, with the
lower band winning an exact endpoint collision. Bins matching no band
fall into the residual component.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import EmptyGrouping, InvalidParams, NotMonthlyCompatible

__all__ = [
    "FrequencyGroup",
    "Band",
    "GroupingSpec",
    "frequency_bins",
    "assign_bins",
    "default_monthly_grouping",
    "parse_bands",
    "format_bands",
]


@dataclass(frozen=True)
class FrequencyGroup:
    """One frequency bin: its eigentriple indices and center frequency.

    ``indices`` holds 1-based eigentriple numbers: {k, L + 2 - k} for a
    paired bin, {1} for the zero-frequency bin, {L/2 + 1} for the
    Nyquist bin of an even L. ``kind`` is "zero", "paired" or "nyquist".
    """

    indices: tuple[int, ...]
    center_frequency: float
    kind: str


@dataclass(frozen=True)
class Band:
    """A named closed frequency interval [low, high] within [0, 1/2]."""

    name: str
    low: float
    high: float

    def __post_init__(self):
        if not self.name:
            raise InvalidParams("band name must be a nonempty string")
        if not (0.0 <= self.low <= self.high <= 0.5):
            raise InvalidParams(
                f"band {self.name!r} needs 0 <= low <= high <= 1/2, "
                f"got [{self.low}, {self.high}]"
            )

    def contains(self, frequency: float) -> bool:
        return self.low <= frequency <= self.high


@dataclass(frozen=True)
class GroupingSpec:
    """Named frequency bands plus the name of the catch-all residual.

    Several bands may share a name (e.g. one "seasonal" component built
    from six exact harmonic frequencies); their bins merge into a single
    component. Distinct bands must not overlap in their interiors.
    """

    bands: tuple[Band, ...]
    residual_name: str | None = "irregular"

    def __post_init__(self):
        object.__setattr__(self, "bands", tuple(self.bands))
        if not self.bands and not self.residual_name:
            raise EmptyGrouping("a grouping needs at least one band or a residual name")
        ordered = sorted(self.bands, key=lambda b: (b.low, b.high))
        for a, b in zip(ordered, ordered[1:]):
            if b.low < a.high or (b.low == a.high and a.low < a.high and b.low < b.high):
                raise InvalidParams(
                    f"bands {a.name!r} [{a.low}, {a.high}] and "
                    f"{b.name!r} [{b.low}, {b.high}] overlap"
                )

    def component_names(self) -> list[str]:
        """Band names in first-appearance order, residual last."""
        names: list[str] = []
        for band in self.bands:
            if band.name not in names:
                names.append(band.name)
        if self.residual_name and self.residual_name not in names:
            names.append(self.residual_name)
        return names

    def locate(self, frequency: float) -> str | None:
        """Name of the band holding ``frequency``; lowest band wins ties."""
        hits = [b for b in self.bands if b.contains(frequency)]
        if not hits:
            return None
        return min(hits, key=lambda b: (b.low, b.high)).name


def frequency_bins(window_length: int) -> list[FrequencyGroup]:
    """All frequency bins of a window length L, in increasing frequency.

    The eigentriple index sets partition {1..L}: the zero bin is {1},
    bin k pairs with L + 2 - k, and an even L adds the singleton Nyquist
    bin {L/2 + 1} at frequency 1/2.
    """
    L = int(window_length)
    if L < 2:
        raise InvalidParams(f"window_length must be at least 2, got {L}")
    bins = [FrequencyGroup((1,), 0.0, "zero")]
    for k in range(2, L // 2 + 2):
        partner = L + 2 - k
        if partner == k:
            bins.append(FrequencyGroup((k,), 0.5, "nyquist"))
        elif partner > k:
            bins.append(FrequencyGroup((k, partner), (k - 1) / L, "paired"))
    return bins


def assign_bins(
    grouping: GroupingSpec, window_length: int
) -> dict[str, list[FrequencyGroup]]:
    """Map component names to the frequency bins they collect.

    Every requested component name appears in the result (possibly with
    an empty bin list), and every bin of the window appears exactly once
    across the values, so downstream reconstructions stay additive.
    """
    assignment: dict[str, list[FrequencyGroup]] = {
        name: [] for name in grouping.component_names()
    }
    leftovers: list[FrequencyGroup] = []
    for fbin in frequency_bins(window_length):
        name = grouping.locate(fbin.center_frequency)
        if name is None:
            leftovers.append(fbin)
        else:
            assignment[name].append(fbin)
    if leftovers:
        if not grouping.residual_name:
            raise EmptyGrouping(
                "bins left over but the grouping names no residual component: "
                + ", ".join(f"{b.center_frequency:g}" for b in leftovers)
            )
        assignment[grouping.residual_name].extend(leftovers)
    return assignment


# The six exact monthly harmonic frequencies j/12 for j = 1..6.
MONTHLY_SEASONAL_FREQUENCIES = tuple(Fraction(j, 12) for j in range(1, 7))


def default_monthly_grouping(
    window_length: int, cycle_period_range: tuple[float, float] = (18, 96)
) -> GroupingSpec:
    """Standard trend/cycle/seasonal/irregular bands for monthly data.

    The cycle band spans periods of ``cycle_period_range`` months
    (default 18 to 96, i.e. frequencies [1/96, 1/18]). Every bin at a
    lower frequency than the cycle band belongs to the trend, so the
    trend band runs from 0 up to the last representable bin below the
    cycle's low edge. The seasonal component collects the six exact
    harmonic frequencies 1/12 .. 1/2, and everything unassigned is
    "irregular". Requires L to be a multiple of 12 so the harmonics sit
    exactly on bins.
    """
    L = int(window_length)
    if L < 12 or L % 12:
        raise NotMonthlyCompatible(
            f"window_length must be a positive multiple of 12, got {window_length}"
        )
    p_lo, p_hi = cycle_period_range
    if not (2 < p_lo < p_hi):
        raise InvalidParams(
            f"cycle_period_range must satisfy 2 < low < high, got {cycle_period_range}"
        )
    cycle_lo = 1.0 / p_hi
    cycle_hi = 1.0 / p_lo
    # The trend takes every bin at a lower frequency than the cycle band.
    # Bins sit at b / L, so find the largest b with b / L < cycle_lo under
    # the same float comparisons that decide band membership later.
    b = min(math.floor(L * cycle_lo), L // 2)
    while b > 0 and b / L >= cycle_lo:
        b -= 1
    while (b + 1) / L < cycle_lo:
        b += 1
    bands = [Band("trend", 0.0, b / L), Band("cycle", cycle_lo, cycle_hi)]
    for f in MONTHLY_SEASONAL_FREQUENCIES:
        w = float(f)
        if w > cycle_hi:
            bands.append(Band("seasonal", w, w))
    return GroupingSpec(tuple(bands), residual_name="irregular")


def _parse_frequency(text: str) -> float:
    text = text.strip()
    try:
        if "/" in text:
            return float(Fraction(text))
        return float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidParams(f"cannot parse frequency {text!r}") from exc


def parse_bands(text: str, residual_name: str = "irregular") -> GroupingSpec:
    """Parse the inline band grammar "name=lo:hi;name=lo:hi;...".

    A single frequency ("seasonal=1/12") is shorthand for a degenerate
    interval. Frequencies may be decimals or fractions. Entries are
    separated by ";" or newlines, and blank entries are ignored, so the
    same grammar works one-per-line in a bands file.
    """
    bands: list[Band] = []
    for raw in text.replace("\n", ";").split(";"):
        entry = raw.strip()
        if not entry or entry.startswith("#"):
            continue
        if "=" not in entry:
            raise InvalidParams(f"band entry {entry!r} is not of the form name=lo:hi")
        name, _, span = entry.partition("=")
        lo, sep, hi = span.partition(":")
        low = _parse_frequency(lo)
        high = _parse_frequency(hi) if sep else low
        bands.append(Band(name.strip(), low, high))
    if not bands:
        raise InvalidParams("no bands found in the band specification")
    return GroupingSpec(tuple(bands), residual_name=residual_name)


def format_bands(grouping: GroupingSpec) -> str:
    """Inverse of ``parse_bands`` (without the residual name)."""
    return ";".join(f"{b.name}={b.low:.17g}:{b.high:.17g}" for b in grouping.bands)
