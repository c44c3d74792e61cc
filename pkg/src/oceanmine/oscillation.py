"""Oscillation index over decoded profile records.

The index condenses one (temperature, salinity, pressure) record into
a single dimensionless value:

    N = 1.3247
        - 2.5e-6 * T^2
        + S * (2e-4 - 8e-7 * T)
        + 3300 / P^2
        - 3.2e7 / P^4

with T in degC, S in PSU, P in dbar, evaluated in double precision.
The pressure terms diverge as P approaches zero, so evaluation is
guarded by a configurable pressure floor; records at or below the
floor are not representable on the index scale.

The banding helpers summarise a series into an expected envelope:
split the series into consecutive windows, average the per-window
minima and maxima.  Values that escape the envelope are what the
advisory stage flags.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from typing import NamedTuple, Sequence

from .errors import AllSamplesRejected, ConfigError, DivergentIndex, SeriesTooShort
from .regions import RegionSegment

BASE = 1.3247
T2_COEFF = -2.5e-6
S_COEFF = 2.0e-4
ST_COEFF = -8.0e-7
P2_COEFF = 3300.0
P4_COEFF = 3.2e7

DEFAULT_PRESSURE_FLOOR = 0.5
DEFAULT_WINDOW_LEN = 10


class IndexSample(NamedTuple):
    observed_at: datetime
    n_value: float


@dataclass(frozen=True)
class IndexBand:
    """Expected envelope of a series: averaged window extrema."""

    avg_min: float
    avg_max: float
    window_len: int


class SeriesResult(NamedTuple):
    samples: list[IndexSample]
    skipped: int


def compute_index(
    temperature: float,
    salinity: float,
    pressure: float,
    pressure_floor: float = DEFAULT_PRESSURE_FLOOR,
) -> float:
    """Evaluate the index for one record.

    Raises DivergentIndex when pressure is at or below the floor.
    """
    if pressure_floor <= 0:
        raise ConfigError(f"pressure floor must be positive, got {pressure_floor}")
    if pressure <= pressure_floor:
        raise DivergentIndex(
            f"pressure {pressure} dbar at or below floor {pressure_floor}"
        )
    p2 = pressure * pressure
    return (
        BASE
        + T2_COEFF * temperature * temperature
        + salinity * (S_COEFF + ST_COEFF * temperature)
        + P2_COEFF / p2
        - P4_COEFF / (p2 * p2)
    )


def d_index_d_temperature(temperature: float, salinity: float) -> float:
    """Analytic partial derivative of the index in temperature."""
    return 2.0 * T2_COEFF * temperature + ST_COEFF * salinity


def compute_series(
    seg: RegionSegment,
    pressure_floor: float = DEFAULT_PRESSURE_FLOOR,
) -> SeriesResult:
    """Index every record of a segment that clears the pressure floor.

    Records at or below the floor are skipped and tallied, not errors.
    Raises AllSamplesRejected when nothing survives.
    """
    samples: list[IndexSample] = []
    skipped = 0
    for rec in seg.records:
        if rec.pressure <= pressure_floor:
            skipped += 1
            continue
        samples.append(
            IndexSample(
                observed_at=rec.observed_at,
                n_value=compute_index(
                    rec.temperature, rec.salinity, rec.pressure, pressure_floor
                ),
            )
        )
    if not samples:
        raise AllSamplesRejected(
            f"region {seg.key}: all {skipped} records at or below "
            f"pressure floor {pressure_floor}"
        )
    return SeriesResult(samples=samples, skipped=skipped)


def band_of(values: Sequence[float], window_len: int = DEFAULT_WINDOW_LEN) -> IndexBand:
    """Average the per-window extrema of a series.

    Windows are consecutive runs of window_len values; a final partial
    window counts like any other.  Raises SeriesTooShort on an empty
    series and ConfigError on a non-positive window length.
    """
    if window_len < 1:
        raise ConfigError(f"window length must be >= 1, got {window_len}")
    if len(values) < 1:
        raise SeriesTooShort("cannot band an empty series")
    minima = []
    maxima = []
    for i in range(0, len(values), window_len):
        window = values[i : i + window_len]
        minima.append(min(window))
        maxima.append(max(window))
    return IndexBand(
        avg_min=sum(minima) / len(minima),
        avg_max=sum(maxima) / len(maxima),
        window_len=window_len,
    )
