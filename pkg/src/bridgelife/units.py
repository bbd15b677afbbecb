"""Canonical units, NBI condition vocabulary and shared result records.

Every model module takes its inputs in the canonical units below and
converts internally where a formula needs something else.

========================  ==============
dimension                 canonical unit
========================  ==============
length, cover, diameter   mm
time                      yr (365 d)
current density           uA/cm2
chloride concentration    kg/m3
diffusion coefficient     cm2/s
stress                    ksi
temperature               degC
========================  ==============
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Mapping

from .errors import DomainError

SECONDS_PER_YEAR = 3.1536e7

_LB = 0.45359237  # kg
_FT = 0.3048  # m
_FT2_CM2 = 929.0304
_KSI_MPA = 6.894757293168361

# factor that converts one unit into the canonical unit of its dimension
_UNITS: dict[str, tuple[str, float]] = {
    # length -> mm
    "mm": ("length", 1.0),
    "cm": ("length", 10.0),
    "m": ("length", 1000.0),
    "um": ("length", 1e-3),
    "in": ("length", 25.4),
    "ft": ("length", 304.8),
    "mil": ("length", 0.0254),
    # time -> yr
    "yr": ("time", 1.0),
    "day": ("time", 1.0 / 365.0),
    "h": ("time", 1.0 / 8760.0),
    "s": ("time", 1.0 / SECONDS_PER_YEAR),
    # area -> mm2
    "mm2": ("area", 1.0),
    "cm2": ("area", 100.0),
    "m2": ("area", 1e6),
    "in2": ("area", 645.16),
    "ft2": ("area", 92903.04),
    # current density -> uA/cm2
    "uA/cm2": ("current_density", 1.0),
    "mA/ft2": ("current_density", 1000.0 / _FT2_CM2),
    "A/m2": ("current_density", 100.0),
    # concentration -> kg/m3
    "kg/m3": ("concentration", 1.0),
    "lb/yd3": ("concentration", _LB / (3 * _FT) ** 3),
    "lb/ft3": ("concentration", _LB / _FT**3),
    "g/cm3": ("concentration", 1000.0),
    # diffusion -> cm2/s
    "cm2/s": ("diffusion", 1.0),
    "m2/s": ("diffusion", 1e4),
    "mm2/s": ("diffusion", 1e-2),
    "mm2/yr": ("diffusion", 1e-2 / SECONDS_PER_YEAR),
    "in2/yr": ("diffusion", 6.4516 / SECONDS_PER_YEAR),
    # stress -> ksi
    "ksi": ("stress", 1.0),
    "psi": ("stress", 1e-3),
    "MPa": ("stress", 1.0 / _KSI_MPA),
    "Pa": ("stress", 1e-6 / _KSI_MPA),
    # mass -> kg
    "kg": ("mass", 1.0),
    "g": ("mass", 1e-3),
    "mg": ("mass", 1e-6),
    "lb": ("mass", _LB),
    # temperature -> degC (only the identity; offsets are not linear)
    "degC": ("temperature", 1.0),
}

CONDITION_LABELS = {
    9: "EXCELLENT",
    8: "VERY GOOD",
    7: "GOOD",
    6: "SATISFACTORY",
    5: "FAIR",
    4: "POOR",
    3: "SERIOUS",
    2: "CRITICAL",
    1: "IMMINENT FAILURE",
    0: "FAILED",
}


def dimension(unit: str) -> str:
    try:
        return _UNITS[unit][0]
    except KeyError:
        raise DomainError(f"unknown unit {unit!r}") from None


def convert(value: float, from_unit: str, to_unit: str) -> float:
    """Convert ``value`` between two units of the same dimension.

    Raises
    ------
    DomainError
        If either unit is unknown or the dimensions differ.
    """
    dim_a, fa = _UNITS.get(from_unit, (None, None))
    dim_b, fb = _UNITS.get(to_unit, (None, None))
    if dim_a is None or dim_b is None:
        raise DomainError(f"unknown unit in {from_unit!r} -> {to_unit!r}")
    if dim_a != dim_b:
        raise DomainError(f"cannot convert {dim_a} ({from_unit}) to {dim_b} ({to_unit})")
    if from_unit == to_unit:
        return value
    return value * fa / fb


def check_rating(r: int) -> int:
    if isinstance(r, bool) or int(r) != r or not 0 <= r <= 9:
        raise DomainError(f"condition rating must be an integer in 0..9, got {r!r}")
    return int(r)


def rating_label(r: int) -> str:
    """NBI condition text for a 0..9 rating."""
    return CONDITION_LABELS[check_rating(r)]


def remaining_life(T: float, t: float) -> float:
    """Remaining life ``T - t`` in years; negative means the life has expired."""
    return T - t


@dataclass(frozen=True)
class ServiceLifeBreakdown:
    """Staged service-life prediction in years.

    ``total`` is ``None`` when a stage never occurs (``no-initiation`` and
    similar flags); otherwise it is ``t1 + t2 + t3``.
    """

    t1: float
    t2: float
    t3: float
    total: float | None
    model_ids: Mapping[str, str] = field(default_factory=dict)
    flags: tuple[str, ...] = ()
    units: str = "yr"

    @classmethod
    def compose(cls, t1, t2, t3, model_ids=None, flags=()):
        stages = (t1, t2, t3)
        if any(s < 0 for s in stages):
            raise DomainError(f"negative stage duration in {stages}")
        total = t1 + t2 + t3 if all(math.isfinite(s) for s in stages) else None
        return cls(t1, t2, t3, total, dict(model_ids or {}), tuple(flags))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["model_ids"] = dict(self.model_ids)
        d["flags"] = list(self.flags)
        for key in ("t1", "t2", "t3", "total"):
            if d[key] is not None and not math.isfinite(d[key]):
                d[key] = None
        return d


@dataclass(frozen=True)
class BridgeRecord:
    """One inventory row: a structure at one inspection year."""

    structure_id: str
    inspection_year: int
    district: str
    county: str
    year_built: int
    aadt: float
    design_load: str
    span_type: str
    skew: float
    structure_length: float  # ft
    deck_width: float  # ft
    ratings: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.inspection_year < self.year_built:
            raise DomainError("inspection_year precedes year_built")
        if not (self.structure_length > 0 and self.deck_width > 0):
            raise DomainError("structure length and deck width must be positive")
        if self.aadt < 0:
            raise DomainError("AADT must be non-negative")
        for k, v in self.ratings.items():
            check_rating(v)

    @property
    def age(self) -> int:
        return self.inspection_year - self.year_built
