"""Conversion of NDT and laboratory measurements into model inputs."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, MeasurementInconsistentError


@dataclass(frozen=True)
class ResistivityMeasurement:
    R: float  # ohm
    A: float  # cm2
    L: float  # cm


@dataclass(frozen=True)
class RcmTestRecord:
    """Rapid chloride migration test (NT Build 492 style)."""

    U: float  # applied voltage, V
    T: float  # mean anolyte temperature, degC
    L: float  # specimen thickness, mm
    x_d: float  # mean penetration depth, mm
    t: float  # test duration, h


PENETRATION_CLASSES = ("Low", "Moderate", "High", "Very high", "Extremely high")

CLEAR_BANDS = (
    "no corrosion damage",
    "10 to 15 years",
    "2 to 10 years",
    "less than 2 years",
)


def resistivity(m: ResistivityMeasurement) -> float:
    """Bulk resistivity in ohm*cm from a two-plate measurement."""
    if not (m.R > 0 and m.A > 0 and m.L > 0):
        raise DomainError("R, A and L must all be positive")
    return m.R * m.A / m.L


def icorr_from_resistivity(rho: float) -> float:
    """Corrosion current density (uA/cm2) from resistivity in ohm*cm."""
    if not rho > 0:
        raise DomainError("resistivity must be positive")
    return 3e3 / rho


def icorr_from_lpr(B: float, Rp: float) -> float:
    """Corrosion current from linear polarization resistance, ``B / Rp``.

    Unit-agnostic: the result carries units(B)/units(Rp).
    """
    if not B > 0:
        raise DomainError("B must be positive")
    if not Rp > 0:
        raise DomainError("polarization resistance must be positive")
    return B / Rp


def rcm_coefficient(r: RcmTestRecord) -> float:
    """Non-steady-state migration coefficient in 1e-12 m2/s."""
    if not r.U > 2:
        raise DomainError("applied voltage must exceed 2 V")
    if not r.t > 0:
        raise DomainError("test duration must be positive")
    if not 0 < r.x_d <= r.L:
        raise DomainError("penetration depth must lie in (0, L]")
    absT = 273.0 + r.T
    inner = r.x_d - 0.0238 * math.sqrt(absT * r.L * r.x_d / (r.U - 2.0))
    d = 0.0239 * absT * r.L / ((r.U - 2.0) * r.t) * inner
    if d < 0:
        raise MeasurementInconsistentError(
            f"migration coefficient would be negative ({d:.4g}); penetration depth too small"
        )
    return d


def classify_penetration(d_nssm: float) -> str:
    """Resistance to chloride penetration for a migration coefficient.

    Boundary values fall in the lower-resistance (larger coefficient) class.
    """
    if d_nssm < 0:
        raise DomainError("migration coefficient must be non-negative")
    if d_nssm >= 15:
        return "Low"
    if d_nssm >= 10:
        return "Moderate"
    if d_nssm >= 5:
        return "High"
    if d_nssm >= 2.5:
        return "Very high"
    return "Extremely high"


def classify_clear(i_corr: float) -> str:
    """Remaining-life band for a corrosion rate in uA/cm2.

    Band edges 0.5, 2.7 and 27 go to the more severe band.
    """
    if i_corr < 0:
        raise DomainError("corrosion rate must be non-negative")
    if i_corr < 0.5:
        return CLEAR_BANDS[0]
    if i_corr < 2.7:
        return CLEAR_BANDS[1]
    if i_corr < 27:
        return CLEAR_BANDS[2]
    return CLEAR_BANDS[3]


def sampling_plan(L: float) -> tuple[int, int]:
    """Counts of apparent-diffusion samples and cover readings for a deck.

    Parameters
    ----------
    L : float
        Deck length in feet.

    Returns
    -------
    (n_dca, n_cover) : tuple of int
        Rounded up, and never below the base counts 20 and 40.
    """
    if not L > 0:
        raise DomainError("deck length must be positive")
    # round before ceil so exact integers are not bumped by float noise
    n_dca = math.ceil(round(20 + (L - 150) / 7, 9))
    n_cover = math.ceil(round(40 + (L - 20) / 3, 9))
    return max(n_dca, 20), max(n_cover, 40)


def radiographic_unsharpness(l2: float, ld_ratio: float) -> float:
    """Geometric unsharpness (mm) for object-detector distance ``l2`` and collimation L/D."""
    if not ld_ratio > 0:
        raise DomainError("collimation ratio must be positive")
    if l2 < 0:
        raise DomainError("distance must be non-negative")
    return l2 / ld_ratio
