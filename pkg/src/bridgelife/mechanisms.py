"""Sulfate attack, freeze-thaw and alkali-silica reaction life models."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import DegenerateInputWarning, DomainError
from .units import SECONDS_PER_YEAR

ASR_LIMIT_RATING = 5.0
ASR_MAX_RATING = 6.0


@dataclass(frozen=True)
class SulfateParams:
    c0: float  # sulfate in solution, mol/m3
    C_E: float  # sulfate reacted as ettringite, mol/m3
    D_i: float  # sulfate diffusion coefficient, m2/s
    E: float = 20e9  # Pa
    B: float = 1.8e-6  # m3/mol
    alpha_rough: float = 1.0
    gamma: float = 10.0  # J/m2
    nu: float = 0.2

    def __post_init__(self):
        if min(self.c0, self.C_E, self.D_i) < 0:
            raise DomainError("concentrations and diffusivity must be non-negative")
        if min(self.E, self.B, self.alpha_rough, self.gamma) <= 0:
            raise DomainError("E, B, roughness and fracture energy must be positive")
        if not 0 <= self.nu < 0.5:
            raise DomainError("Poisson ratio must lie in [0, 0.5)")


def sulfate_rate(p: SulfateParams) -> float:
    """Spalling rate of the attacked layer in m/s."""
    return p.E * p.B**2 * p.c0 * p.C_E * p.D_i / (p.alpha_rough * p.gamma * (1.0 - p.nu))


def sulfate_rate_mm_per_year(p: SulfateParams) -> float:
    return sulfate_rate(p) * 1e3 * SECONDS_PER_YEAR


@dataclass(frozen=True)
class FreezeThawParams:
    """Inputs of the Shuman annual degradation model."""

    N: float  # field cycles per year
    T_c: float  # laboratory cycles to 50% modulus loss
    theta: float  # water content
    T_r: float  # unsaturated pore content


def freeze_thaw_life(C_eq: float, N_indoor: float, N_annual: float) -> float:
    """Field service life in years from laboratory cycles survived."""
    if not N_annual > 0:
        raise DomainError("annual cycle count must be positive")
    if N_indoor < 0 or C_eq < 0:
        raise DomainError("C_eq and N_indoor must be non-negative")
    return C_eq * N_indoor / N_annual


def freeze_thaw_degradation_shuman(p: FreezeThawParams) -> float:
    """Annual fractional degradation, clamped at 0 with a warning when negative."""
    if not (p.theta > 0 and p.T_c > 0):
        raise DomainError("theta and T_c must be positive")
    r = (p.N / p.T_c) * (0.05 / math.sqrt(p.theta) - 0.21 * p.T_r)
    if r < 0:
        warnings.warn("negative degradation rate clamped to 0", DegenerateInputWarning, stacklevel=2)
        return 0.0
    return r


@dataclass(frozen=True)
class AsrObservation:
    """Core rating on the 0..6 scale (0 none) with placement and coring dates in years."""

    rating: float
    t0: float
    tt: float

    def __post_init__(self):
        if not 0 <= self.rating <= ASR_MAX_RATING:
            raise DomainError("ASR rating must lie in [0, 6]")
        if not self.tt > self.t0:
            raise DomainError("coring date must follow placement")


def asr_rate(o: AsrObservation) -> float:
    """Rating points per year."""
    return o.rating / (o.tt - o.t0)


def asr_years_remaining(o: AsrObservation) -> float:
    """Years until the rating reaches 5; ``math.inf`` when no reaction is observed."""
    if o.rating >= ASR_LIMIT_RATING:
        return 0.0
    rate = asr_rate(o)
    if rate == 0:
        return math.inf
    return (ASR_LIMIT_RATING - o.rating) / rate
