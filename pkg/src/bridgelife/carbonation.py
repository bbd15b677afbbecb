"""Carbonation-induced corrosion: depth and time models, propagation, total life.

Depths are in mm unless a function says otherwise. The Papadakis functions
work in SI (m, s) and :func:`z_carb` uses a 365.25-day year
(``SECONDS_PER_JULIAN_YEAR``), unlike the 365-day year used elsewhere.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import DegenerateInputWarning, DomainError, ModelInconsistentError

SECONDS_PER_JULIAN_YEAR = 31_557_600.0

# concrete grade -> permeability coefficient k (mm / sqrt(yr))
IAEA_PERMEABILITY = {15: 17.0, 20: 10.0, 25: 6.0, 30: 5.0, 35: 4.0, 40: 3.5}

# surface finish -> (beta indoor, beta outdoor); None where no value is published
FINISH_BETA = {
    "No Layer": (1.7, 1.0),
    "Plaster": (0.79, None),
    "Mortar + Plaster": (0.41, None),
    "Mortar": (0.29, 0.28),
    "Mortar + Paint": (0.15, None),
    "Tiles": (0.21, 0.07),
    "Paint": (0.57, 0.8),
}
ALPHA_INDOOR = 1.7
ALPHA_OUTDOOR = 1.0


@dataclass(frozen=True)
class CarbonationEnvironment:
    CO2: float  # percent by volume
    RH: float  # percent
    cover: float = 0.0  # mm

    def __post_init__(self):
        if not 0 < self.RH < 100:
            raise DomainError("relative humidity must lie in (0, 100)")
        if not self.CO2 > 0:
            raise DomainError("CO2 concentration must be positive")
        if not 0.03 <= self.CO2 <= 0.15:
            warnings.warn(f"CO2 {self.CO2}% outside the typical 0.03-0.15% range", DegenerateInputWarning, stacklevel=2)


@dataclass(frozen=True)
class PapadakisConcrete:
    CH: float  # kg/m3
    CSH: float  # kg/m3
    eps_c: float  # carbonated porosity
    eps_air: float  # entrapped air fraction
    A: float  # aggregate content, kg/m3
    d_A: float  # aggregate density, kg/m3

    def __post_init__(self):
        vals = (self.CH, self.CSH, self.eps_c, self.eps_air, self.A)
        if any(v < 0 for v in vals) or not self.d_A > 0:
            raise DomainError("composition values must be non-negative and d_A positive")
        if self.eps_c >= 1 or self.eps_air >= 1:
            raise DomainError("porosity fractions must be below 1")

    @property
    def binding_capacity(self) -> float:
        return 0.33 * self.CH + 0.214 * self.CSH


def tc_hookman(L: float, Rc: float) -> float:
    """Years for carbonation to consume ``L`` mm of cover at ``Rc`` mm/yr."""
    if not Rc > 0:
        raise DomainError("carbonation rate must be positive")
    if L < 0:
        raise DomainError("cover must be non-negative")
    return L / Rc


def life_coefficient_model(L: float, k_c: float, k_e: float, k_a: float) -> float:
    """Carbonation life ``k_c k_e L^2 + k_a L`` with caller-supplied coefficients."""
    if min(k_c, k_e, k_a) < 0 or L < 0:
        raise DomainError("cover and coefficients must be non-negative")
    return k_c * k_e * L * L + k_a * L


def depth_sqrt_law(Dc: float, delta_c: float, t: float) -> float:
    """Depth ``sqrt(2 Dc dc t)``; units follow the caller's Dc and t."""
    if min(Dc, delta_c, t) < 0:
        raise DomainError("Dc, concentration difference and time must be non-negative")
    return math.sqrt(2.0 * Dc * delta_c * t)


def time_iaea(d: float, grade: int) -> float:
    """Years for carbonation to reach depth ``d`` mm in concrete of the given grade."""
    try:
        k = IAEA_PERMEABILITY[grade]
    except (KeyError, TypeError):
        raise DomainError(f"grade {grade!r} not in {sorted(IAEA_PERMEABILITY)}") from None
    if d < 0:
        raise DomainError("depth must be non-negative")
    return (d / k) ** 2


def depth_empirical_wcr(y: float, x: float, finish: str = "No Layer", indoor: bool = False) -> float:
    """Carbonation depth after ``y`` years for water-cement ratio ``x``.

    Returns 0 with a :class:`DegenerateInputWarning` when ``4.6x - 1.76 <= 0``.
    """
    if y < 0:
        raise DomainError("age must be non-negative")
    if not x > 0:
        raise DomainError("water-cement ratio must be positive")
    try:
        beta = FINISH_BETA[finish][0 if indoor else 1]
    except KeyError:
        raise DomainError(f"unknown surface finish {finish!r}") from None
    if beta is None:
        raise DomainError(f"no {'indoor' if indoor else 'outdoor'} coefficient for finish {finish!r}")
    bracket = 4.6 * x - 1.76
    if bracket <= 0:
        warnings.warn("w/c ratio below the model range; depth set to 0", DegenerateInputWarning, stacklevel=2)
        return 0.0
    R = (ALPHA_INDOOR if indoor else ALPHA_OUTDOOR) * beta
    return math.sqrt(y) * R * bracket / math.sqrt(7.2)


def papadakis_diffusivity(p: PapadakisConcrete, RH: float) -> float:
    """Effective CO2 diffusivity in m2/s."""
    if not 0 <= RH <= 100:
        raise DomainError("relative humidity must lie in [0, 100]")
    denom = 1.0 - p.A / p.d_A - p.eps_air
    if denom <= 0:
        raise ModelInconsistentError("aggregate and air volume fractions leave no paste volume")
    ratio = (p.eps_c - p.eps_air) / denom
    return 6.1e-6 * ratio**3 * (1.0 - RH / 100.0) ** 2.2


def _rate_constant(p, env):
    if p.binding_capacity == 0:
        raise DomainError("CH and CSH cannot both be zero")
    return 2.0 * papadakis_diffusivity(p, env.RH) * (env.CO2 / 100.0) / p.binding_capacity


def papadakis_depth(p: PapadakisConcrete, env: CarbonationEnvironment, t: float) -> float:
    """Carbonation depth (m) after ``t`` seconds."""
    if t < 0:
        raise DomainError("time must be non-negative")
    return math.sqrt(_rate_constant(p, env) * t)


def papadakis_tcr(p: PapadakisConcrete, env: CarbonationEnvironment, c: float) -> float:
    """Seconds for the carbonation front to reach cover ``c`` (m)."""
    if c < 0:
        raise DomainError("cover must be non-negative")
    k = _rate_constant(p, env)
    if k == 0:
        return math.inf
    return c * c / k


def propagation_morinaga(c: float, RH: float) -> float:
    """Propagation period (yr) after depassivation; ``math.inf`` where the corrosion rate is not positive."""
    if c < 0:
        raise DomainError("cover must be non-negative")
    q_c = 65.0 * (RH / 100.0) - 35.0
    if q_c <= 0:
        return math.inf
    if not 55 < RH < 95:
        warnings.warn(f"RH {RH}% outside the 55-95% calibration range", DegenerateInputWarning, stacklevel=2)
    Q_cr = 6.0 * (1.0 + 0.2 * c) ** 0.85
    return Q_cr / q_c


def z_carb(t_cr: float, t_pr: float) -> float:
    """Total carbonation life in years from ``t_cr`` seconds and ``t_pr`` years."""
    if t_cr < 0 or t_pr < 0:
        raise DomainError("periods must be non-negative")
    return t_cr / SECONDS_PER_JULIAN_YEAR + t_pr
