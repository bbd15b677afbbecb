"""Chloride-induced corrosion service life in three stages.

``t1`` corrosion initiation, ``t2`` initiation to cover cracking, ``t3``
cracking to a limit state. Inputs use the canonical units of
:mod:`bridgelife.units`; each formula converts internally:

=====================  ==========================  ============================
quantity               caller supplies             formula evaluates in
=====================  ==========================  ============================
cover, depth x         mm                          cm (Fick, Bazant t1), m (SI)
Dca, Dc                cm2/s                       cm2/s
rebar D, dD, p         mm                          m
i_corr                 uA/cm2                      A/m2 (x 1e-2), mA/ft2 (Liu)
Q_cr                   1e-4 g/cm2                  g/m2 (numerically equal)
W/F                    g/C                         kg/C
stage results          yr (3.1536e7 s)
=====================  ==========================  ============================

A stage that never happens (chloride threshold above the surface level,
zero corrosion current) returns ``math.inf``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Mapping

from . import special
from .errors import DegenerateInputWarning, DomainError, ModelInconsistentError
from .units import SECONDS_PER_YEAR, ServiceLifeBreakdown, convert

RUST_DENSITY_FACTOR = 3600.0  # kg/m3, Bazant q_cor
HU_CRACK_SLOPE = 0.1916
HU_CRACK_INTERCEPT = 0.164  # mm

VU_CONSTANTS = {0.3: (65.0, 0.45), 0.5: (225.0, 0.29), 1.0: (700.0, 0.23)}

# Diametral loss that opens a 0.3 mm crack under the Hu relation; used as the
# default critical corrosion-product thickness for the Wang model.
WANG_DEFAULT_DELTA = (0.3 - HU_CRACK_INTERCEPT) / HU_CRACK_SLOPE  # mm


@dataclass(frozen=True)
class ChlorideEnvironment:
    C0: float  # surface chloride, kg/m3
    Cth: float  # threshold chloride, kg/m3
    Dca: float  # apparent diffusion coefficient, cm2/s
    cover: float  # mm

    def __post_init__(self):
        for name in ("C0", "Cth", "Dca", "cover"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise DomainError(f"{name} must be positive and finite, got {v}")


@dataclass(frozen=True)
class RebarGeometry:
    D: float  # mm
    perimeter: float | None = None  # mm, defaults to pi*D

    def __post_init__(self):
        if not self.D > 0:
            raise DomainError("bar diameter must be positive")
        if self.perimeter is not None and not self.perimeter > 0:
            raise DomainError("bar perimeter must be positive")

    @property
    def p(self) -> float:
        return math.pi * self.D if self.perimeter is None else self.perimeter


@dataclass(frozen=True)
class CorrosionKinetics:
    i_corr: float  # uA/cm2
    W: float = 27.925  # equivalent weight of steel, g
    F: float = 96847.0  # C
    rho_st: float = 7850.0  # kg/m3
    R_pit: float = 5.0

    def __post_init__(self):
        if self.i_corr < 0:
            raise DomainError("corrosion current must be non-negative")
        if self.R_pit < 1:
            raise DomainError("pitting factor must be >= 1")

    def rust_rate(self) -> float:
        """Mass loss rate j_r in kg/(m2 s)."""
        return (self.W / self.F) * 1e-3 * self.i_corr * 1e-2

    def penetration_rate(self) -> float:
        """Section penetration rate in m/s."""
        return self.rust_rate() / self.rho_st


@dataclass(frozen=True)
class LiuWeyersParams:
    f_t: float  # tensile strength, MPa
    E_ef: float  # effective elastic modulus, MPa
    nu_c: float = 0.2
    rho_rust: float = 3600.0  # kg/m3
    d0: float = 0.1245  # pore band thickness, mm (4.9 mils)
    alpha: float = 0.523

    def __post_init__(self):
        if self.f_t < 0 or not self.E_ef > 0:
            raise DomainError("need f_t >= 0 and E_ef > 0")
        if not 0 <= self.alpha <= 1:
            raise DomainError("alpha must lie in [0, 1]")


def _seconds_to_years(t):
    return t / SECONDS_PER_YEAR


def chloride_profile(env: ChlorideEnvironment, x: float, t: float) -> float:
    """Chloride concentration (kg/m3) at depth ``x`` mm after ``t`` years."""
    if not t > 0:
        raise DomainError("diffusion time must be positive")
    if x < 0:
        raise DomainError("depth must be non-negative")
    x_cm = x / 10.0
    t_s = t * SECONDS_PER_YEAR
    return env.C0 * special.erfc(x_cm / (2.0 * math.sqrt(env.Dca * t_s)))


def t1_fick(env: ChlorideEnvironment) -> float:
    """Corrosion initiation time (yr) from the erf solution of Fick's second law."""
    ratio = env.Cth / env.C0
    if ratio >= 1.0:
        return math.inf
    # erfinv(1 - ratio) computed as erfcinv(ratio) to keep precision for small ratios
    z = special.erfcinv(ratio)
    c_cm = env.cover / 10.0
    return _seconds_to_years(c_cm**2 / (z * z * 4.0 * env.Dca))


def t1_bazant(env: ChlorideEnvironment, Dc: float | None = None) -> float:
    """Bazant initiation time (yr); cover in cm and ``Dc`` in cm2/s inside the formula."""
    Dc = env.Dca if Dc is None else Dc
    if not Dc > 0:
        raise DomainError("diffusion coefficient must be positive")
    ratio = env.Cth / env.C0
    if ratio >= 1.0:
        return math.inf
    c = env.cover / 10.0
    return _seconds_to_years(c / (12.0 * Dc) * (c / (1.0 - math.sqrt(ratio))) ** 2)


def t2_bazant(geom: RebarGeometry, kin: CorrosionKinetics, delta_D: float) -> float:
    """Initiation-to-cracking time (yr) for a diameter increase ``delta_D`` mm."""
    if not delta_D > 0:
        raise DomainError("diameter increase must be positive")
    j_r = kin.rust_rate()
    if j_r == 0:
        return math.inf
    D, dD, p = geom.D * 1e-3, delta_D * 1e-3, geom.p * 1e-3
    return _seconds_to_years(RUST_DENSITY_FACTOR * D * dD / (p * j_r))


def morinaga_critical_corrosion(D: float, cover: float) -> float:
    """Corrosion amount at cracking, 1e-4 g/cm2."""
    return 0.602 * D * (1.0 + 2.0 * cover / D) ** 0.85


def t2_morinaga(geom: RebarGeometry, cover: float, kin: CorrosionKinetics) -> float:
    if cover < 0:
        raise DomainError("cover must be non-negative")
    j_r = kin.rust_rate() * 1e3  # g/(m2 s)
    if j_r == 0:
        return math.inf
    q_cr = morinaga_critical_corrosion(geom.D, cover)  # 1e-4 g/cm2 == g/m2
    return _seconds_to_years(q_cr / j_r)


def wang_thickness_ratio(D: float, cover: float, f_cu: float) -> float:
    """Corrosion-product thickness over rebar penetration, ``Delta/H``.

    ``f_cu`` is the cube strength in kN/cm2.
    """
    if not (D > 0 and cover > 0 and f_cu > 0):
        raise DomainError("D, cover and f_cu must be positive")
    return 0.33 * (D / cover) ** 0.565 * f_cu**1.436


def t2_wang(
    geom: RebarGeometry,
    cover: float,
    f_cu: float,
    kin: CorrosionKinetics,
    delta_crit: float = WANG_DEFAULT_DELTA,
) -> float:
    """Time to longitudinal cracking (yr), ``H / rho_r``.

    ``delta_crit`` is the critical corrosion-product thickness in mm.
    """
    if not delta_crit > 0:
        raise DomainError("critical thickness must be positive")
    H = delta_crit / wang_thickness_ratio(geom.D, cover, f_cu) * 1e-3  # m
    rate = kin.penetration_rate()
    if rate == 0:
        return math.inf
    return _seconds_to_years(H / rate)


def liu_weyers_critical_rust(geom: RebarGeometry, cover: float, lw: LiuWeyersParams, rho_st: float) -> float:
    """Critical rust mass per unit bar length, kg/m."""
    D = geom.D * 1e-3
    d0 = lw.d0 * 1e-3
    c = cover * 1e-3
    a = (D + 2 * d0) / 2
    b = c + (D + 2 * d0) / 2
    d_s = (c * lw.f_t / lw.E_ef) * ((a * a + b * b) / (b * b - a * a) + lw.nu_c)
    denom = 1.0 - lw.alpha * lw.rho_rust / rho_st
    if denom <= 0:
        raise ModelInconsistentError("alpha * rho_rust / rho_st must be below 1")
    return lw.rho_rust * math.pi * D * (d_s + d0) / denom


def t2_liu_weyers(geom: RebarGeometry, cover: float, lw: LiuWeyersParams, kin: CorrosionKinetics) -> float:
    """Time to cracking (yr) from the critical rust amount.

    The rust production constant 0.098 expects D in mm, i_corr in mA/ft2 and
    gives mg^2/(mm^2 yr), so W_crit is carried in mg/mm.
    """
    w_crit = liu_weyers_critical_rust(geom, cover, lw, kin.rho_st) * 1e3  # mg/mm
    i_ma_ft2 = convert(kin.i_corr, "uA/cm2", "mA/ft2")
    if i_ma_ft2 == 0:
        return math.inf
    if lw.alpha == 0:
        raise ModelInconsistentError("alpha must be positive for the rust production rate")
    k_p = 0.098 * (1.0 / lw.alpha) * math.pi * geom.D * i_ma_ft2
    return w_crit**2 / (2.0 * k_p)


def t3_andrade(theta_i: float, kin: CorrosionKinetics, t: float) -> float:
    """Rebar diameter (mm) ``t`` years into propagation, floored at zero."""
    if t < 0:
        raise DomainError("time must be non-negative")
    return max(theta_i - 0.023 * kin.i_corr * t, 0.0)


def andrade_time_to_diameter(theta_i: float, kin: CorrosionKinetics, theta_limit: float) -> float:
    """Years until the diameter drops to ``theta_limit`` mm."""
    if not 0 <= theta_limit <= theta_i:
        raise DomainError("limit diameter must lie in [0, theta_i]")
    if kin.i_corr == 0:
        return math.inf
    return (theta_i - theta_limit) / (0.023 * kin.i_corr)


def t3_williamson(pct: float) -> float:
    """Years for deck damage to reach ``pct`` percent of the area."""
    if pct < 0:
        raise DomainError("percent deterioration must be non-negative")
    t3 = 8.61 * (math.sqrt(pct + 1.38) - 1.45) - 3.34
    if t3 < 0:
        warnings.warn(f"negative propagation time {t3:.3g} yr clamped to 0", DegenerateInputWarning, stacklevel=2)
        return 0.0
    return t3


def _hu_lambda(kin: CorrosionKinetics) -> float:
    return 0.0116 * kin.R_pit * kin.i_corr  # mm/yr


def rebar_diameter_hu(D: float, kin: CorrosionKinetics, t1: float, t: float) -> float:
    """Piecewise-linear rebar diameter (mm) at time ``t``."""
    if t < 0:
        raise DomainError("time must be non-negative")
    if t <= t1:
        return D
    lam = _hu_lambda(kin)
    return max(D - 2.0 * lam * (t - t1), 0.0)


def crack_width_hu(D: float, kin: CorrosionKinetics, t1: float, t: float) -> float:
    """Surface crack width (mm) at time ``t``."""
    return HU_CRACK_SLOPE * (D - rebar_diameter_hu(D, kin, t1, t)) + HU_CRACK_INTERCEPT


def t3_crackwidth_hu(D: float, kin: CorrosionKinetics, t1: float, w_limit: float) -> float:
    """Earliest time at which the surface crack reaches ``w_limit`` mm.

    Returned on the same time axis as ``t1``. A limit at or below the intercept
    is reached immediately (``t1``, with a warning); a limit beyond total loss
    of the bar, or a zero corrosion rate, gives ``math.inf``.
    """
    if not w_limit > 0:
        raise DomainError("crack width limit must be positive")
    if w_limit <= HU_CRACK_INTERCEPT:
        warnings.warn("crack width limit is at or below the model intercept", DegenerateInputWarning, stacklevel=2)
        return t1
    loss = (w_limit - HU_CRACK_INTERCEPT) / HU_CRACK_SLOPE
    lam = _hu_lambda(kin)
    if loss > D or lam == 0:
        return math.inf
    return t1 + loss / (2.0 * lam)


def vu_loading_correction(i_exp: float, i_real: float) -> float:
    if not (i_exp > 0 and i_real > 0):
        raise DomainError("corrosion rates must be positive")
    r = i_exp / i_real
    return 0.95 * (math.exp(-0.3 * r) - r / 2500.0) + 0.3


def t3_vu(
    t1: float,
    kin: CorrosionKinetics,
    cover: float,
    w_c: float,
    limit: float = 0.3,
    i_exp: float = 100.0,
    i_real: float = 1.0,
) -> float:
    """Time to excessive cracking (yr) for a crack-width limit of 0.3, 0.5 or 1.0 mm.

    ``t1`` is the time to crack initiation on the same axis.
    """
    if not w_c > 0:
        raise DomainError("water-cement ratio must be positive")
    try:
        A, B = VU_CONSTANTS[float(limit)]
    except KeyError:
        raise DomainError(f"no constants for crack width limit {limit} mm") from None
    k_r = vu_loading_correction(i_exp, i_real)
    return t1 + k_r * 0.0114 * kin.i_corr * (A * (cover / w_c) ** B)


@dataclass(frozen=True)
class StageChoices:
    """Model selection for :func:`total_chloride_life`.

    ``params`` supplies stage-specific inputs: ``delta_D`` (bazant t2),
    ``f_cu`` and ``delta_crit`` (wang), ``liu_weyers`` (mapping of
    :class:`LiuWeyersParams` fields), ``theta_limit`` (andrade), ``pct``
    (williamson), ``w_limit`` (hu), ``w_c``/``limit``/``i_exp``/``i_real`` (vu).
    """

    t1: str = "fick"
    t2: str = "morinaga"
    t3: str = "williamson"
    params: Mapping[str, object] = field(default_factory=dict)


T1_MODELS = ("fick", "bazant")
T2_MODELS = ("bazant", "morinaga", "wang", "liu_weyers")
T3_MODELS = ("andrade", "williamson", "hu", "vu")


def _stage_t2(choice, env, geom, kin, params):
    if choice == "bazant":
        return t2_bazant(geom, kin, float(params["delta_D"]))
    if choice == "morinaga":
        return t2_morinaga(geom, env.cover, kin)
    if choice == "wang":
        return t2_wang(geom, env.cover, float(params["f_cu"]), kin, float(params.get("delta_crit", WANG_DEFAULT_DELTA)))
    if choice == "liu_weyers":
        return t2_liu_weyers(geom, env.cover, LiuWeyersParams(**params["liu_weyers"]), kin)
    raise DomainError(f"unknown t2 model {choice!r}; choose from {T2_MODELS}")


def _stage_t3(choice, env, geom, kin, t1, t2, params):
    cracked = t1 + t2
    if choice == "andrade":
        return andrade_time_to_diameter(geom.D, kin, float(params["theta_limit"]))
    if choice == "williamson":
        return t3_williamson(float(params.get("pct", 12.0)))
    if choice == "hu":
        t_limit = t3_crackwidth_hu(geom.D, kin, t1, float(params.get("w_limit", 0.3)))
        return max(t_limit - cracked, 0.0)
    if choice == "vu":
        t_limit = t3_vu(
            cracked,
            kin,
            env.cover,
            float(params["w_c"]),
            float(params.get("limit", 0.3)),
            float(params.get("i_exp", 100.0)),
            float(params.get("i_real", kin.i_corr or 1.0)),
        )
        return t_limit - cracked
    raise DomainError(f"unknown t3 model {choice!r}; choose from {T3_MODELS}")


def total_chloride_life(
    env: ChlorideEnvironment,
    geom: RebarGeometry,
    kin: CorrosionKinetics,
    choices: StageChoices = StageChoices(),
) -> ServiceLifeBreakdown:
    """Compose the selected initiation, cracking and propagation models.

    The Hu and Vu propagation models give an absolute time; their stage
    duration is measured from cover cracking at ``t1 + t2``.
    """
    params = dict(choices.params)
    ids = {"t1": choices.t1, "t2": choices.t2, "t3": choices.t3}
    if choices.t1 == "fick":
        t1 = t1_fick(env)
    elif choices.t1 == "bazant":
        t1 = t1_bazant(env, params.get("Dc"))
    else:
        raise DomainError(f"unknown t1 model {choices.t1!r}; choose from {T1_MODELS}")
    if math.isinf(t1):
        return ServiceLifeBreakdown(t1, math.nan, math.nan, None, ids, ("no-initiation",))

    flags = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DegenerateInputWarning)
        t2 = _stage_t2(choices.t2, env, geom, kin, params)
        if math.isinf(t2):
            flags.append("no-cracking")
            t3 = math.nan
        else:
            t3 = _stage_t3(choices.t3, env, geom, kin, t1, t2, params)
            if math.isinf(t3):
                flags.append("limit-not-reached")
    if any(issubclass(w.category, DegenerateInputWarning) for w in caught):
        flags.append("degenerate-input")
    if flags and flags[0] in ("no-cracking", "limit-not-reached"):
        return ServiceLifeBreakdown(t1, t2, t3, None, ids, tuple(flags))
    return ServiceLifeBreakdown.compose(t1, t2, t3, ids, flags)
