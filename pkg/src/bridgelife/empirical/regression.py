"""Condition-rating regression models and a catalog of published coefficients."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..errors import DomainError


@dataclass(frozen=True)
class PolynomialModel:
    """Rating ``C0 + C1 T + C2 T^2 + C3 T^3`` for age ``T`` in years.

    ``scale`` names the rating scale (``"NBI 0-9"`` or ``"NY 1-7"``); ratings
    are not converted between scales.
    """

    coefficients: tuple[float, ...]
    scale: str = "NBI 0-9"
    age_range: tuple[float, float] = (0.0, math.inf)

    def __post_init__(self):
        if not all(math.isfinite(c) for c in self.coefficients):
            raise DomainError("coefficients must be finite")

    def __call__(self, T: float) -> float:
        return eval_polynomial(self, T)


@dataclass(frozen=True)
class PiecewiseLinearModel:
    B0: float
    B1: float
    B2: float
    B3: float
    t1: float = 25.0
    t2: float = 45.0

    def __post_init__(self):
        if not self.t1 < self.t2:
            raise DomainError("breakpoints must satisfy t1 < t2")

    def __call__(self, t: float) -> float:
        return eval_piecewise_stukhart(self, t)


def eval_polynomial(m: PolynomialModel, T: float) -> float:
    if T < 0:
        raise DomainError("age must be non-negative")
    acc = 0.0
    for c in reversed(m.coefficients):
        acc = acc * T + c
    return acc


def eval_piecewise_stukhart(m: PiecewiseLinearModel, t: float) -> float:
    if t < 0:
        raise DomainError("age must be non-negative")
    if t <= m.t1:
        return m.B0 + m.B1 * t
    if t < m.t2:
        return m.B0 + m.B1 * m.t1 + m.B2 * (t - m.t1)
    return m.B0 + m.B1 * m.t1 + m.B2 * (m.t2 - m.t1) + m.B3 * (t - m.t2)


def eval_exponential(beta1: float, beta2: float, t: float) -> float:
    """Exponential decay ``beta1 * exp(t / beta2)``; ``beta2`` is negative for decay."""
    if t < 0:
        raise DomainError("age must be non-negative")
    if beta2 == 0:
        raise DomainError("beta2 must be non-zero")
    return beta1 * math.exp(t / beta2)


def exponential_life(beta2: float) -> float:
    """Approximate service life of the exponential model, ``|beta2|``."""
    return abs(beta2)


HATAMI_BANDS = (
    PolynomialModel((10.189, -0.233, 0.0092, -0.0002)),
    PolynomialModel((10.754, -0.342, 0.0127, -0.0002)),
    PolynomialModel((10.372, -0.2311, 0.0039, -0.00004)),
)


def eval_hatami(adtt: float, T: float) -> float:
    """Deck rating by ADTT band; 100 and 500 belong to the middle band."""
    if adtt < 0:
        raise DomainError("ADTT must be non-negative")
    band = 0 if adtt < 100 else (1 if adtt <= 500 else 2)
    return eval_polynomial(HATAMI_BANDS[band], T)


CATALOG: dict[str, PolynomialModel] = {
    "jiang.concrete.superstructure": PolynomialModel((9.0, -0.28877329, 0.0093685, -0.00008877)),
    "agrawal.curb.granite": PolynomialModel((7.0, -0.0605424, 0.0001089, -1.0e-7), scale="NY 1-7"),
    "agrawal.curb.steel": PolynomialModel((7.0, -0.0577393, -0.0001956, -1.7e-6), scale="NY 1-7"),
    "agrawal.curb.timber": PolynomialModel((7.0, -0.0584921, -0.0003144, -2.4e-6), scale="NY 1-7"),
    "agrawal.curb.concrete": PolynomialModel((7.0, -0.0507576, -0.0002625, -1.9e-6), scale="NY 1-7"),
}


def catalog_model(model_id: str, **kw) -> Callable[[float], float]:
    """Rating function of age for a catalog id.

    ``"hatami.adtt"`` needs the keyword ``adtt``.
    """
    if model_id == "hatami.adtt":
        if "adtt" not in kw:
            raise DomainError("hatami.adtt requires an adtt value")
        adtt = float(kw["adtt"])
        return lambda T: eval_hatami(adtt, T)
    try:
        return CATALOG[model_id]
    except KeyError:
        known = sorted(CATALOG) + ["hatami.adtt"]
        raise DomainError(f"unknown model {model_id!r}; known: {known}") from None


def service_life_first_crossing(
    model: Callable[[float], float],
    threshold: float,
    horizon: float,
    step: float = 0.1,
    tol: float = 1e-6,
) -> float | None:
    """First age at which the rating falls to ``threshold``, or ``None``.

    A uniform scan at ``step`` brackets the crossing and bisection refines it
    to ``tol`` years.
    """
    if not horizon > 0:
        raise DomainError("horizon must be positive")
    if model(0.0) <= threshold:
        return 0.0
    n = int(math.ceil(horizon / step))
    grid = np.minimum(np.arange(n + 1) * step, horizon)
    prev = 0.0
    for t in grid[1:]:
        t = float(t)
        if model(t) <= threshold:
            lo, hi = prev, t
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                if model(mid) <= threshold:
                    hi = mid
                else:
                    lo = mid
            return hi
        prev = t
    return None


def polynomial_from_sequence(coefficients: Sequence[float], scale: str = "NBI 0-9") -> PolynomialModel:
    return PolynomialModel(tuple(float(c) for c in coefficients), scale=scale)
