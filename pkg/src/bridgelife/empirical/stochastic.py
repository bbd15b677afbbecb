"""Gamma-process density, autoregressive forecasts and logit choice probabilities."""
from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .. import special
from ..errors import DomainError


def gamma_process_density(shape: float, rate: float, x: float) -> float:
    """Density of the deterioration increment ``x`` with shape ``lambda*t`` and rate ``beta``."""
    if not (shape > 0 and rate > 0 and x > 0):
        raise DomainError("shape, rate and x must be positive")
    log_f = shape * math.log(rate) - special.lgamma(shape) + (shape - 1.0) * math.log(x) - rate * x
    return math.exp(log_f)


def ar_forecast(coeffs: Sequence[float], history: Sequence[float]) -> float:
    """One-step AR(p) forecast ``a0 + sum_k a_k y_{t-k}``; ``history`` ends with the latest value."""
    coeffs = list(coeffs)
    if not coeffs:
        raise DomainError("need at least the intercept")
    p = len(coeffs) - 1
    if len(history) < p:
        raise DomainError(f"AR({p}) needs at least {p} past values")
    y = coeffs[0]
    for k in range(1, p + 1):
        y += coeffs[k] * history[-k]
    return float(y)


def choice_probability(utilities: Sequence[float]) -> np.ndarray:
    """Multinomial-logit probabilities ``exp(V_i) / sum_j exp(V_j)``."""
    v = np.asarray(utilities, dtype=float)
    if v.ndim != 1 or v.size == 0 or not np.all(np.isfinite(v)):
        raise DomainError("utilities must be a non-empty finite vector")
    e = np.exp(v - v.max())
    return e / e.sum()
