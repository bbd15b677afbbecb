"""Weibull survival, hazard rates and right-censored maximum likelihood."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import DomainError

BETA_BRACKET = (0.05, 50.0)


@dataclass(frozen=True)
class WeibullParams:
    beta: float  # shape
    eta: float  # scale

    def __post_init__(self):
        if not (self.beta > 0 and self.eta > 0):
            raise DomainError("Weibull shape and scale must be positive")


def weibull_survival(w: WeibullParams, t):
    """``exp(-(t/eta)**beta)``; accepts scalars or arrays."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("time must be non-negative")
    s = np.exp(-((t / w.eta) ** w.beta))
    return float(s) if s.ndim == 0 else s


def weibull_pdf(w: WeibullParams, t):
    t = np.asarray(t, dtype=float)
    z = t / w.eta
    f = w.beta / w.eta * z ** (w.beta - 1) * np.exp(-(z**w.beta))
    return float(f) if f.ndim == 0 else f


def hazard(f: float, S: float) -> float:
    """Instantaneous failure rate ``f / S``."""
    if not S > 0:
        raise DomainError("survival probability must be positive")
    return f / S


def hearn_discrete_probability(lifetimes: Sequence[float]) -> np.ndarray:
    """Empirical cumulative probability ``i / N`` of the sorted lifetimes."""
    x = np.sort(np.asarray(lifetimes, dtype=float))
    if x.size == 0:
        raise DomainError("need at least one lifetime")
    return np.arange(1, x.size + 1) / x.size


def hearn_model_error(D: Sequence[float], F: Sequence[float]) -> float:
    """Sum of squared differences between empirical and model probabilities."""
    D = np.asarray(D, dtype=float)
    F = np.asarray(F, dtype=float)
    if D.shape != F.shape:
        raise DomainError("D and F must have equal length")
    return float(np.sum((D - F) ** 2))


@dataclass(frozen=True)
class CensoredSample:
    """Ages ``t`` with event flags ``d`` (1 failure observed, 0 right-censored)."""

    t: np.ndarray
    d: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        d = np.asarray(self.d, dtype=int)
        if t.shape != d.shape or t.ndim != 1:
            raise DomainError("t and d must be 1-D arrays of equal length")
        if np.any(t <= 0) or not np.all(np.isfinite(t)):
            raise DomainError("ages must be positive and finite")
        if not np.all((d == 0) | (d == 1)):
            raise DomainError("event flags must be 0 or 1")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "d", d)


def _profile_score(beta, logt, logt_fail_mean):
    # d/dbeta of the profile log-likelihood, divided by r; increasing in beta
    w = beta * (logt - logt.max())
    e = np.exp(w)
    return float(np.sum(e * logt) / np.sum(e)) - 1.0 / beta - logt_fail_mean


def weibull_censored_loglik(s: CensoredSample, beta: float, eta: float) -> float:
    z = s.t / eta
    fail = s.d == 1
    return float(
        np.sum(np.log(beta / eta) + (beta - 1) * np.log(z[fail])) - np.sum(z**beta)
    )


def fit_weibull_censored(s: CensoredSample, tol: float = 1e-9) -> WeibullParams:
    """Maximum-likelihood Weibull fit for right-censored data.

    The shape solves the profile score equation by bisection on
    ``[0.05, 50]``; the scale follows as ``(sum t**beta / r)**(1/beta)``
    with ``r`` observed failures.
    """
    r = int(s.d.sum())
    if r < 2:
        raise DomainError("at least two observed failures are needed to identify the fit")
    logt = np.log(s.t)
    target = float(logt[s.d == 1].mean())
    lo, hi = BETA_BRACKET
    g_lo = _profile_score(lo, logt, target)
    g_hi = _profile_score(hi, logt, target)
    if g_lo > 0 or g_hi < 0:
        raise DomainError("shape estimate lies outside [0.05, 50]")
    while hi - lo >= tol:
        mid = 0.5 * (lo + hi)
        if _profile_score(mid, logt, target) > 0:
            hi = mid
        else:
            lo = mid
    beta = 0.5 * (lo + hi)
    m = logt.max()
    eta = math.exp(m + math.log(np.sum(np.exp(beta * (logt - m))) / r) / beta)
    return WeibullParams(beta, eta)
