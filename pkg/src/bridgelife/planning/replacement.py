"""Fixed-interval replacement: minimize operating plus replacement cost per unit time."""
from __future__ import annotations

import math
from typing import Callable, Sequence

from ..errors import DomainError

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def adaptive_simpson(f: Callable[[float], float], a: float, b: float, tol: float = 1e-9, max_depth: int = 50) -> float:
    """Integral of ``f`` over ``[a, b]`` by adaptive Simpson with Richardson correction."""

    def simpson(fa, fm, fb, a, b):
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    def rec(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = simpson(fa, flm, fm, a, m)
        right = simpson(fm, frm, fb, m, b)
        delta = left + right - whole
        if depth <= 0 or abs(delta) <= 15.0 * tol:
            return left + right + delta / 15.0
        return rec(a, m, fa, flm, fm, left, tol / 2, depth - 1) + rec(m, b, fm, frm, fb, right, tol / 2, depth - 1)

    if a == b:
        return 0.0
    fa, fb, fm = f(a), f(b), f(0.5 * (a + b))
    return rec(a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, max_depth)


def cost_rate(c: Callable[[float], float], C_r: float, t_r: float, tol: float = 1e-9) -> float:
    """Average cost per unit time when replacing every ``t_r``."""
    if not t_r > 0:
        raise DomainError("replacement interval must be positive")
    return (adaptive_simpson(c, 0.0, t_r, tol) + C_r) / t_r


def optimal_replacement_interval(
    c: Callable[[float], float],
    C_r: float,
    bounds: tuple[float, float],
    rtol: float = 1e-10,
) -> tuple[float, float]:
    """Golden-section minimum of :func:`cost_rate` over ``bounds``.

    Returns ``(t_r*, C(t_r*))``. The search assumes the cost rate is unimodal
    on the interval; a monotone rate ends at the matching bound.
    """
    lo, hi = map(float, bounds)
    if not (0 < lo < hi and math.isfinite(hi)):
        raise DomainError("bounds must satisfy 0 < lo < hi < inf")
    if not C_r > 0:
        raise DomainError("replacement cost must be positive")

    def F(t):
        return cost_rate(c, C_r, t)

    a, b = lo, hi
    x1 = b - _INV_PHI * (b - a)
    x2 = a + _INV_PHI * (b - a)
    f1, f2 = F(x1), F(x2)
    while b - a > rtol * max(1.0, abs(a) + abs(b)):
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_PHI * (b - a)
            f1 = F(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_PHI * (b - a)
            f2 = F(x2)
    t = 0.5 * (a + b)
    candidates = [(F(t), t), (F(lo), lo), (F(hi), hi)]
    best = min(candidates)
    return best[1], best[0]


def polynomial_cost(coefficients: Sequence[float]) -> Callable[[float], float]:
    """Operating cost ``c(t) = sum_k a_k t**k`` from ascending coefficients."""
    coeffs = [float(a) for a in coefficients]

    def c(t: float) -> float:
        acc = 0.0
        for a in reversed(coeffs):
            acc = acc * t + a
        return acc

    return c
