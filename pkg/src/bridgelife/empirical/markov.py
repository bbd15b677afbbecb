"""Markov-chain deterioration: state propagation, the Zhang transform and TPM calibration."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from ..errors import DomainError, ModelInconsistentError

TOL = 1e-9


def validate_tpm(P, triangular: bool = False) -> np.ndarray:
    """Return ``P`` as a float array after checking it is row-stochastic.

    With ``triangular=True`` the lower triangle must also be zero.
    """
    P = np.asarray(P, dtype=float)
    if P.ndim != 2 or P.shape[0] != P.shape[1] or P.shape[0] == 0:
        raise DomainError("a TPM must be a non-empty square matrix")
    if not np.all(np.isfinite(P)) or np.any(P < -TOL) or np.any(P > 1 + TOL):
        raise DomainError("TPM entries must lie in [0, 1]")
    if np.any(np.abs(P.sum(axis=1) - 1.0) > TOL):
        raise DomainError("TPM rows must sum to 1")
    if triangular and np.any(np.tril(P, -1) > TOL):
        raise DomainError("deterioration TPM must be upper-triangular")
    return P


def validate_distribution(alpha) -> np.ndarray:
    a = np.asarray(alpha, dtype=float)
    if a.ndim != 1 or np.any(a < -TOL) or abs(a.sum() - 1.0) > TOL:
        raise DomainError("state distribution must be non-negative and sum to 1")
    return a


def markov_step(alpha, P) -> np.ndarray:
    """One transition ``alpha @ P``, renormalized onto the simplex."""
    a = validate_distribution(alpha)
    P = validate_tpm(P)
    if a.shape[0] != P.shape[0]:
        raise DomainError("distribution and TPM sizes differ")
    out = a @ P
    out[(out < 0) & (out >= -1e-15)] = 0.0
    return out / out.sum()


def ertekin_propagate(cs_i, T, N: int) -> np.ndarray:
    """Distribution after ``N`` transitions, by repeated :func:`markov_step`."""
    if N < 0 or int(N) != N:
        raise DomainError("number of steps must be a non-negative integer")
    cs = validate_distribution(cs_i)
    for _ in range(int(N)):
        cs = markov_step(cs, T)
    return cs


def zhang_matrix(P) -> np.ndarray:
    """Fold the below-diagonal mass of a 5x5 TPM into an upper-triangular matrix.

    Row 2 moves half of ``p21`` to the diagonal and a sixth to each later
    state; row 3 splits ``p31 + p32`` as 3/5, 1/5, 1/5; row 4 splits
    ``p41 + p42 + p43`` as 7/10, 3/10; row 5 becomes absorbing.
    """
    P = validate_tpm(P)
    if P.shape != (5, 5):
        raise DomainError("the transform is defined for 5x5 matrices")
    D = np.zeros((5, 5))
    D[0] = P[0]
    p21 = P[1, 0]
    D[1, 1] = P[1, 1] + p21 / 2
    D[1, 2:] = P[1, 2:] + p21 / 6
    s3 = P[2, 0] + P[2, 1]
    D[2, 2:] = P[2, 2:] + np.array([3 / 5, 1 / 5, 1 / 5]) * s3
    s4 = P[3, :3].sum()
    D[3, 3:] = P[3, 3:] + np.array([7 / 10, 3 / 10]) * s4
    D[4, 4] = P[4, 4] + P[4, :4].sum()
    if np.any(np.abs(D.sum(axis=1) - 1.0) > TOL):
        raise ModelInconsistentError("transformed rows do not sum to 1")
    return D


def advance_tpm(stay) -> np.ndarray:
    """Upper-bidiagonal TPM: stay with ``stay[i]``, else move one state down."""
    stay = np.asarray(stay, dtype=float)
    k = stay.size + 1
    P = np.zeros((k, k))
    idx = np.arange(k - 1)
    P[idx, idx] = stay
    P[idx, idx + 1] = 1.0 - stay
    P[-1, -1] = 1.0
    return P


def expected_ratings(P, values, N: int, start=None) -> np.ndarray:
    """``E[rating]`` after 1..N transitions from ``start`` (default: best state)."""
    P = np.asarray(P, dtype=float)
    a = np.zeros(P.shape[0])
    if start is None:
        a[0] = 1.0
    else:
        a = np.asarray(start, dtype=float)
    out = np.empty(N)
    for n in range(N):
        a = a @ P
        out[n] = a @ values
    return out


def _objective(stay, Y, values):
    return float(np.sum(np.abs(Y - expected_ratings(advance_tpm(stay), values, Y.size))))


def _residuals(stay, Y, values):
    return expected_ratings(advance_tpm(stay), values, Y.size) - Y


def _least_squares(x, Y, values, iters=200):
    # projected Levenberg-Marquardt on the squared residuals; smooth warm start for the L1 fit
    lam = 1e-3
    r = _residuals(x, Y, values)
    cost = r @ r
    h = 1e-7
    for _ in range(iters):
        J = np.empty((Y.size, x.size))
        for i in range(x.size):
            xp = x.copy()
            xp[i] = xp[i] - h if xp[i] + h > 1.0 else xp[i] + h
            J[:, i] = (_residuals(xp, Y, values) - r) / (xp[i] - x[i])
        g = J.T @ r
        A = J.T @ J
        while True:
            step = np.linalg.solve(A + lam * np.diag(np.diag(A) + 1e-12), -g)
            xn = np.clip(x + step, 0.0, 1.0)
            rn = _residuals(xn, Y, values)
            cn = rn @ rn
            if cn < cost:
                lam = max(lam / 3, 1e-12)
                break
            lam *= 4
            if lam > 1e12:
                return x
        converged = cost - cn < 1e-30 or np.max(np.abs(xn - x)) < 1e-13
        x, r, cost = xn, rn, cn
        if converged:
            break
    return x


def _pattern_search(x, f, step=0.25, min_step=1e-10):
    fx = f(x)
    while step > min_step:
        improved = False
        for i in range(x.size):
            for sgn in (1.0, -1.0):
                y = x.copy()
                y[i] = min(max(y[i] + sgn * step, 0.0), 1.0)
                if y[i] == x[i]:
                    continue
                fy = f(y)
                if fy < fx:
                    x, fx, improved = y, fy, True
                    break
        if not improved:
            step *= 0.5
    return x, fx


def hallberg_calibrate(
    Y: Sequence[float],
    n_states: int,
    values: Sequence[float] | None = None,
    starts: int = 5,
    seed: int = 0,
    tol: float = 1e-6,
) -> tuple[np.ndarray, float]:
    """Fit a stay-or-advance TPM so expected ratings follow ``Y(1..N)``.

    The chain starts in the best state. From each of ``starts`` seeded
    initial points a least-squares fit gives a smooth warm start, and a
    coordinate pattern search then minimizes ``sum |Y(n) - E[X(n, P)]|``.
    State values default to ``n_states, ..., 1``. Stay probabilities that do not affect the
    objective are pushed to 1 (no deterioration where the data are silent).

    Returns
    -------
    (P, objective)
    """
    Y = np.asarray(Y, dtype=float)
    if Y.ndim != 1 or Y.size == 0:
        raise DomainError("degradation curve must be a non-empty sequence")
    if np.any(np.diff(Y) > 0):
        raise DomainError("degradation curve must be non-increasing")
    if n_states < 2:
        raise DomainError("need at least two states")
    values = np.arange(n_states, 0, -1, dtype=float) if values is None else np.asarray(values, dtype=float)
    if values.size != n_states:
        raise DomainError("one value per state is required")
    if Y.max() > values.max() + TOL or Y.min() < values.min() - TOL:
        raise DomainError("degradation curve lies outside the rating bounds")

    def f(x):
        return _objective(x, Y, values)

    rng = np.random.default_rng(seed)
    best_x, best_f = None, np.inf
    for k in range(starts):
        x0 = np.full(n_states - 1, 0.9) if k == 0 else rng.uniform(0.5, 1.0, n_states - 1)
        x, fx = _pattern_search(_least_squares(x0, Y, values), f, step=0.01)
        if fx < best_f - 1e-15:
            best_x, best_f = x, fx
        if best_f <= tol * 1e-3:
            break
    for i in range(best_x.size):
        y = best_x.copy()
        y[i] = 1.0
        fy = f(y)
        if fy <= best_f + 1e-12:
            best_x, best_f = y, min(fy, best_f)
    return advance_tpm(best_x), best_f
