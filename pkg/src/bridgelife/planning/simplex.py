"""Dense two-phase simplex method with Bland's anti-cycling rule.

Solves ``max c @ x`` subject to ``A_ub @ x <= b_ub``, ``A_eq @ x == b_eq``
and ``x >= 0``. Intended for desk-scale problems (a few thousand columns);
every pivot is a dense rank-one update of the full tableau.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, InfeasibleError, UnboundedError

PIVOT_TOL = 1e-9
COST_TOL = 1e-9
FEAS_TOL = 1e-8


@dataclass(frozen=True)
class LpResult:
    x: np.ndarray
    objective: float
    alternate_optima: bool
    iterations: int


def _as_2d(A, n):
    if A is None:
        return np.zeros((0, n))
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[1] != n:
        raise DomainError(f"constraint matrix must have {n} columns")
    return A


def _pivot(T, basis, row, col):
    T[row] /= T[row, col]
    col_vals = T[:, col].copy()
    col_vals[row] = 0.0
    T -= np.outer(col_vals, T[row])
    basis[row] = col


def _run(T, basis, n_cols, max_iter):
    """Minimize the last tableau row over the first ``n_cols`` columns with Bland's rule."""
    it = 0
    while True:
        red = T[-1, :n_cols]
        candidates = np.flatnonzero(red < -COST_TOL)
        if candidates.size == 0:
            return it
        col = int(candidates[0])
        column = T[:-1, col]
        pos = column > PIVOT_TOL
        if not np.any(pos):
            raise UnboundedError(f"objective is unbounded along column {col}")
        ratios = np.full(column.shape, np.inf)
        ratios[pos] = T[:-1, -1][pos] / column[pos]
        best = ratios.min()
        ties = np.flatnonzero(ratios <= best + 1e-12 * max(1.0, abs(best)))
        row = int(min(ties, key=lambda r: basis[r]))
        _pivot(T, basis, row, col)
        it += 1
        if it > max_iter:
            raise RuntimeError("simplex iteration limit reached")


def linprog_max(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, max_iter: int = 100_000) -> LpResult:
    """Maximize ``c @ x`` over the polyhedron; see the module docstring.

    Raises
    ------
    InfeasibleError
        With ``certificate`` holding multipliers ``y`` over the stacked rows
        ``[A_ub | I; A_eq | 0]`` such that ``y @ A <= 0`` and ``y @ b > 0``.
    UnboundedError
        If the objective is unbounded above.
    """
    c = np.asarray(c, dtype=float)
    n = c.size
    A_ub, A_eq = _as_2d(A_ub, n), _as_2d(A_eq, n)
    b_ub = np.zeros(0) if b_ub is None else np.asarray(b_ub, dtype=float)
    b_eq = np.zeros(0) if b_eq is None else np.asarray(b_eq, dtype=float)
    if b_ub.size != A_ub.shape[0] or b_eq.size != A_eq.shape[0]:
        raise DomainError("right-hand side sizes do not match the constraint rows")
    m_ub, m_eq = A_ub.shape[0], A_eq.shape[0]
    m = m_ub + m_eq

    # standard form: [A_ub I; A_eq 0] [x; s] = b, then flip rows with b < 0
    A = np.zeros((m, n + m_ub))
    A[:m_ub, :n] = A_ub
    A[:m_ub, n:] = np.eye(m_ub)
    A[m_ub:, :n] = A_eq
    b = np.concatenate([b_ub, b_eq])
    sign = np.where(b < 0, -1.0, 1.0)
    A *= sign[:, None]
    b = b * sign
    n_std = n + m_ub

    # phase 1: one artificial per row, minimize their sum
    T = np.zeros((m + 1, n_std + m + 1))
    T[:m, :n_std] = A
    T[:m, n_std : n_std + m] = np.eye(m)
    T[:m, -1] = b
    T[-1, n_std : n_std + m] = 1.0
    T[-1] -= T[:m].sum(axis=0)
    basis = list(range(n_std, n_std + m))
    it = _run(T, basis, n_std + m, max_iter)
    if -T[-1, -1] > FEAS_TOL * max(1.0, np.abs(b).max(initial=0.0)):
        y = 1.0 - T[-1, n_std : n_std + m]
        raise InfeasibleError("no feasible point", certificate=y * sign)

    # drive remaining artificials out of the basis; drop redundant rows
    keep = []
    for r in range(m):
        if basis[r] >= n_std:
            nz = np.flatnonzero(np.abs(T[r, :n_std]) > PIVOT_TOL)
            if nz.size:
                _pivot(T, basis, r, int(nz[0]))
                keep.append(r)
        else:
            keep.append(r)
    T = np.vstack([T[keep][:, list(range(n_std)) + [-1]], np.zeros((1, n_std + 1))])
    basis = [basis[r] for r in keep]

    # phase 2: minimize -c
    cost = np.zeros(n_std)
    cost[:n] = -c
    T[-1, :n_std] = cost
    T[-1, -1] = 0.0
    for r, j in enumerate(basis):
        T[-1] -= cost[j] * T[r]
    it += _run(T, basis, n_std, max_iter)

    x_std = np.zeros(n_std)
    for r, j in enumerate(basis):
        x_std[j] = T[r, -1]
    x = np.maximum(x_std[:n], 0.0)
    nonbasic = np.ones(n_std, dtype=bool)
    nonbasic[basis] = False
    alt = bool(np.any(np.abs(T[-1, :n_std][nonbasic]) <= COST_TOL))
    return LpResult(x=x, objective=float(c @ x), alternate_optima=alt, iterations=it)
