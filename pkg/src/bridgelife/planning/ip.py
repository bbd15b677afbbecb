"""Facility-level maintenance scheduling as a 0-1 program, solved by branch and bound.

Condition evolves as ``s[a, t] = f(s[a, t-1]) + sum_m u[a, m, t] * e[m]`` with
the affine deterioration ``f(s) = slope * s - drop``. The objective is the
sum of conditions over facilities and periods 1..T, each period's spend is
capped by its budget, a facility takes at most one treatment per period, and
conditions stay at or above ``eps`` (a strict positivity bound made closed).

Because ``f`` is affine, each ``s[a, t]`` is an affine function of ``u`` and
the program is a pure 0-1 linear program in ``u``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, InfeasibleError
from .simplex import linprog_max

INT_TOL = 1e-9


@dataclass(frozen=True)
class IpInstance:
    s0: np.ndarray  # (A,) initial conditions
    costs: np.ndarray  # (A, M, T)
    effectiveness: np.ndarray  # (M,)
    budgets: np.ndarray  # (T,)
    slope: float = 1.0
    drop: float = 0.0
    eps: float = 1e-6

    def __post_init__(self):
        for name in ("s0", "costs", "effectiveness", "budgets"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        A, M, T = self.costs.shape
        if self.s0.shape != (A,) or self.effectiveness.shape != (M,) or self.budgets.shape != (T,):
            raise DomainError("instance arrays have inconsistent dimensions")
        if np.any(self.budgets < 0) or np.any(self.effectiveness < 0) or np.any(self.costs < 0):
            raise DomainError("budgets, costs and effectiveness must be non-negative")
        if not self.eps > 0:
            raise DomainError("eps must be positive")

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.costs.shape

    def to_dict(self) -> dict:
        return {
            "s0": self.s0.tolist(),
            "costs": self.costs.tolist(),
            "effectiveness": self.effectiveness.tolist(),
            "budgets": self.budgets.tolist(),
            "slope": self.slope,
            "drop": self.drop,
            "eps": self.eps,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "IpInstance":
        try:
            return cls(
                d["s0"], d["costs"], d["effectiveness"], d["budgets"],
                d.get("slope", 1.0), d.get("drop", 0.0), d.get("eps", 1e-6),
            )
        except KeyError as exc:
            raise DomainError(f"IP instance lacks field {exc}") from None


def condition_trajectory(inst: IpInstance, u: np.ndarray) -> np.ndarray:
    """Conditions ``s[a, t]`` for t = 1..T under the binary plan ``u[a, m, t]``."""
    A, M, T = inst.dims
    s = np.empty((A, T))
    prev = inst.s0
    for t in range(T):
        prev = inst.slope * prev - inst.drop + u[:, :, t] @ inst.effectiveness
        s[:, t] = prev
    return s


def _affine_form(inst: IpInstance):
    """``s[a, t] = base[a, t] + G[a, t, :] @ u_flat``."""
    A, M, T = inst.dims
    n = A * M * T
    base = np.empty((A, T))
    G = np.zeros((A, T, n))
    prev = inst.s0.copy()
    for t in range(T):
        prev = inst.slope * prev - inst.drop
        base[:, t] = prev
    for a in range(A):
        for t in range(T):
            for tau in range(t + 1):
                for m in range(M):
                    G[a, t, (a * M + m) * T + tau] = inst.slope ** (t - tau) * inst.effectiveness[m]
    return base, G


@dataclass(frozen=True)
class IpSolution:
    u: np.ndarray  # (A, M, T) of 0/1
    s: np.ndarray  # (A, T)
    objective: float
    nodes: int

    def to_dict(self) -> dict:
        return {"u": self.u.astype(int).tolist(), "s": self.s.tolist(), "objective": self.objective, "nodes": self.nodes}


def build_relaxation(inst: IpInstance):
    """LP relaxation data ``(c, const, A_ub, b_ub)`` over ``u`` in [0, 1]."""
    A, M, T = inst.dims
    n = A * M * T
    base, G = _affine_form(inst)
    c = G.sum(axis=(0, 1))
    const = float(base.sum())
    rows, rhs = [], []
    for t in range(T):
        row = np.zeros(n)
        for a in range(A):
            for m in range(M):
                row[(a * M + m) * T + t] = inst.costs[a, m, t]
        rows.append(row)
        rhs.append(inst.budgets[t])
    for a in range(A):
        for t in range(T):
            row = np.zeros(n)
            row[[(a * M + m) * T + t for m in range(M)]] = 1.0
            rows.append(row)
            rhs.append(1.0)
    for a in range(A):
        for t in range(T):
            rows.append(-G[a, t])
            rhs.append(base[a, t] - inst.eps)
    for j in range(n):
        row = np.zeros(n)
        row[j] = 1.0
        rows.append(row)
        rhs.append(1.0)
    return c, const, np.array(rows), np.array(rhs)


def solve_ip(inst: IpInstance) -> IpSolution:
    """Optimal binary schedule by depth-first branch and bound.

    Branches on the first fractional variable, exploring ``u = 1`` before
    ``u = 0``; nodes are pruned by their LP-relaxation bound.

    Raises
    ------
    InfeasibleError
        If no schedule keeps every condition at or above ``eps``.
    """
    A, M, T = inst.dims
    n = A * M * T
    c, const, A_ub, b_ub = build_relaxation(inst)
    best_val = -np.inf
    best_u = None
    nodes = 0
    stack: list[dict[int, int]] = [{}]
    while stack:
        fixed = stack.pop()
        nodes += 1
        if fixed:
            idx = np.array(list(fixed))
            A_eq = np.zeros((len(fixed), n))
            A_eq[np.arange(len(fixed)), idx] = 1.0
            b_eq = np.array([fixed[j] for j in idx], dtype=float)
        else:
            A_eq, b_eq = None, None
        try:
            res = linprog_max(c, A_ub, b_ub, A_eq, b_eq)
        except InfeasibleError:
            continue
        if res.objective + const <= best_val + 1e-9:
            continue
        frac = np.flatnonzero(np.abs(res.x - np.round(res.x)) > INT_TOL)
        if frac.size == 0:
            best_val = res.objective + const
            best_u = np.round(res.x)
            continue
        j = int(frac[0])
        # stack is LIFO: push the u=0 child first so u=1 is explored first
        stack.append({**fixed, j: 0})
        stack.append({**fixed, j: 1})
    if best_u is None:
        raise InfeasibleError("no binary schedule keeps every condition at or above eps")
    u = best_u.reshape(A, M, T).astype(int)
    s = condition_trajectory(inst, u)
    return IpSolution(u=u, s=s, objective=float(s.sum()), nodes=nodes)
