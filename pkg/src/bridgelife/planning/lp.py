"""Markov-chain linear program for network maintenance planning.

Groups ``s`` of ``N_s`` facilities sit in condition states ``i`` (0 is the
best). Each period a share ``x[s, i, m, t]`` of group ``s`` in state ``i``
gets treatment ``m``, after which it moves with ``tpms[m, s]``. The objective
accumulates the best-state share over all periods, subject to per-period
budgets.

Variables are ordered ``x`` (C-order over ``(S, I, M, T)``) then ``alpha``
(C-order over ``(S, I, T)``).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DomainError
from ..empirical.markov import validate_tpm
from .simplex import FEAS_TOL, linprog_max


@dataclass(frozen=True)
class PlanningInstance:
    N: np.ndarray  # (S,) facilities per group
    budgets: np.ndarray  # (T,)
    costs: np.ndarray  # (M, S, T) unit cost c[m, s, t]
    tpms: np.ndarray  # (M, S, I, I)
    alpha0: np.ndarray  # (S, I)
    delta: float | None = None  # minimum best-state share, optional

    def __post_init__(self):
        for name in ("N", "budgets", "costs", "tpms", "alpha0"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        M, S, I, I2 = self.tpms.shape
        T = self.budgets.shape[0]
        if I != I2 or self.N.shape != (S,) or self.costs.shape != (M, S, T) or self.alpha0.shape != (S, I):
            raise DomainError("instance arrays have inconsistent dimensions")
        if np.any(self.costs < 0) or np.any(self.budgets < 0) or np.any(self.N <= 0):
            raise DomainError("costs and budgets must be non-negative and group sizes positive")
        for m in range(M):
            for s in range(S):
                validate_tpm(self.tpms[m, s])
        if np.any(self.alpha0 < 0) or np.any(np.abs(self.alpha0.sum(axis=1) - 1.0) > 1e-9):
            raise DomainError("initial distributions must lie on the simplex")
        if self.delta is not None and not 0 <= self.delta <= 1:
            raise DomainError("delta must lie in [0, 1]")

    @property
    def dims(self) -> tuple[int, int, int, int]:
        M, S, I, _ = self.tpms.shape
        return S, I, M, self.budgets.shape[0]

    def to_dict(self) -> dict:
        return {
            "N": self.N.tolist(),
            "budgets": self.budgets.tolist(),
            "costs": self.costs.tolist(),
            "tpms": self.tpms.tolist(),
            "alpha0": self.alpha0.tolist(),
            "delta": self.delta,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PlanningInstance":
        try:
            return cls(d["N"], d["budgets"], d["costs"], d["tpms"], d["alpha0"], d.get("delta"))
        except KeyError as exc:
            raise DomainError(f"planning instance lacks field {exc}") from None


@dataclass(frozen=True)
class LinearProgram:
    c: np.ndarray
    A_eq: np.ndarray
    b_eq: np.ndarray
    A_ub: np.ndarray
    b_ub: np.ndarray
    families: dict = field(default_factory=dict)  # family name -> row count


def build_lp(inst: PlanningInstance) -> LinearProgram:
    """Assemble the LP; see :class:`LinearProgram` for the row families."""
    S, I, M, T = inst.dims
    nx = S * I * M * T
    na = S * I * T
    n = nx + na

    def xi(s, i, m, t):
        return ((s * I + i) * M + m) * T + t

    def ai(s, i, t):
        return nx + (s * I + i) * T + t

    c = np.zeros(n)
    for s in range(S):
        for t in range(T - 1):
            c[ai(s, 0, t)] += 1.0
        c[ai(s, 0, T - 1)] += 1.0

    eq_rows, eq_rhs = [], []
    for s in range(S):
        for i in range(I):
            row = np.zeros(n)
            row[ai(s, i, 0)] = 1.0
            eq_rows.append(row)
            eq_rhs.append(inst.alpha0[s, i])
    n_init = len(eq_rows)
    for s in range(S):
        for i in range(I):
            for t in range(T - 1):
                row = np.zeros(n)
                row[ai(s, i, t + 1)] = 1.0
                for j in range(I):
                    for m in range(M):
                        row[xi(s, j, m, t)] -= inst.tpms[m, s, j, i]
                eq_rows.append(row)
                eq_rhs.append(0.0)
    n_coup = len(eq_rows) - n_init
    for s in range(S):
        for i in range(I):
            for t in range(T):
                row = np.zeros(n)
                for m in range(M):
                    row[xi(s, i, m, t)] = 1.0
                row[ai(s, i, t)] = -1.0
                eq_rows.append(row)
                eq_rhs.append(0.0)
    n_alloc = len(eq_rows) - n_init - n_coup

    ub_rows, ub_rhs = [], []
    for t in range(T):
        row = np.zeros(n)
        for s in range(S):
            for i in range(I):
                for m in range(M):
                    row[xi(s, i, m, t)] = inst.costs[m, s, t] * inst.N[s]
        ub_rows.append(row)
        ub_rhs.append(inst.budgets[t])
    families = {"init": n_init, "coupling": n_coup, "allocation": n_alloc, "budget": T}
    if inst.delta is not None:
        for s in range(S):
            for t in range(T):
                row = np.zeros(n)
                row[ai(s, 0, t)] = -1.0
                ub_rows.append(row)
                ub_rhs.append(-inst.delta)
        families["delta"] = S * T
    return LinearProgram(
        c=c,
        A_eq=np.array(eq_rows).reshape(-1, n),
        b_eq=np.array(eq_rhs),
        A_ub=np.array(ub_rows).reshape(-1, n),
        b_ub=np.array(ub_rhs),
        families=families,
    )


@dataclass(frozen=True)
class PolicySolution:
    x: np.ndarray  # (S, I, M, T)
    alpha: np.ndarray  # (S, I, T)
    z: np.ndarray  # (S, M, T)
    objective: float
    alternate_optima: bool = False

    def to_dict(self) -> dict:
        return {
            "x": self.x.tolist(),
            "alpha": self.alpha.tolist(),
            "z": self.z.tolist(),
            "objective": self.objective,
            "alternate_optima": self.alternate_optima,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PolicySolution":
        return cls(
            np.asarray(d["x"], dtype=float),
            np.asarray(d["alpha"], dtype=float),
            np.asarray(d["z"], dtype=float),
            float(d["objective"]),
            bool(d.get("alternate_optima", False)),
        )

    def trajectory_rows(self) -> list[tuple[int, int, int, float]]:
        """``(group, state, period, share)`` rows, 1-based labels."""
        S, I, T = self.alpha.shape
        return [(s + 1, i + 1, t + 1, float(self.alpha[s, i, t])) for s in range(S) for i in range(I) for t in range(T)]


def objective_value(inst: PlanningInstance, alpha: np.ndarray) -> float:
    T = alpha.shape[2]
    return float(alpha[:, 0, : T - 1].sum() + alpha[:, 0, T - 1].sum())


def recover_policy(inst: PlanningInstance, x_vec: np.ndarray, alternate_optima: bool = False) -> PolicySolution:
    """Rebuild shares, the condition trajectory and treatment totals from an LP solution.

    The trajectory is replayed from ``alpha0`` through the coupling equation.
    """
    S, I, M, T = inst.dims
    x = np.asarray(x_vec[: S * I * M * T], dtype=float).reshape(S, I, M, T)
    x = np.where(np.abs(x) < 1e-15, 0.0, x)
    alpha = np.zeros((S, I, T))
    alpha[:, :, 0] = inst.alpha0
    for t in range(T - 1):
        alpha[:, :, t + 1] = np.einsum("sjm,msji->si", x[:, :, :, t], inst.tpms)
    resid = np.abs(x.sum(axis=2) - alpha).max()
    if resid > FEAS_TOL:
        raise RuntimeError(f"allocation residual {resid:.3g} exceeds tolerance")
    z = x.sum(axis=1)
    return PolicySolution(x, alpha, z, objective_value(inst, alpha), alternate_optima)


def solve(inst: PlanningInstance) -> PolicySolution:
    """Optimal maintenance policy for the instance."""
    lp = build_lp(inst)
    res = linprog_max(lp.c, lp.A_ub, lp.b_ub, lp.A_eq, lp.b_eq)
    return recover_policy(inst, res.x, res.alternate_optima)


def verify_solution(inst: PlanningInstance, sol: PolicySolution) -> dict[str, float]:
    """Largest violation of each constraint family, computed from the instance alone."""
    S, I, M, T = inst.dims
    x, alpha = np.asarray(sol.x), np.asarray(sol.alpha)
    if x.shape != (S, I, M, T) or alpha.shape != (S, I, T):
        raise DomainError("solution shape does not match the instance")
    out = {
        "nonnegativity": float(max(0.0, -x.min(), -alpha.min())),
        "init": float(np.abs(alpha[:, :, 0] - inst.alpha0).max()),
        "allocation": float(np.abs(x.sum(axis=2) - alpha).max()),
    }
    coup = 0.0
    for t in range(T - 1):
        for s in range(S):
            nxt = np.zeros(I)
            for m in range(M):
                nxt += x[s, :, m, t] @ inst.tpms[m, s]
            coup = max(coup, float(np.abs(alpha[s, :, t + 1] - nxt).max()))
    out["coupling"] = coup
    spend = np.array([sum(x[s, i, m, t] * inst.costs[m, s, t] * inst.N[s] for s in range(S) for i in range(I) for m in range(M)) for t in range(T)])
    out["budget"] = float(max(0.0, (spend - inst.budgets).max()))
    if inst.delta is not None:
        out["delta"] = float(max(0.0, (inst.delta - alpha[:, 0, :]).max()))
    return out
