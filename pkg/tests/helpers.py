"""Shared generators and oracles for the test suite."""
from __future__ import annotations

import numpy as np

from bridgelife.empirical.survival import CensoredSample
from bridgelife.planning.lp import PlanningInstance


def censored_weibull_sample(beta=2.0, eta=10.0, n=1000, censor_frac=0.2, seed=0) -> CensoredSample:
    """Weibull ages where a random ``censor_frac`` are cut at a uniform fraction of their life."""
    rng = np.random.default_rng(seed)
    t = eta * rng.weibull(beta, n)
    d = np.ones(n, dtype=int)
    idx = rng.choice(n, size=int(round(censor_frac * n)), replace=False)
    t[idx] *= rng.uniform(0.0, 1.0, idx.size)
    d[idx] = 0
    return CensoredSample(t, d)


def weibull_grid_oracle(s: CensoredSample, betas: np.ndarray, etas: np.ndarray) -> tuple[float, float]:
    """Brute-force maximum of the censored log-likelihood over a rectangular grid."""
    fail = s.d == 1
    r = fail.sum()
    sum_log_fail = np.log(s.t[fail]).sum()
    best = (-np.inf, None, None)
    log_eta = np.log(etas)
    for b in betas:
        ll = r * np.log(b) - r * b * log_eta + (b - 1) * sum_log_fail - np.sum(s.t**b) * etas ** (-b)
        k = int(np.argmax(ll))
        if ll[k] > best[0]:
            best = (ll[k], float(b), float(etas[k]))
    return best[1], best[2]


def random_tpm(rng, I, triangular=True):
    P = rng.uniform(0, 1, (I, I))
    if triangular:
        P = np.triu(P)
    return P / P.sum(axis=1, keepdims=True)


def random_planning_instance(rng, S=None, I=None, M=None, T=None, delta=None) -> PlanningInstance:
    """Random instance; action 0 is do-nothing at zero cost so random policies stay within budget."""
    S = S or int(rng.integers(1, 4))
    I = I or int(rng.integers(2, 5))
    M = M or int(rng.integers(1, 4))
    T = T or int(rng.integers(1, 6))
    N = rng.uniform(1, 10, S)
    costs = rng.uniform(0.5, 5.0, (M, S, T))
    costs[0] = 0.0
    tpms = np.empty((M, S, I, I))
    for m in range(M):
        for s in range(S):
            if m == 0:
                tpms[m, s] = random_tpm(rng, I)
            else:
                # repair actions push mass toward the best state
                P = random_tpm(rng, I, triangular=False)
                P[:, 0] += rng.uniform(0, 2)
                tpms[m, s] = P / P.sum(axis=1, keepdims=True)
    alpha0 = rng.dirichlet(np.ones(I), S)
    budgets = rng.uniform(0.0, 10.0, T)
    return PlanningInstance(N=N, budgets=budgets, costs=costs, tpms=tpms, alpha0=alpha0, delta=delta)


def random_policy_value(inst: PlanningInstance, rng, n_policies: int, batch: int = 20_000) -> float:
    """Best objective over random budget-feasible policies, simulated forward.

    Each policy splits every (group, state) share over the actions, either at
    random or all on one action; treatment spend above the budget is scaled
    back onto do-nothing. The objective is the best-state share summed over
    groups and periods.
    """
    N, B, C, P, a0 = inst.N, inst.budgets, inst.costs, inst.tpms, inst.alpha0
    M, S, T = C.shape
    I = a0.shape[1]
    best = -np.inf
    done = 0
    while done < n_policies:
        K = min(batch, n_policies - done)
        alpha = np.broadcast_to(a0, (K, S, I)).copy()
        total = np.zeros(K)
        ok = np.ones(K, dtype=bool)
        for t in range(T):
            total += alpha[:, :, 0].sum(axis=1)
            if inst.delta is not None:
                ok &= np.all(alpha[:, :, 0] >= inst.delta - 1e-12, axis=1)
            w = rng.dirichlet(np.ones(M), (K, S, I))
            pure = rng.random((K, S, I)) < 0.5
            onehot = np.eye(M)[rng.integers(0, M, (K, S, I))]
            w = np.where(pure[..., None], onehot, w)
            x = alpha[..., None] * w
            spend = np.einsum("ksim,s,ms->k", x, N, C[:, :, t])
            lam = np.where(spend > B[t], B[t] / np.maximum(spend, 1e-300), 1.0)
            x[..., 1:] *= lam[:, None, None, None]
            x[..., 0] = alpha - x[..., 1:].sum(axis=3)
            alpha = np.einsum("ksim,msij->ksj", x, P)
        if ok.any():
            best = max(best, float(total[ok].max()))
        done += K
    return best


def random_ip_instance(rng, max_vars=16):
    from bridgelife.planning.ip import IpInstance

    while True:
        A, M, T = (int(v) for v in rng.integers(1, 5, 3))
        if A * M * T <= max_vars:
            break
    return IpInstance(
        s0=rng.uniform(3, 8, A),
        costs=rng.uniform(0.5, 4.0, (A, M, T)),
        effectiveness=rng.uniform(0.2, 2.0, M),
        budgets=rng.uniform(0.0, 6.0, T),
        slope=float(rng.uniform(0.8, 1.0)),
        drop=float(rng.uniform(0.0, 1.0)),
    )


def enumerate_ip(inst):
    """Exhaustive optimum over every 0-1 plan; ``None`` if none is feasible."""
    import itertools

    A, M, T = inst.costs.shape
    best = None
    for bits in itertools.product((0, 1), repeat=A * M * T):
        u = np.array(bits, dtype=float).reshape(A, M, T)
        if np.any(u.sum(axis=1) > 1):
            continue
        if np.any(np.einsum("amt,amt->t", u, inst.costs) > inst.budgets + 1e-12):
            continue
        s, prev = [], inst.s0
        for t in range(T):
            prev = inst.slope * prev - inst.drop + u[:, :, t] @ inst.effectiveness
            s.append(prev)
        s = np.array(s)
        if np.any(s < inst.eps - 1e-12):
            continue
        if best is None or s.sum() > best:
            best = float(s.sum())
    return best
