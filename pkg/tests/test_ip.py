import numpy as np
import pytest

from bridgelife.errors import InfeasibleError
from bridgelife.planning import ip
from bridgelife.planning.simplex import linprog_max

from helpers import enumerate_ip, random_ip_instance


@pytest.mark.parametrize("seed", range(15))
def test_matches_enumeration(seed):
    inst = random_ip_instance(np.random.default_rng(seed), max_vars=12)
    oracle = enumerate_ip(inst)
    if oracle is None:
        with pytest.raises(InfeasibleError):
            ip.solve_ip(inst)
        return
    sol = ip.solve_ip(inst)
    assert sol.objective == pytest.approx(oracle, abs=1e-9)
    assert np.allclose(sol.s, ip.condition_trajectory(inst, sol.u))


def test_zero_budget_means_no_treatment():
    inst = random_ip_instance(np.random.default_rng(3))
    inst = ip.IpInstance(inst.s0, inst.costs, inst.effectiveness, np.zeros_like(inst.budgets), inst.slope, inst.drop)
    try:
        sol = ip.solve_ip(inst)
    except InfeasibleError:
        return
    assert sol.u.sum() == 0


def test_objective_monotone_in_budget():
    rng = np.random.default_rng(8)
    base = random_ip_instance(rng, max_vars=12)
    prev = -np.inf
    for k in (0.5, 1.0, 2.0, 4.0):
        inst = ip.IpInstance(base.s0 + 5, base.costs, base.effectiveness, base.budgets * k, base.slope, base.drop)
        val = ip.solve_ip(inst).objective
        assert val >= prev - 1e-9
        prev = val


def test_ip_below_relaxation():
    for seed in range(10):
        inst = random_ip_instance(np.random.default_rng(100 + seed), max_vars=12)
        inst = ip.IpInstance(inst.s0 + 5, inst.costs, inst.effectiveness, inst.budgets, inst.slope, inst.drop)
        c, const, A_ub, b_ub = ip.build_relaxation(inst)
        bound = linprog_max(c, A_ub, b_ub).objective + const
        assert ip.solve_ip(inst).objective <= bound + 1e-9


def test_infeasible_when_condition_collapses():
    inst = ip.IpInstance(s0=[1.0], costs=np.ones((1, 1, 2)), effectiveness=[0.1], budgets=[1.0, 1.0], drop=2.0)
    with pytest.raises(InfeasibleError):
        ip.solve_ip(inst)


def test_one_treatment_per_period():
    inst = ip.IpInstance(s0=[5.0], costs=np.zeros((1, 2, 1)), effectiveness=[1.0, 2.0], budgets=[10.0])
    sol = ip.solve_ip(inst)
    assert sol.u[0, :, 0].tolist() == [0, 1] and sol.objective == pytest.approx(7.0)
