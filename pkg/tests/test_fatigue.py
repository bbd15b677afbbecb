import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bridgelife import fatigue as fa
from bridgelife.errors import DomainError

# hand-counted rainflow histograms; the first is the standard textbook history
RAINFLOW_FIXTURES = [
    ([-2, 1, -3, 5, -1, 3, -4, 4, -2], {3: 0.5, 4: 1.5, 6: 0.5, 8: 1.0, 9: 0.5}),
    ([0, 2, 0], {2: 1.0}),
    ([0, 1, 2, 3], {3: 0.5}),
    ([0, 4, 1, 3, 0], {2: 1.0, 4: 1.0}),
    ([0, 0, 5, 5, 5, 0], {5: 1.0}),
]


def as_dict(h):
    return dict(zip(h.S_r, h.n))


@pytest.mark.parametrize("history,expected", RAINFLOW_FIXTURES)
def test_rainflow_fixtures(history, expected):
    assert as_dict(fa.rainflow_count(history)) == expected


def test_reversals():
    assert fa.reversals([0, 1, 1, 2, 1, 0, 3]) == [0, 2, 0, 3]
    with pytest.raises(DomainError):
        fa.reversals([0, math.nan])


histories = st.lists(st.integers(-20, 20), min_size=2, max_size=60).filter(lambda h: len(set(h)) > 1)


@given(histories)
def test_rainflow_reversal_invariance(h):
    assert as_dict(fa.rainflow_count(h)) == as_dict(fa.rainflow_count(h[::-1]))


@given(histories)
def test_rainflow_conserves_half_cycles(h):
    r = fa.reversals(h)
    assert fa.rainflow_count(h).total_cycles == pytest.approx((len(r) - 1) / 2)


@given(histories)
def test_rainflow_largest_range(h):
    assert max(fa.rainflow_count(h).S_r) == max(h) - min(h)


def test_simple_range_count():
    assert as_dict(fa.simple_range_count([0, 2, 1, 3])) == {2: 1.0, 1: 0.5}


def test_peak_count():
    h = fa.peak_count([0, 3, -2, 1, -1, 0], reference=0.0)
    # peaks 3, 1; valleys -2, -1 -> pairs 5 and 2
    assert as_dict(h) == {5: 1.0, 2: 1.0}


def test_level_crossing_count():
    h = fa.level_crossing_count([0, 2, -2, 0], levels=[-2, -1, 1, 2], reference=0.0)
    assert as_dict(h) == {4.0: 1.0}


histograms = st.lists(
    st.tuples(st.floats(0.1, 50), st.floats(0.5, 1e6)), min_size=1, max_size=20
).map(fa.StressRangeHistogram.from_pairs)


@given(histograms)
def test_effective_range_cube_identity(h):
    S_re = fa.effective_stress_range(h)
    lhs = sum(n * s**3 for s, n in zip(h.S_r, h.n))
    assert lhs == pytest.approx(h.total_cycles * S_re**3, rel=1e-9)


def test_effective_range_value():
    h = fa.StressRangeHistogram((2.0, 4.0), (1.0, 1.0))
    assert fa.effective_stress_range(h) == pytest.approx(3.30192724889462668, rel=1e-14)


def test_miner_single_bin():
    d = fa.DetailConstant(A=44e8, CAFL=10.0)
    S = 12.0
    h = fa.StressRangeHistogram((S,), (fa.aashto_sn(d.A, S),))
    assert fa.miner_damage(h, d) == pytest.approx(1.0, rel=1e-15)


def test_cafl_policies():
    d = fa.DetailConstant(A=44e8, CAFL=10.0)
    h = fa.StressRangeHistogram((5.0, 12.0), (1e6, 1e6))
    above = 1e6 * 12**3 / 44e8
    assert fa.miner_damage(h, d, "infinite") == pytest.approx(above)
    assert fa.miner_damage(h, d, "extend") == pytest.approx(above + 1e6 * 125 / 44e8)
    with pytest.raises(DomainError):
        fa.miner_damage(h, d, "error")
    with pytest.raises(DomainError):
        fa.miner_damage(h, d, "ignore")


def test_sn_curves():
    assert fa.sn_cycles(1e12, -3, 10) == pytest.approx(1e9)
    assert fa.aashto_sn(44e8, 10) == pytest.approx(4.4e6)


def test_aashto_remaining_life_exact():
    args = dict(R_R=1.3, A=44e8, n=1.0, ADTT_SL=1500, R_s=1.0, S_r=4.0, a=20.0)
    F = {k: Fraction(v) for k, v in args.items()}
    oracle = F["R_R"] * F["A"] / (365 * F["n"] * F["ADTT_SL"] * (F["R_s"] * F["S_r"]) ** 3) - F["a"]
    assert fa.aashto_remaining_life(**args) == pytest.approx(float(oracle), rel=1e-14)


def test_histogram_csv_round_trip():
    h = fa.StressRangeHistogram((1.5, 3.25), (10.0, 0.5))
    assert fa.StressRangeHistogram.from_csv(h.to_csv()) == h


def test_read_stress_history():
    assert fa.read_stress_history("stress\n1\n-2.5\n\n3\n") == [1.0, -2.5, 3.0]
    with pytest.raises(DomainError):
        fa.read_stress_history("1\nx\n")


def test_random_histories_numpy():
    rng = np.random.default_rng(1)
    for _ in range(200):
        h = rng.integers(-9, 10, size=40).tolist()
        if len(set(h)) < 2:
            continue
        assert as_dict(fa.rainflow_count(h)) == as_dict(fa.rainflow_count(h[::-1]))
