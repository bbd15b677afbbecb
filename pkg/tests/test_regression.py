import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bridgelife.empirical import regression as rg
from bridgelife.errors import DomainError


def test_catalog_intercepts():
    assert rg.catalog_model("jiang.concrete.superstructure")(0.0) == 9.0
    for kind in ("granite", "steel", "timber", "concrete"):
        m = rg.catalog_model(f"agrawal.curb.{kind}")
        assert m(0.0) == 7.0 and m.scale == "NY 1-7"
    assert [rg.eval_hatami(a, 0.0) for a in (50, 300, 900)] == [10.189, 10.754, 10.372]


def test_catalog_values():
    assert rg.catalog_model("jiang.concrete.superstructure")(10) == pytest.approx(6.9603471, abs=1e-7)
    assert rg.catalog_model("agrawal.curb.concrete")(10) == pytest.approx(6.464274, abs=1e-7)


def test_hatami_band_edges():
    mid = rg.HATAMI_BANDS[1]
    assert rg.eval_hatami(100, 5) == mid(5)
    assert rg.eval_hatami(500, 5) == mid(5)
    assert rg.eval_hatami(99.9, 5) == rg.HATAMI_BANDS[0](5)
    assert rg.eval_hatami(500.1, 5) == rg.HATAMI_BANDS[2](5)
    assert rg.catalog_model("hatami.adtt", adtt=300)(5) == mid(5)
    with pytest.raises(DomainError):
        rg.catalog_model("hatami.adtt")


def test_unknown_model():
    with pytest.raises(DomainError):
        rg.catalog_model("nope")


def test_stukhart():
    m = rg.PiecewiseLinearModel(9.0, -0.05, -0.1, -0.02)
    assert m(0) == 9.0
    assert m(25) == pytest.approx(9.0 - 1.25)
    assert m(45) == pytest.approx(9.0 - 1.25 - 2.0)
    assert m(55) == pytest.approx(9.0 - 1.25 - 2.0 - 0.2)


@given(st.floats(-1, 0), st.floats(-1, 0), st.floats(-1, 0), st.sampled_from([25.0, 45.0]))
def test_stukhart_continuous(b1, b2, b3, knot):
    m = rg.PiecewiseLinearModel(9.0, b1, b2, b3)
    assert m(knot - 1e-9) == pytest.approx(m(knot + 1e-9), abs=1e-7)


def test_exponential():
    assert rg.eval_exponential(9.0, -50.0, 50.0) == pytest.approx(9.0 / math.e)
    assert rg.exponential_life(-37.5) == 37.5


def scan_oracle(f, threshold, horizon, h=1e-4):
    t = np.arange(0.0, horizon + h, h)
    vals = np.array([f(x) for x in t])
    hit = np.flatnonzero(vals <= threshold)
    return None if hit.size == 0 else t[hit[0]]


@pytest.mark.parametrize("model_id,threshold", [
    ("jiang.concrete.superstructure", 5.0),
    ("agrawal.curb.concrete", 4.0),
    ("agrawal.curb.timber", 5.5),
])
def test_first_crossing_matches_fine_scan(model_id, threshold):
    f = rg.catalog_model(model_id)
    t = rg.service_life_first_crossing(f, threshold, 60.0)
    assert t == pytest.approx(scan_oracle(f, threshold, 60.0), abs=1.1e-4)


def test_first_crossing_edge_cases():
    f = rg.catalog_model("jiang.concrete.superstructure")
    assert rg.service_life_first_crossing(f, 9.5, 10) == 0.0
    assert rg.service_life_first_crossing(f, 0.0, 10) is None


def test_first_crossing_takes_first_root():
    # dips below 5 near t=2, recovers, then falls again later
    f = lambda t: 5.0 + (t - 2.0) ** 2 - 0.5 if t < 4 else 8.5 - (t - 4.0)
    assert rg.service_life_first_crossing(f, 5.0, 10) == pytest.approx(2 - math.sqrt(0.5), abs=1e-6)


def test_polynomial_from_sequence():
    m = rg.polynomial_from_sequence([1, 2, 3])
    assert m(2.0) == 17.0
    with pytest.raises(DomainError):
        m(-1.0)
