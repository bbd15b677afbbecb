import math

import pytest
from hypothesis import given, strategies as st

from bridgelife.errors import DomainError
from bridgelife.units import (
    CONDITION_LABELS,
    SECONDS_PER_YEAR,
    BridgeRecord,
    ServiceLifeBreakdown,
    _UNITS,
    convert,
    rating_label,
    remaining_life,
)


def test_rating_labels_fixed_points():
    assert rating_label(0) == "FAILED"
    assert rating_label(9) == "EXCELLENT"
    assert rating_label(5) == "FAIR"


@pytest.mark.parametrize("bad", [10, -1, 3.5, True])
def test_rating_out_of_range(bad):
    with pytest.raises(DomainError):
        rating_label(bad)


def test_rating_labels_bijective():
    labels = [rating_label(r) for r in range(10)]
    assert len(set(labels)) == 10
    assert set(labels) == set(CONDITION_LABELS.values())


@pytest.mark.parametrize("T,t,expected", [(50, 20, 30), (50, 50, 0), (30, 40, -10)])
def test_remaining_life(T, t, expected):
    assert remaining_life(T, t) == expected


def test_declared_factors():
    assert convert(1, "yr", "s") == SECONDS_PER_YEAR == 3.1536e7
    assert convert(1, "in", "mm") == 25.4
    assert convert(4.9, "mil", "mm") == pytest.approx(0.12446)


def test_dimension_mismatch():
    with pytest.raises(DomainError):
        convert(1, "mm", "kg")
    with pytest.raises(DomainError):
        convert(1, "mm", "furlong")


_PAIRS = [(a, b) for a in _UNITS for b in _UNITS if _UNITS[a][0] == _UNITS[b][0]]


@given(st.sampled_from(_PAIRS), st.floats(1e-6, 1e6))
def test_round_trip(pair, x):
    a, b = pair
    assert convert(convert(x, a, b), b, a) == pytest.approx(x, rel=1e-12)


@given(st.floats(0, 1e4))
def test_remaining_life_zero_age(T):
    assert remaining_life(T, 0) == T


def test_breakdown_total_and_flags():
    b = ServiceLifeBreakdown.compose(1.0, 2.0, 3.0, {"t1": "fick"})
    assert b.total == 6.0
    open_ended = ServiceLifeBreakdown.compose(math.inf, 0.0, 0.0)
    assert open_ended.total is None
    assert open_ended.to_dict()["t1"] is None
    with pytest.raises(DomainError):
        ServiceLifeBreakdown.compose(-1.0, 0.0, 0.0)


def _record(**kw):
    base = dict(
        structure_id="A", inspection_year=2010, district="1", county="2", year_built=1990,
        aadt=100.0, design_load="5", span_type="302", skew=0.0, structure_length=100.0, deck_width=30.0,
        ratings={"structural_evaluation": 6},
    )
    base.update(kw)
    return BridgeRecord(**base)


def test_bridge_record_validation():
    assert _record().age == 20
    with pytest.raises(DomainError):
        _record(inspection_year=1980)
    with pytest.raises(DomainError):
        _record(deck_width=0.0)
    with pytest.raises(DomainError):
        _record(ratings={"deck": 11})
