import pytest
from hypothesis import given, strategies as st

from bridgelife.errors import DomainError
from bridgelife.metrics import ConfusionMatrix, metrics, one_vs_rest, r2


def test_worked_example():
    m = metrics(ConfusionMatrix(TP=50, FP=10, FN=10, TN=30))
    assert m["precision"] == pytest.approx(50 / 60)
    assert m["recall"] == pytest.approx(50 / 60)
    assert m["accuracy"] == pytest.approx(0.8)
    assert m["f1"] == pytest.approx(50 / 60)


def test_undefined_ratios():
    m = metrics(ConfusionMatrix(0, 0, 0, 5))
    assert m["precision"] is None and m["recall"] is None and m["f1"] is None
    assert m["accuracy"] == 1.0
    assert metrics(ConfusionMatrix(0, 0, 0, 0))["accuracy"] is None
    with pytest.raises(DomainError):
        ConfusionMatrix(-1, 0, 0, 0)


@given(st.integers(1, 100), st.integers(0, 100), st.integers(0, 100), st.integers(0, 100))
def test_f1_is_harmonic_mean(tp, fp, fn, tn):
    m = metrics(ConfusionMatrix(tp, fp, fn, tn))
    assert m["f1"] == pytest.approx(2 * tp / (2 * tp + fp + fn))
    assert min(m["precision"], m["recall"]) - 1e-12 <= m["f1"] <= max(m["precision"], m["recall"]) + 1e-12


def test_one_vs_rest():
    cms = one_vs_rest([9, 8, 8, 7], [9, 8, 7, 7])
    assert cms[8] == ConfusionMatrix(1, 0, 1, 2)
    assert cms[7] == ConfusionMatrix(1, 1, 0, 2)
    assert all(cm.total == 4 for cm in cms.values())


def test_r2():
    assert r2([1, 2, 3], [1, 2, 3]) == 1.0
    assert r2([1, 2, 3], [2, 2, 2]) == pytest.approx(0.0)
    assert r2([4, 4], [4, 5]) is None
    with pytest.raises(DomainError):
        r2([1], [1, 2])
