
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, stats

from bridgelife.empirical import stochastic as sc
from bridgelife.errors import DomainError


@settings(max_examples=30)
@given(st.floats(0.5, 20), st.floats(0.1, 5))
def test_gamma_density_integrates_to_one(shape, rate):
    total, _ = integrate.quad(lambda x: sc.gamma_process_density(shape, rate, x) if x > 0 else 0.0, 0, np.inf, limit=200)
    assert total == pytest.approx(1.0, abs=1e-6)


@given(st.floats(0.2, 30), st.floats(0.1, 5), st.floats(0.01, 30))
def test_gamma_density_matches_scipy(shape, rate, x):
    assert sc.gamma_process_density(shape, rate, x) == pytest.approx(stats.gamma.pdf(x, shape, scale=1 / rate), rel=1e-10, abs=1e-300)


def test_ar_forecast():
    assert sc.ar_forecast([1.0, 0.5, 0.25], [8.0, 4.0]) == pytest.approx(1.0 + 0.5 * 4.0 + 0.25 * 8.0)
    assert sc.ar_forecast([3.0], []) == 3.0
    with pytest.raises(DomainError):
        sc.ar_forecast([1.0, 0.5, 0.25], [1.0])


@given(st.lists(st.floats(-50, 50), min_size=1, max_size=10))
def test_choice_probability_simplex(v):
    p = sc.choice_probability(v)
    assert p.sum() == pytest.approx(1.0) and np.all(p >= 0)
    order = np.argsort(v, kind="stable")
    assert np.all(np.diff(p[order]) >= 0)


def test_choice_probability_shift_invariant():
    v = np.array([1.0, 2.0, 3.0])
    assert np.allclose(sc.choice_probability(v), sc.choice_probability(v + 700))
    assert np.allclose(sc.choice_probability([0.0, 0.0]), [0.5, 0.5])
