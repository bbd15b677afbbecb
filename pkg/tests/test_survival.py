import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from bridgelife.empirical import survival as sv
from bridgelife.errors import DomainError

from helpers import censored_weibull_sample, weibull_grid_oracle


def test_survival_and_pdf():
    w = sv.WeibullParams(2.0, 10.0)
    assert sv.weibull_survival(w, 10.0) == pytest.approx(np.exp(-1))
    assert sv.weibull_survival(w, 0.0) == 1.0
    t = 7.0
    assert sv.hazard(sv.weibull_pdf(w, t), sv.weibull_survival(w, t)) == pytest.approx(2 * t / 100)


def test_hearn():
    p = sv.hearn_discrete_probability([30, 10, 20, 40])
    assert p.tolist() == [0.25, 0.5, 0.75, 1.0]
    assert sv.hearn_model_error([0.25, 0.5], [0.2, 0.6]) == pytest.approx(0.0125)


def test_fit_matches_grid_oracle():
    s = censored_weibull_sample(seed=0)
    fit = sv.fit_weibull_censored(s)
    assert abs(fit.beta - 2.0) < 0.2 and abs(fit.eta - 10.0) < 1.0
    b, e = weibull_grid_oracle(s, np.arange(1.5, 2.8, 0.01), np.arange(8.0, 13.0, 0.01))
    assert abs(fit.beta - b) <= 0.01 and abs(fit.eta - e) <= 0.01


def test_fit_is_stationary():
    s = censored_weibull_sample(n=300, seed=3)
    fit = sv.fit_weibull_censored(s)
    base = sv.weibull_censored_loglik(s, fit.beta, fit.eta)
    for db, de in [(1e-3, 0), (-1e-3, 0), (0, 1e-3), (0, -1e-3)]:
        assert sv.weibull_censored_loglik(s, fit.beta + db, fit.eta + de) <= base


@settings(max_examples=25)
@given(st.integers(0, 10_000))
def test_fit_invariant_to_duplication(seed):
    s = censored_weibull_sample(n=60, seed=seed)
    assume(s.d.sum() >= 2)
    a = sv.fit_weibull_censored(s)
    b = sv.fit_weibull_censored(sv.CensoredSample(np.tile(s.t, 2), np.tile(s.d, 2)))
    assert b.beta == pytest.approx(a.beta, rel=1e-7)
    assert b.eta == pytest.approx(a.eta, rel=1e-7)


def test_fit_scale_equivariance():
    s = censored_weibull_sample(n=200, seed=5)
    a = sv.fit_weibull_censored(s)
    b = sv.fit_weibull_censored(sv.CensoredSample(s.t * 3.0, s.d))
    assert b.beta == pytest.approx(a.beta, rel=1e-7)
    assert b.eta == pytest.approx(3.0 * a.eta, rel=1e-7)


def test_all_censored_rejected():
    with pytest.raises(DomainError):
        sv.fit_weibull_censored(sv.CensoredSample(np.array([1.0, 2.0, 3.0]), np.array([0, 0, 1])))


def test_sample_validation():
    with pytest.raises(DomainError):
        sv.CensoredSample(np.array([1.0, -2.0]), np.array([1, 1]))
    with pytest.raises(DomainError):
        sv.CensoredSample(np.array([1.0, 2.0]), np.array([1, 2]))
