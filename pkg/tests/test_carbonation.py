import math

import pytest
from hypothesis import given, strategies as st

from bridgelife import carbonation as cb
from bridgelife.errors import DegenerateInputWarning, DomainError, ModelInconsistentError

CONC = cb.PapadakisConcrete(CH=80.0, CSH=200.0, eps_c=0.3, eps_air=0.05, A=1750.0, d_A=2500.0)


def test_iaea_table_and_time():
    assert cb.IAEA_PERMEABILITY == {15: 17, 20: 10, 25: 6, 30: 5, 35: 4, 40: 3.5}
    assert cb.time_iaea(20.0, 20) == 4.0
    assert cb.time_iaea(0.0, 40) == 0.0
    with pytest.raises(DomainError):
        cb.time_iaea(20.0, 22)


def test_finish_table():
    assert cb.FINISH_BETA["Tiles"] == (0.21, 0.07)
    assert cb.FINISH_BETA["Plaster"][1] is None
    with pytest.raises(DomainError):
        cb.depth_empirical_wcr(10, 0.5, "Plaster", indoor=False)
    with pytest.raises(DomainError):
        cb.depth_empirical_wcr(10, 0.5, "Glitter")


def test_depth_empirical_wcr():
    # sqrt(16) * 1.0 * (4.6*0.5 - 1.76) / sqrt(7.2), mpmath
    assert cb.depth_empirical_wcr(16, 0.5) == pytest.approx(0.804984471899924013, rel=1e-14)
    indoor = cb.depth_empirical_wcr(16, 0.5, "No Layer", indoor=True)
    assert indoor == pytest.approx(0.804984471899924013 * 1.7 * 1.7, rel=1e-14)
    with pytest.warns(DegenerateInputWarning):
        assert cb.depth_empirical_wcr(16, 0.3) == 0.0


@given(st.floats(0, 100), st.floats(0, 100), st.floats(0.4, 0.8))
def test_depth_empirical_monotone_in_age(y1, y2, x):
    lo, hi = sorted((y1, y2))
    assert cb.depth_empirical_wcr(lo, x) <= cb.depth_empirical_wcr(hi, x)


def test_hookman_and_coefficient_model():
    assert cb.tc_hookman(30.0, 1.5) == 20.0
    assert cb.life_coefficient_model(10, 0.2, 0.5, 1.0) == pytest.approx(20.0)
    with pytest.raises(DomainError):
        cb.tc_hookman(30.0, 0.0)


def test_sqrt_law():
    assert cb.depth_sqrt_law(2.0, 1.0, 4.0) == pytest.approx(4.0)


def test_papadakis_diffusivity():
    assert cb.papadakis_diffusivity(CONC, 65.0) == pytest.approx(6.05730626345689726e-7, rel=1e-12)
    assert cb.papadakis_diffusivity(CONC, 100.0) == 0.0
    bad = cb.PapadakisConcrete(80, 200, 0.3, 0.4, 1750, 2500)
    with pytest.raises(ModelInconsistentError):
        cb.papadakis_diffusivity(bad, 65)


def test_papadakis_depth_value():
    env = cb.CarbonationEnvironment(CO2=0.05, RH=65)
    t = 50 * cb.SECONDS_PER_JULIAN_YEAR
    k = 2 * 6.05730626345689726e-7 * 0.0005 / (0.33 * 80 + 0.214 * 200)
    assert cb.papadakis_depth(CONC, env, t) == pytest.approx(math.sqrt(k * t), rel=1e-12)


def test_co2_warning():
    with pytest.warns(DegenerateInputWarning):
        cb.CarbonationEnvironment(CO2=0.5, RH=60)


concretes = st.builds(
    cb.PapadakisConcrete,
    CH=st.floats(10, 200),
    CSH=st.floats(10, 400),
    eps_c=st.floats(0.12, 0.4),
    eps_air=st.floats(0.0, 0.1),
    A=st.floats(1000, 1900),
    d_A=st.just(2600.0),
)


@given(concretes, st.floats(0.03, 0.15), st.floats(40, 95), st.floats(1e5, 1e10))
def test_papadakis_inverse(conc, co2, rh, t):
    env = cb.CarbonationEnvironment(co2, rh)
    x = cb.papadakis_depth(conc, env, t)
    assert cb.papadakis_tcr(conc, env, x) == pytest.approx(t, rel=1e-12)


def test_propagation_morinaga():
    # 6 (1 + 0.2*20)^0.85 / (65*0.75 - 35), mpmath
    assert cb.propagation_morinaga(20, 75) == pytest.approx(1.71385097505112218, rel=1e-12)
    assert cb.propagation_morinaga(20, 50) == math.inf
    with pytest.warns(DegenerateInputWarning):
        cb.propagation_morinaga(20, 97)


def test_z_carb():
    assert cb.z_carb(cb.SECONDS_PER_JULIAN_YEAR * 10, 2.5) == pytest.approx(12.5)
    assert cb.z_carb(0, 0) == 0
