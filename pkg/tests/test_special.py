import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specweyl.errors import SpecweylError
from specweyl.special import (elementary_factor, hermite_eigenvalue,
                              hermite_oracle, log_elementary_factor, log_gamma,
                              weber_D, weber_D_derivative,
                              weber_ray_asymptotic)


@given(st.floats(0.1, 30.0))
@settings(max_examples=25, deadline=None)
def test_log_gamma_real_axis(x):
    assert log_gamma(x).real == pytest.approx(math.lgamma(x), rel=1e-12, abs=1e-12)
    assert log_gamma(x).imag == pytest.approx(0.0, abs=1e-12)


def test_log_gamma_recurrence():
    z = 2.5 + 1.5j
    assert cmath.exp(log_gamma(z + 1) - log_gamma(z)) == pytest.approx(z, rel=1e-12)


def test_weber_ground_state():
    # D_0(x) = e^{-x^2/4}
    for x in (0.0, 1.0, 2.5):
        v = weber_D(0.0, x)
        assert v.value() == pytest.approx(math.exp(-x * x / 4.0), rel=1e-10)
        d = weber_D_derivative(0.0, x)
        assert d.value() == pytest.approx(-0.5 * x * math.exp(-x * x / 4.0),
                                          rel=1e-10, abs=1e-12)


def test_weber_vs_hermite():
    # D_n(x sqrt(2)) = 2^{-n/2} H_n(x) e^{-x^2/2}
    for n in (1, 2, 3):
        x = 0.8
        lhs = weber_D(float(n), x * math.sqrt(2.0)).value()
        assert lhs == pytest.approx(2.0 ** (-n / 2.0) * hermite_oracle(n, x),
                                    rel=1e-9)


def test_weber_order_cap():
    with pytest.raises(SpecweylError):
        weber_D(500.0, 1.0)


def test_weber_ray_matches_weber_on_imaginary_axis():
    # the large-|z| law should approximate D_{(z-1)/2}(x sqrt 2) itself
    # phi_- in the Weber gauge is D_{(z-1)/2}(-x sqrt 2)
    z = 300j
    x = 0.7
    direct = weber_D((z - 1.0) / 2.0, -x * math.sqrt(2.0))
    ray = weber_ray_asymptotic(z, x)
    ratio = cmath.exp(direct.log() - ray.log())
    assert abs(ratio - 1.0) < 0.15


def test_hermite_oracle_values():
    # H_2(x) = 4x^2 - 2 against the recurrence-based oracle
    x = 1.3
    assert hermite_oracle(2, x) == pytest.approx(
        (4 * x * x - 2.0) * math.exp(-x * x / 2.0), rel=1e-12)
    assert hermite_eigenvalue(7) == 15.0
    with pytest.raises(SpecweylError):
        hermite_oracle(99, 0.0)


@given(st.floats(0.5, 100.0),
       st.complex_numbers(max_magnitude=5.0, allow_nan=False,
                          allow_infinity=False))
@settings(max_examples=25, deadline=None)
def test_elementary_factor_log_consistency(zeta, z):
    if abs(z - zeta) < 1e-6 * zeta:
        return
    for p in (0, 1):
        assert cmath.exp(log_elementary_factor(p, zeta, z)) == pytest.approx(
            elementary_factor(p, zeta, z), rel=1e-10, abs=1e-12)


def test_elementary_factor_forms():
    assert elementary_factor(0, 2.0, 1.0) == pytest.approx(0.5)
    assert elementary_factor(1, 2.0, 1.0) == pytest.approx(0.5 * math.exp(0.5))
    assert elementary_factor(1, 0.0, 3.0 + 1j) == 3.0 + 1j  # zero eigenvalue
