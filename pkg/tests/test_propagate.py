import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specweyl.model import BoundaryCondition, harmonic, regular
from specweyl.propagate import (integrate, oscillation_count, sample,
                                wronskian_scaled)
from specweyl.scaling import ScaledValue

Q0 = regular(0.0, 1.0)

_zs = st.complex_numbers(min_magnitude=0.1, max_magnitude=50.0,
                         allow_nan=False, allow_infinity=False)


@given(_zs)
@settings(max_examples=20, deadline=None)
def test_q0_exact_solution(z):
    # u'' = -z u, u(0)=0, u'(0)=1  ->  u(x) = sin(sqrt(z) x)/sqrt(z)
    s = cmath.sqrt(z)
    got = integrate(Q0, z, 0.0, 1.0, ScaledValue(0.0, 1.0, 0.0), 1e-11).final
    val = got.u * cmath.exp(got.exponent)
    der = got.du * cmath.exp(got.exponent)
    assert val == pytest.approx(cmath.sin(s) / s, rel=1e-7, abs=1e-9)
    assert der == pytest.approx(cmath.cos(s), rel=1e-7, abs=1e-9)


@given(_zs)
@settings(max_examples=15, deadline=None)
def test_wronskian_invariance(z):
    # W of two independent solutions is x-independent (here exactly 1 at 0)
    u1 = integrate(Q0, z, 0.0, 0.7, ScaledValue(0.0, 1.0, 0.0), 1e-11).final
    u2 = integrate(Q0, z, 0.0, 0.7, ScaledValue(1.0, 0.0, 0.0), 1e-11).final
    w = wronskian_scaled(u2, u1)
    assert w.value() == pytest.approx(1.0, rel=1e-7)


def test_sample_matches_integrate():
    z = 3.0 + 1.0j
    xs = [0.2, 0.5, 0.9]
    vals = sample(Q0, z, 0.0, 0.9, ScaledValue(0.0, 1.0, 0.0), xs, 1e-11)
    direct = integrate(Q0, z, 0.0, 0.5, ScaledValue(0.0, 1.0, 0.0), 1e-11).final
    assert vals[1].u * cmath.exp(vals[1].exponent) == pytest.approx(
        direct.u * cmath.exp(direct.exponent), rel=1e-9)


def test_harmonic_growth_kept_in_exponent():
    # at lambda = 0 the solutions grow like e^{x^2/2}; the mantissa must stay O(1)
    got = integrate(harmonic(), 0.0, 0.0, 6.0,
                    ScaledValue(1.0, 0.0, 0.0), 1e-11).final
    assert abs(got.u) < 1e3
    assert got.exponent > 10.0


def test_oscillation_count_q0():
    # Dirichlet eigenvalues n^2 pi^2 on (0,1)
    assert oscillation_count(Q0, 5.0) == 0
    assert oscillation_count(Q0, math.pi**2 + 1.0) == 1
    assert oscillation_count(Q0, (3.5 * math.pi) ** 2) == 3


def test_oscillation_count_sub_interval():
    # Dirichlet eigenvalues of (0, 0.5) are 4 n^2 pi^2
    bc = (None, BoundaryCondition.dirichlet())
    assert oscillation_count(Q0, 30.0, (None, 0.5), bc) == 0
    assert oscillation_count(Q0, 45.0, (None, 0.5), bc) == 1


def test_oscillation_count_harmonic():
    m = harmonic()
    assert oscillation_count(m, 0.0) == 0
    assert oscillation_count(m, 2.0) == 1
    assert oscillation_count(m, 10.0) == 5
