import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specweyl.errors import SpecweylError
from specweyl.model import Side, harmonic, regular
from specweyl.propagate import wronskian_scaled
from specweyl.weyl import FundamentalFrame


def _value(sv):
    return sv.u * cmath.exp(sv.exponent)


def test_base_point_must_be_interior():
    with pytest.raises(SpecweylError):
        FundamentalFrame(regular(0.0, 1.0), 1.0)


def test_q0_phi_chi_closed_form(q0_frame):
    # phi = sin(sqrt z x)/sqrt z (Dirichlet at 0, slope 1);
    # chi = sin(sqrt z (1-x))/sqrt z (Dirichlet at 1)
    z = 2.0 + 1.0j
    s = cmath.sqrt(z)
    assert _value(q0_frame.phi(z, 0.3)) == pytest.approx(
        cmath.sin(0.3 * s) / s, rel=1e-8)
    assert _value(q0_frame.chi(z, 0.3)) == pytest.approx(
        cmath.sin(0.7 * s) / s, rel=1e-8)


def test_q0_half_line_m(q0_frame):
    z = 1.5 + 0.5j
    s = cmath.sqrt(z)
    assert q0_frame.m_half_line(z, Side.Left) == pytest.approx(
        -s * cmath.cos(0.5 * s) / cmath.sin(0.5 * s), rel=1e-8)
    assert q0_frame.m_half_line(z, Side.Right) == pytest.approx(
        -s * cmath.cos(0.5 * s) / cmath.sin(0.5 * s), rel=1e-8)


def test_q0_singular_M_closed_form(q0_frame):
    # with phi' (z,c) normalization at c = 1/2 the Weyl function reduces to
    # M(z) = sqrt z cos(sqrt z / 2)^2 / sin(sqrt z) - by direct evaluation of
    # -chi(c)/(phi(c) W(phi, chi)) for the closed-form solutions
    z = 1j
    s = cmath.sqrt(z)
    expected = (-cmath.sin(0.5 * s) / s) / (
        (cmath.sin(0.5 * s) / s) * (-cmath.sin(s) / s))
    assert q0_frame.singular_M(z) == pytest.approx(expected, rel=1e-8)


@given(st.complex_numbers(min_magnitude=0.5, max_magnitude=30.0,
                          allow_nan=False, allow_infinity=False))
@settings(max_examples=15, deadline=None)
def test_theta_phi_wronskian_is_one(q0_frame, z):
    if abs(z.imag) < 1e-3:
        z += 0.5j
    th = q0_frame.theta(z, 0.2)
    ph = q0_frame.phi(z, 0.2)
    assert wronskian_scaled(th, ph).value() == pytest.approx(1.0, rel=1e-7)


def test_psi_identity(q0_frame):
    # psi = theta + M phi, via the stable -chi/W form
    z = 3.0 + 2.0j
    x = 0.7
    m = q0_frame.singular_M(z)
    expected = _value(q0_frame.theta(z, x)) + m * _value(q0_frame.phi(z, x))
    assert _value(q0_frame.psi_scaled(z, x)) == pytest.approx(expected, rel=1e-7)


def test_harmonic_phi_matches_hermite(harmonic_frame):
    # at lambda = 2n+1 phi is proportional to the Hermite function
    from specweyl.special import hermite_oracle
    z = 5.0  # n = 2
    v1 = _value(harmonic_frame.phi(z, 0.8))
    v0 = _value(harmonic_frame.phi(z, 0.2))
    assert (v1 / v0).real == pytest.approx(
        hermite_oracle(2, 0.8) / hermite_oracle(2, 0.2), rel=1e-7)


def test_seed_offset_pins_seed_point():
    f = FundamentalFrame(harmonic(), 0.0, seed_offset=12.0)
    x0, _ = f._seed(Side.Left, 1j)
    assert x0 == -12.0


def test_conjugation_symmetry(harmonic_frame):
    # real potential: M(conj z) = conj M(z)
    m = harmonic_frame.singular_M(1.0 + 1.0j)
    mc = harmonic_frame.singular_M(1.0 - 1.0j)
    assert mc == pytest.approx(m.conjugate(), rel=1e-9)
