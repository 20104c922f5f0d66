import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specweyl.errors import SpecweylError
from specweyl.model import Side, poschl_teller, regular
from specweyl.spectrum import (eigenvalues, expand, exponent_report,
                               norming_constants, poschl_teller_offset,
                               spectral_measure, sub_spectrum,
                               wronskian_derivative)
from specweyl.weyl import FundamentalFrame


def test_q0_eigenvalues(q0_frame):
    eigs = eigenvalues(q0_frame, 8)
    for n, lam in enumerate(eigs, start=1):
        assert lam == pytest.approx((n * math.pi) ** 2, rel=1e-8)


def test_q0_norming_constants(q0_frame):
    # phi_n = sin(n pi x)/(n pi): gamma_n^2 = 1/(2 n^2 pi^2)
    eigs = eigenvalues(q0_frame, 4)
    g2 = norming_constants(q0_frame, eigs, Side.Left)
    for n, g in enumerate(g2, start=1):
        assert g == pytest.approx(1.0 / (2.0 * (n * math.pi) ** 2), rel=1e-8)


def test_q0_norming_right_side(q0_frame):
    # by symmetry of q = 0 on (0,1), left and right norming constants agree
    eigs = eigenvalues(q0_frame, 3)
    gl = norming_constants(q0_frame, eigs, Side.Left)
    gr = norming_constants(q0_frame, eigs, Side.Right)
    for a, b in zip(gl, gr):
        assert b == pytest.approx(a, rel=1e-7)


def test_norming_rejects_non_eigenvalue(q0_frame):
    with pytest.raises(SpecweylError):
        norming_constants(q0_frame, [12.0], Side.Left)


def test_sub_spectrum_q0(q0_frame):
    # Dirichlet/Neumann eigenvalues of (0, 0.5)
    mu = sub_spectrum(q0_frame, 0.5, Side.Left, "dirichlet", 3)
    nu = sub_spectrum(q0_frame, 0.5, Side.Left, "neumann", 3)
    for n, lam in enumerate(mu, start=1):
        assert lam == pytest.approx((2.0 * n * math.pi) ** 2, rel=1e-8)
    for n, lam in enumerate(nu, start=1):
        assert lam == pytest.approx(((2.0 * n - 1.0) * math.pi) ** 2, rel=1e-8)


def test_spectral_measure_gauge(q0_frame):
    meas = spectral_measure(q0_frame, 3)
    assert meas.gauge["c"] == 0.5
    assert meas.gauge["kind"] == "regular"
    lam, w = meas.atoms[0]
    assert w == pytest.approx(2.0 * math.pi**2, rel=1e-7)


def test_expand_recovers_eigenfunction(q0_frame):
    # f = phi_2 itself: coefficients are gamma_n^2 delta_{n,2}
    import numpy as np
    meas = spectral_measure(q0_frame, 4)
    xs = np.linspace(0.0, 1.0, 1201)
    fs = np.sin(2.0 * math.pi * xs) / (2.0 * math.pi)
    coeff = expand(q0_frame, (xs, fs), meas)
    assert coeff[1] == pytest.approx(1.0 / (2.0 * (2.0 * math.pi) ** 2), rel=1e-6)
    assert abs(coeff[0]) < 1e-8 and abs(coeff[2]) < 1e-8


def test_wronskian_derivative_sign_alternates(q0_frame):
    eigs = eigenvalues(q0_frame, 3)
    wds = [wronskian_derivative(q0_frame, lam) for lam in eigs]
    assert wds[0] * wds[1] < 0.0 and wds[1] * wds[2] < 0.0


@given(st.floats(1.2, 2.1), st.floats(0.5, 20.0))
@settings(max_examples=20, deadline=None)
def test_exponent_report_synthetic(kappa, scale):
    eigs = [scale * n**kappa for n in range(1, 41)]
    rep = exponent_report(eigs)
    assert rep.kappa == pytest.approx(kappa, rel=1e-6)
    assert rep.s == pytest.approx(1.0 / kappa, rel=1e-6)
    assert not rep.flagged


def test_exponent_report_flags_fast_growth():
    # kappa = 2.5 puts s = 0.4 below the 0.45 plausibility floor
    eigs = [float(n) ** 2.5 for n in range(1, 41)]
    rep = exponent_report(eigs)
    assert rep.flagged and rep.genus == 0


def test_exponent_report_needs_enough_eigenvalues():
    with pytest.raises(SpecweylError):
        exponent_report([float(n) for n in range(1, 15)])


def test_poschl_teller_offset_synthetic():
    nu = 1.5
    eigs = [math.pi**2 * (n + 1 + nu) ** 2 for n in range(5)]
    assert poschl_teller_offset(eigs, nu) == 1
    eigs0 = [math.pi**2 * (n + nu) ** 2 for n in range(5)]
    assert poschl_teller_offset(eigs0, nu) == 0


def test_eigenvalues_rejects_bad_count(q0_frame):
    with pytest.raises(SpecweylError):
        eigenvalues(q0_frame, 0)
