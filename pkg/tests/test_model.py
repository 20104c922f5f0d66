import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specweyl.errors import SpecweylError
from specweyl.model import (BoundaryCondition, Side, bessel, classify_endpoint,
                            eval_q, from_dict, harmonic, load_model,
                            perturbed_harmonic, poschl_teller, regular,
                            tabulated)


@given(st.floats(-30, 30))
@settings(max_examples=25, deadline=None)
def test_harmonic_eval_q(x):
    assert eval_q(harmonic(), x) == x * x


def test_gaussian_bump():
    m = perturbed_harmonic({"form": "gaussian", "amplitude": 2.0,
                            "center": 1.0, "width": 0.5})
    x = 1.3
    assert eval_q(m, x) == pytest.approx(
        x * x + 2.0 * math.exp(-((x - 1.0) / 0.5) ** 2), rel=1e-14)


def test_compact_bump_support():
    m = perturbed_harmonic({"form": "compact", "amplitude": 1.0,
                            "center": 3.0, "width": 1.9})
    # identically x^2 outside (1.1, 4.9), strictly above inside
    for x in (-5.0, 0.0, 1.1, 4.9, 7.0):
        assert eval_q(m, x) == x * x
    assert eval_q(m, 3.0) == pytest.approx(9.0 + 1.0)
    assert eval_q(m, 2.0) > 4.0


def test_poschl_teller_eval_q():
    m = poschl_teller(1.0)
    assert eval_q(m, 0.5) == pytest.approx(2.0 * math.pi**2)
    with pytest.raises(SpecweylError):
        eval_q(m, 0.0)


def test_bessel_eval_q_and_bounds():
    m = bessel(1.0, b=2.0)
    assert eval_q(m, 0.5) == pytest.approx(2.0 / 0.25)
    with pytest.raises(SpecweylError):
        bessel(-0.6)


def test_regular_closed_interval():
    m = regular(0.0, 1.0)
    assert eval_q(m, 0.0) == 0.0
    assert eval_q(m, 1.0) == 0.0
    with pytest.raises(SpecweylError):
        eval_q(m, 1.5)


def test_endpoint_classification():
    h = harmonic()
    assert classify_endpoint(h, Side.Left).template == "oscillator"
    assert classify_endpoint(regular(), Side.Left).template == "regular"
    assert classify_endpoint(bessel(1.0), Side.Left).template == "frobenius"


def test_boundary_condition_validation():
    BoundaryCondition.dirichlet()
    BoundaryCondition.neumann()
    with pytest.raises(SpecweylError):
        BoundaryCondition(angle=4.0)


def test_bc_on_limit_point_end_rejected():
    with pytest.raises(SpecweylError):
        from_dict({"kind": "harmonic", "bc_a": "dirichlet"})


def test_from_dict_roundtrip(tmp_path):
    doc = {"kind": "regular", "interval": [0, 2],
           "params": {"q": [{"amplitude": 1.0, "center": 1.0, "width": 0.3}]},
           "bc_a": "neumann"}
    m = from_dict(doc)
    assert (m.a, m.b) == (0.0, 2.0)
    assert m.bc_a.angle == pytest.approx(math.pi / 2.0)
    path = tmp_path / "m.json"
    path.write_text(json.dumps(doc))
    m2 = load_model(str(path))
    assert eval_q(m2, 1.1) == pytest.approx(eval_q(m, 1.1))


def test_from_dict_infinite_interval():
    m = from_dict({"kind": "harmonic", "interval": ["-inf", "inf"]})
    assert math.isinf(m.a) and math.isinf(m.b)


def test_from_dict_bad_kind():
    with pytest.raises(SpecweylError):
        from_dict({"kind": "anharmonic"})


def test_tabulated_matches_samples():
    xs = [0.0, 0.25, 0.5, 0.75, 1.0]
    qs = [x * x for x in xs]
    m = tabulated(xs, qs)
    assert eval_q(m, 0.25) == pytest.approx(0.0625, abs=1e-12)
    assert classify_endpoint(m, Side.Right).template == "regular"


def test_shipped_configs_load():
    import pathlib
    for p in sorted((pathlib.Path(__file__).parents[1] / "configs").glob("*.json")):
        load_model(str(p))
