"""Potential models: intervals, endpoint classification, boundary conditions
and the asymptotic seed data used to start integration at singular endpoints.

Supported potentials for -u'' + q u on (a, b):

* ``regular``            q bounded on a compact interval, bc at both ends
* ``harmonic``           q(x) = x^2 on the real line
* ``perturbed_harmonic`` q(x) = x^2 + qt(x) with integral |qt(t)|/(1+|t|) dt finite
* ``bessel``             q(x) = l(l+1)/x^2 [+ k(k+1)/(b-x)^2 on finite b] + qt(x)
* ``poschl_teller``      q(x) = pi^2 nu(nu+1)/sin(pi x)^2 on (0, 1)
* ``tabulated``          cubic interpolation of a sampled grid
"""

from __future__ import annotations

import cmath
import csv as _csv
import enum
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicSpline

from .errors import DomainError, NonFinite, SeedRegion, SingularEval
from .scaling import ScaledValue
from .special import weber_pair

# largest |z| for which oscillator seeds use exact Weber values; beyond it a
# WKB direction seed is used (gauge no longer meaningful, ratios still are)
WEBER_SEED_ZMAX = 2.0e4

_QTILDE_TAIL_TOL = 1e-13


class Kind(enum.Enum):
    Regular = "regular"
    Harmonic = "harmonic"
    PerturbedHarmonic = "perturbed_harmonic"
    Bessel = "bessel"
    PoschlTeller = "poschl_teller"
    Tabulated = "tabulated"


class Side(enum.Enum):
    Left = "left"
    Right = "right"


class EndpointTag(enum.Enum):
    NeedsBC = "needs_bc"
    DecaySelect = "decay_select"


@dataclass(frozen=True)
class BoundaryCondition:
    """Separated boundary condition, parameterized by an angle in [0, pi).

    angle 0 is Dirichlet (u=0), pi/2 is Neumann (u'=0).  At mildly singular
    Bessel-type endpoints angle 0 selects the Friedrichs (decaying Frobenius)
    branch and the angle mixes in the second branch.
    """

    angle: float = 0.0

    @staticmethod
    def dirichlet() -> "BoundaryCondition":
        return BoundaryCondition(0.0)

    @staticmethod
    def neumann() -> "BoundaryCondition":
        return BoundaryCondition(math.pi / 2)

    def __post_init__(self):
        if not 0.0 <= self.angle < math.pi:
            raise DomainError("boundary-condition angle must lie in [0, pi)")


@dataclass(frozen=True)
class EndpointClass:
    tag: EndpointTag
    # template: "regular", "frobenius" (power-law branch), "oscillator"
    template: str
    frobenius_exponent: Optional[float] = None


@dataclass(frozen=True)
class PotentialModel:
    kind: Kind
    a: float
    b: float
    params: dict = field(default_factory=dict)
    bc_a: Optional[BoundaryCondition] = None
    bc_b: Optional[BoundaryCondition] = None
    qtilde: Optional[Callable[[float], float]] = None
    # filled in by constructors below
    qtilde_bound: Optional[float] = None   # upper bound for integral |qt|/(1+|t|)
    qtilde_cutoff: float = 8.0             # |x| beyond which qt is negligible
    _spline: Optional[CubicSpline] = None
    name: str = ""

    def __post_init__(self):
        if not self.a < self.b:
            raise DomainError("interval must satisfy a < b")

    @property
    def interval(self) -> tuple[float, float]:
        return (self.a, self.b)

    def length_scale(self) -> float:
        if math.isinf(self.a) or math.isinf(self.b):
            return 1.0
        return min(1.0, self.b - self.a)


# ---------------------------------------------------------------------------
# constructors


def _bump_term(form, a, c, w, x):
    s = (x - c) / w
    if form == "gaussian":
        return a * math.exp(-s * s)
    # compact: C-infinity mollifier supported on |x - c| < w; peak value a
    if abs(s) >= 1.0:
        return 0.0
    return a * math.exp(1.0 - 1.0 / (1.0 - s * s))


def _qtilde_from_descriptor(desc) -> Callable[[float], float]:
    """Build q-tilde from a descriptor: dict (bump) or list of them.

    Supported forms: "gaussian" (default) a e^{-((x-c)/w)^2} and "compact",
    a smooth mollifier bump supported exactly on (c - w, c + w) for tests
    that need a perturbation vanishing identically past a cut.
    """
    if desc is None:
        return lambda x: 0.0
    if callable(desc):
        return desc
    if isinstance(desc, dict):
        desc = [desc]
    bumps = []
    for d in desc:
        form = d.get("form", "gaussian")
        if form not in ("gaussian", "compact"):
            raise DomainError(f"unknown q-tilde form {form!r}")
        bumps.append((form, float(d.get("amplitude", 1.0)),
                      float(d.get("center", 0.0)),
                      float(d.get("width", 1.0))))

    def qt(x, bumps=tuple(bumps)):
        return sum(_bump_term(f, a, c, w, x) for f, a, c, w in bumps)

    return qt


def _check_condho(qt: Callable[[float], float]) -> float:
    """Numerically bound integral of |qt(t)|/(1+|t|) dt; fail if divergent."""
    f = lambda t: abs(qt(t)) / (1.0 + abs(t))
    total = 0.0
    for lo, hi in ((-np.inf, -20.0), (-20.0, 20.0), (20.0, np.inf)):
        val, err = quad(f, lo, hi, limit=200)
        if not math.isfinite(val) or err > max(1e-6, 0.1 * abs(val)):
            raise DomainError("perturbation fails the |q|/(1+|t|) integrability check")
        total += val + err
    return total


def _qtilde_cutoff(qt: Callable[[float], float]) -> float:
    """Smallest X >= 8 beyond which the perturbation tail is negligible."""
    for X in range(8, 64):
        tail = quad(lambda t: abs(qt(t)) / (1 + abs(t)), X, np.inf, limit=100)[0]
        tail += quad(lambda t: abs(qt(t)) / (1 + abs(t)), -np.inf, -X, limit=100)[0]
        if tail < _QTILDE_TAIL_TOL:
            return float(X)
    raise DomainError("perturbation tail does not decay within |x| <= 64")


def harmonic() -> PotentialModel:
    return PotentialModel(Kind.Harmonic, -math.inf, math.inf, name="harmonic")


def perturbed_harmonic(qtilde) -> PotentialModel:
    qt = _qtilde_from_descriptor(qtilde)
    bound = _check_condho(qt)
    cutoff = _qtilde_cutoff(qt)
    return PotentialModel(
        Kind.PerturbedHarmonic, -math.inf, math.inf,
        params={"qtilde": qtilde if not callable(qtilde) else None},
        qtilde=qt, qtilde_bound=bound, qtilde_cutoff=cutoff,
        name="perturbed_harmonic",
    )


def bessel(l: float, k: float = 0.0, b: float = 1.0, qtilde=None,
           bc_a: Optional[BoundaryCondition] = None,
           bc_b: Optional[BoundaryCondition] = None) -> PotentialModel:
    if l <= -0.5:
        raise DomainError("Bessel coupling l must satisfy l > -1/2")
    if math.isfinite(b) and k <= -0.5:
        raise DomainError("Bessel coupling k must satisfy k > -1/2")
    qt = _qtilde_from_descriptor(qtilde)
    m = PotentialModel(
        Kind.Bessel, 0.0, b, params={"l": float(l), "k": float(k)},
        bc_a=bc_a, bc_b=bc_b, qtilde=qt, name="bessel",
    )
    return _with_default_bcs(m)


def poschl_teller(nu: float,
                  bc_a: Optional[BoundaryCondition] = None,
                  bc_b: Optional[BoundaryCondition] = None) -> PotentialModel:
    if nu < 0:
        raise DomainError("Poschl-Teller coupling nu must be >= 0")
    m = PotentialModel(
        Kind.PoschlTeller, 0.0, 1.0, params={"nu": float(nu)},
        bc_a=bc_a, bc_b=bc_b, name="poschl_teller",
    )
    return _with_default_bcs(m)


def regular(a: float = 0.0, b: float = 1.0, q=None,
            bc_a: Optional[BoundaryCondition] = None,
            bc_b: Optional[BoundaryCondition] = None) -> PotentialModel:
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError("regular models need a compact interval")
    qf = _qtilde_from_descriptor(q) if q is not None else (lambda x: 0.0)
    m = PotentialModel(
        Kind.Regular, a, b, qtilde=qf,
        bc_a=bc_a or BoundaryCondition.dirichlet(),
        bc_b=bc_b or BoundaryCondition.dirichlet(),
        name="regular",
    )
    return m


def tabulated(xs, qs,
              bc_a: Optional[BoundaryCondition] = None,
              bc_b: Optional[BoundaryCondition] = None) -> PotentialModel:
    xs = np.asarray(xs, dtype=float)
    qs = np.asarray(qs, dtype=float)
    if xs.ndim != 1 or xs.shape != qs.shape or len(xs) < 4:
        raise DomainError("tabulated model needs matching 1-d arrays, >= 4 points")
    if not np.all(np.diff(xs) > 0):
        raise DomainError("tabulated grid must be strictly increasing")
    spline = CubicSpline(xs, qs, extrapolate=False)
    return PotentialModel(
        Kind.Tabulated, float(xs[0]), float(xs[-1]),
        bc_a=bc_a or BoundaryCondition.dirichlet(),
        bc_b=bc_b or BoundaryCondition.dirichlet(),
        _spline=spline, name="tabulated",
    )


def _with_default_bcs(m: PotentialModel) -> PotentialModel:
    """Attach Dirichlet/Friedrichs defaults at NeedsBC endpoints, reject bc at
    DecaySelect endpoints."""
    bc_a, bc_b = m.bc_a, m.bc_b
    for side, bc in ((Side.Left, bc_a), (Side.Right, bc_b)):
        cls = classify_endpoint(m, side)
        if cls.tag is EndpointTag.DecaySelect and bc is not None:
            raise DomainError(f"boundary condition given at a {side.value} "
                              "endpoint that selects its solution by decay")
        if cls.tag is EndpointTag.NeedsBC and bc is None:
            if side is Side.Left:
                bc_a = BoundaryCondition.dirichlet()
            else:
                bc_b = BoundaryCondition.dirichlet()
    return PotentialModel(
        m.kind, m.a, m.b, m.params, bc_a, bc_b, m.qtilde,
        m.qtilde_bound, m.qtilde_cutoff, m._spline, m.name,
    )


# ---------------------------------------------------------------------------
# operations


def eval_q(model: PotentialModel, x: float) -> float:
    """Evaluate the potential at an interior point.

    Regular and tabulated potentials extend continuously to their (finite)
    endpoints, so those may be evaluated on the closed interval.
    """
    closed = model.kind in (Kind.Regular, Kind.Tabulated)
    if (model.a <= x <= model.b) if closed else (model.a < x < model.b):
        pass
    else:
        raise DomainError(f"x = {x:g} outside open interval "
                          f"({model.a:g}, {model.b:g})")
    k = model.kind
    if k is Kind.Regular:
        return model.qtilde(x)
    if k is Kind.Harmonic:
        return x * x
    if k is Kind.PerturbedHarmonic:
        return x * x + model.qtilde(x)
    if k is Kind.Bessel:
        l = model.params["l"]
        v = l * (l + 1) / (x * x)
        if math.isfinite(model.b):
            kk = model.params["k"]
            v += kk * (kk + 1) / ((model.b - x) ** 2)
        return v + model.qtilde(x)
    if k is Kind.PoschlTeller:
        nu = model.params["nu"]
        s = math.sin(math.pi * x)
        # pi^2 prefactor fixes the spectrum at pi^2 (n+nu)^2 and the endpoint
        # Frobenius exponent at nu+1
        return math.pi**2 * nu * (nu + 1) / (s * s)
    if k is Kind.Tabulated:
        v = float(model._spline(x))
        if not math.isfinite(v):
            raise SingularEval(f"tabulated potential not finite at x = {x:g}")
        return v
    raise NonFinite(f"unknown model kind {k}")


def _endpoint_coupling(model: PotentialModel, side: Side) -> Optional[float]:
    """Frobenius coupling exponent l at a Bessel/Poschl-Teller endpoint."""
    if model.kind is Kind.Bessel:
        if side is Side.Left:
            return model.params["l"]
        if math.isfinite(model.b):
            return model.params["k"]
        return None
    if model.kind is Kind.PoschlTeller:
        return model.params["nu"]
    return None


def classify_endpoint(model: PotentialModel, side: Side) -> EndpointClass:
    """NeedsBC (limit circle / regular) vs DecaySelect (limit point)."""
    k = model.kind
    if k in (Kind.Regular, Kind.Tabulated):
        return EndpointClass(EndpointTag.NeedsBC, "regular")
    if k in (Kind.Harmonic, Kind.PerturbedHarmonic):
        return EndpointClass(EndpointTag.DecaySelect, "oscillator")
    l = _endpoint_coupling(model, side)
    if l is None:
        # infinite right endpoint of a Bessel model with decaying potential
        return EndpointClass(EndpointTag.DecaySelect, "free")
    if l == 0.0:
        return EndpointClass(EndpointTag.NeedsBC, "regular")
    if l >= 0.5:
        return EndpointClass(EndpointTag.DecaySelect, "frobenius",
                             frobenius_exponent=l + 1)
    return EndpointClass(EndpointTag.NeedsBC, "frobenius",
                         frobenius_exponent=l + 1)


def seed_point(model: PotentialModel, side: Side, z: complex = 0.0) -> float:
    """Recommended x0 for asymptotic_seed at the given endpoint."""
    cls = classify_endpoint(model, side)
    if cls.template == "oscillator":
        # for real spectral work the seed must sit past the classical turning
        # point with room for the eigenfunction tail
        x0 = max(8.0, model.qtilde_cutoff,
                 math.sqrt(max(complex(z).real, 0.0)) + 4.0)
        return -x0 if side is Side.Left else x0
    if cls.template == "regular" and model.kind in (Kind.Regular, Kind.Tabulated):
        return model.a if side is Side.Left else model.b
    d = 1e-6 * model.length_scale()
    if cls.template == "free":
        return max(40.0, 2.0 * math.sqrt(abs(z)) + 4.0)
    return model.a + d if side is Side.Left else model.b - d


def asymptotic_seed(model: PotentialModel, side: Side, z: complex,
                    x0: float) -> ScaledValue:
    """Distinguished solution value (u, u') at x0 near the given endpoint.

    DecaySelect: the solution square-integrable toward the endpoint, in the
    template's fixed normalization.  NeedsBC: the solution realizing the
    endpoint's boundary condition.
    """
    cls = classify_endpoint(model, side)
    sgn = 1.0 if side is Side.Left else -1.0  # direction of increasing x into the interval
    if cls.template == "oscillator":
        if abs(x0) < max(8.0, model.qtilde_cutoff) - 1e-9:
            raise SeedRegion(f"|x0| = {abs(x0):g} below the oscillator seed "
                             f"radius {max(8.0, model.qtilde_cutoff):g}")
        if (side is Side.Left) != (x0 < 0):
            raise SeedRegion("x0 on the wrong side for this endpoint")
        if abs(z) <= WEBER_SEED_ZMAX:
            nu = (complex(z) - 1) / 2
            t = math.sqrt(2.0) * abs(x0)
            d, dd = weber_pair(nu, t)
            # phi_{+-}(z,x) = D_nu(+-sqrt(2) x); d/dx brings a factor +-sqrt(2)
            fac = math.sqrt(2.0) * (1.0 if side is Side.Right else -1.0)
            exps = [v.exponent for v in (d, dd) if not v.is_zero]
            e = max(exps) if exps else 0.0
            u = 0.0 if d.is_zero else d.mantissa * math.exp(d.exponent - e)
            du = 0.0 if dd.is_zero else fac * dd.mantissa * math.exp(dd.exponent - e)
            return ScaledValue(u, du, e).normalized()
        # gauge-free WKB direction; only solution ratios are meaningful here
        mu = cmath.sqrt(eval_q(model, x0) - z)  # Re >= 0
        return ScaledValue(1.0, sgn * mu, 0.0).normalized()
    if cls.template == "free":
        mu = cmath.sqrt(-complex(z))
        return ScaledValue(1.0, sgn * mu if mu != 0 else sgn * 0.0, 0.0).normalized()
    if cls.template == "frobenius":
        endpoint = model.a if side is Side.Left else model.b
        d = abs(x0 - endpoint)
        scale = model.length_scale()
        if d > 1e-3 * scale or d * d * (1.0 + abs(z)) > 1e-4:
            raise SeedRegion(f"x0 = {x0:g} too far from the singular endpoint "
                             "for a Frobenius seed")
        l = _endpoint_coupling(model, side)
        if cls.tag is EndpointTag.DecaySelect:
            u, du = d ** (l + 1), sgn * (l + 1) * d**l
        else:
            bc = model.bc_a if side is Side.Left else model.bc_b
            c0, s0 = math.cos(bc.angle), math.sin(bc.angle)
            u = c0 * d ** (l + 1) + s0 * d ** (-l)
            du = sgn * (c0 * (l + 1) * d**l - s0 * l * d ** (-l - 1))
        return ScaledValue(u, du, 0.0).normalized()
    # regular endpoint: seed is the bc direction at the endpoint itself
    endpoint = model.a if side is Side.Left else model.b
    if abs(x0 - endpoint) > 1e-12 * max(1.0, abs(endpoint)):
        raise SeedRegion("regular seeds are placed at the endpoint itself")
    bc = model.bc_a if side is Side.Left else model.bc_b
    return ScaledValue(math.sin(bc.angle), sgn * math.cos(bc.angle), 0.0)


# ---------------------------------------------------------------------------
# model spec files (JSON)


def _parse_extended(v) -> float:
    if isinstance(v, str):
        if v in ("inf", "+inf"):
            return math.inf
        if v == "-inf":
            return -math.inf
        raise DomainError(f"bad interval endpoint {v!r}")
    return float(v)


def _parse_bc(v) -> Optional[BoundaryCondition]:
    if v is None:
        return None
    if v == "dirichlet":
        return BoundaryCondition.dirichlet()
    if v == "neumann":
        return BoundaryCondition.neumann()
    if isinstance(v, dict) and "angle" in v:
        return BoundaryCondition(float(v["angle"]))
    raise DomainError(f"bad boundary condition {v!r}")


def from_dict(doc: dict) -> PotentialModel:
    """Build a model from a parsed model spec document."""
    kind = doc.get("kind")
    params = doc.get("params", {})
    bc_a = _parse_bc(doc.get("bc_a"))
    bc_b = _parse_bc(doc.get("bc_b"))
    if kind in ("harmonic", "perturbed_harmonic"):
        if bc_a is not None or bc_b is not None:
            raise DomainError(f"{kind}: both endpoints are limit point and "
                              "admit no boundary condition")
        if kind == "harmonic":
            return harmonic()
        return perturbed_harmonic(params.get("qtilde"))
    if kind == "bessel":
        interval = doc.get("interval", [0, 1])
        return bessel(params["l"], params.get("k", 0.0),
                      b=_parse_extended(interval[1]),
                      qtilde=params.get("qtilde"), bc_a=bc_a, bc_b=bc_b)
    if kind == "poschl_teller":
        return poschl_teller(params["nu"], bc_a=bc_a, bc_b=bc_b)
    if kind == "regular":
        interval = doc.get("interval", [0, 1])
        return regular(_parse_extended(interval[0]), _parse_extended(interval[1]),
                       q=params.get("q"), bc_a=bc_a, bc_b=bc_b)
    if kind == "tabulated":
        path = doc.get("csv")
        if path is None:
            raise DomainError("tabulated model needs a 'csv' path")
        xs, qs = [], []
        with open(path, newline="") as fh:
            for row in _csv.reader(fh):
                if not row or row[0].lstrip().startswith("#"):
                    continue
                xs.append(float(row[0]))
                qs.append(float(row[1]))
        return tabulated(xs, qs, bc_a=bc_a, bc_b=bc_b)
    raise DomainError(f"unknown model kind {kind!r}")


def load_model(path: str) -> PotentialModel:
    with open(path) as fh:
        return from_dict(json.load(fh))
