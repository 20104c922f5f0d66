"""Numerical diagnostics for the asymptotic laws and uniqueness criteria:
ray asymptotics of phi, M and psi, the Borg-Marchenko decay test, the
Hochstadt-Lieberman boundedness condition, Stieltjes inversion of the
spectral measure, Herglotz positivity and isospectral comparison.

Each ray diagnostic evaluates a normalized residual on a ladder of radii and
classifies the log-log slope: Bounded (<= 0.05), Diverging (>= 0.3), else
Inconclusive.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad, simpson

from .errors import (DirichletCollision, DomainError, EigenvalueCollision,
                     FrameMismatch, NonSummable)
from .model import Side
from .propagate import oscillation_count
from .scaling import LogScaledComplex
from .weyl import FundamentalFrame

__all__ = [
    "RaySpec", "DecayDiagnostic", "ray_phi_asymptotics", "ray_M_asymptotics",
    "ray_psi_asymptotics", "bm_diagnostic", "hl_condition",
    "stieltjes_invert", "herglotz_check", "isospectral_compare",
    "IsospectralReport",
]

_SLOPE_BOUNDED = 0.05
_SLOPE_DIVERGING = 0.3


@dataclass(frozen=True)
class RaySpec:
    """Nonreal ray z = r e^{i angle} with a ladder of radii.

    The negative real axis (angle = pi) is allowed; the positive real axis
    is not.
    """

    angle: float
    radii: tuple = (1e2, 1e3, 1e4, 1e5)

    def __post_init__(self):
        if not 0.0 < self.angle < 2.0 * math.pi:
            raise DomainError("ray angle must lie in (0, 2 pi)")
        r = [float(v) for v in self.radii]
        if len(r) < 2 or any(b <= a for a, b in zip(r, r[1:])) or r[0] <= 0:
            raise DomainError("radii must be increasing positive reals, >= 2")
        object.__setattr__(self, "radii", tuple(r))

    def points(self):
        e = cmath.exp(1j * self.angle)
        return [r * e for r in self.radii]


@dataclass(frozen=True)
class DecayDiagnostic:
    radii: tuple
    values: tuple
    slope: float
    verdict: str  # "Bounded" | "Diverging" | "Inconclusive"

    @staticmethod
    def classify(radii, values) -> "DecayDiagnostic":
        radii = tuple(float(r) for r in radii)
        values = tuple(float(v) for v in values)
        if all(v < 1e-250 for v in values):
            return DecayDiagnostic(radii, values, 0.0, "Bounded")
        vals = [max(v, 1e-250) for v in values]
        slope = float(np.polyfit(np.log(radii), np.log(vals), 1)[0])
        if slope <= _SLOPE_BOUNDED:
            verdict = "Bounded"
        elif slope >= _SLOPE_DIVERGING:
            verdict = "Diverging"
        else:
            verdict = "Inconclusive"
        return DecayDiagnostic(radii, values, slope, verdict)


def _log_value(v) -> complex:
    """Principal log of the true scalar value of a ScaledValue's u part."""
    return cmath.log(v.u) + v.exponent


# ---------------------------------------------------------------------------
# ray laws


def ray_phi_asymptotics(frame: FundamentalFrame, ray: RaySpec,
                        x: float, x0: float) -> DecayDiagnostic:
    """Residual of phi(z,x) = phi(z,x0) e^{(x-x0) sqrt(-z)} (1 + O(1/sqrt(-z))).

    values_r = |phi(z,x)/(phi(z,x0) e^{(x-x0)sqrt(-z)}) - 1| sqrt(r).
    """
    vals = []
    for r, z in zip(ray.radii, ray.points()):
        lx = _log_value(frame.phi(z, x))
        lx0 = _log_value(frame.phi(z, x0))
        ratio = cmath.exp(lx - lx0 - (x - x0) * cmath.sqrt(-z))
        vals.append(abs(ratio - 1.0) * math.sqrt(r))
    return DecayDiagnostic.classify(ray.radii, vals)


def ray_M_asymptotics(frame: FundamentalFrame, ray: RaySpec,
                      x: float) -> DecayDiagnostic:
    """Residual of M(z) = -theta(z,x)/phi(z,x) + O(1/(sqrt(-z) phi(z,x)^2)).

    values_r = |M(z) + theta/phi| sqrt(r) |phi(z,x)|^2; the combination is
    seed-gauge invariant.  The residual is evaluated through the identity
    M + theta/phi = -chi/(W(phi,chi) phi), which is exact under the theta
    normalization and free of the catastrophic cancellation between M and
    -theta/phi at large |z|.
    """
    vals = []
    for r, z in zip(ray.radii, ray.points()):
        ph = frame.phi(z, x)
        ch = frame.chi(z, x)
        w = frame.wronskian_phi_chi(z)
        log_val = (math.log(abs(ch.u)) + ch.exponent - w.abs_log()
                   + 0.5 * math.log(r)
                   + (math.log(abs(ph.u)) + ph.exponent))
        vals.append(math.exp(min(log_val, 700.0)))
    return DecayDiagnostic.classify(ray.radii, vals)


def ray_psi_asymptotics(frame: FundamentalFrame, ray: RaySpec,
                        x: float) -> DecayDiagnostic:
    """Residual of psi(z,x) = (1 + O(1/sqrt(-z))) / (2 sqrt(-z) phi(z,x)).

    values_r = |2 sqrt(-z) psi(z,x) phi(z,x) - 1| sqrt(r).
    """
    vals = []
    for r, z in zip(ray.radii, ray.points()):
        ps = frame.psi_scaled(z, x)
        ph = frame.phi(z, x)
        combo = (LogScaledComplex(ps.u, ps.exponent)
                 * LogScaledComplex(ph.u, ph.exponent)
                 * LogScaledComplex.from_complex(2.0 * cmath.sqrt(-z)))
        vals.append(abs(combo.value() - 1.0) * math.sqrt(r))
    return DecayDiagnostic.classify(ray.radii, vals)


# ---------------------------------------------------------------------------
# uniqueness-criterion diagnostics


def _check_matched(frame0, frame1, z_probe):
    if frame0.c != frame1.c:
        raise FrameMismatch("frames use different base points")
    x0 = frame0._seed(Side.Left, z_probe)[0]
    x1 = frame1._seed(Side.Left, z_probe)[0]
    if x0 != x1:
        raise FrameMismatch(
            f"seed points differ ({x0:g} vs {x1:g}); construct both frames "
            "with the same seed_offset to match gauges")


def _difference_window(frame0, frame1, z_probe):
    """Interval where the two potentials actually differ, or None.

    Scanned between the matched left seed and the right seed (the difference
    beyond the seeds is below the seed truncation error by construction).
    """
    m0, m1 = frame0.model, frame1.model
    lo = frame0._seed(Side.Left, z_probe)[0]
    hi = frame0._seed(Side.Right, z_probe)[0]
    lo = max(lo, m0.a, m1.a)
    hi = min(hi, m0.b, m1.b)
    from .model import eval_q
    xs = np.linspace(lo, hi, 2001)
    dq = np.array([eval_q(m1, x) - eval_q(m0, x) for x in xs])
    peak = float(np.max(np.abs(dq)))
    idx = np.nonzero(np.abs(dq) > 1e-13 * (1.0 + peak))[0]
    if idx.size == 0:
        return None
    h = xs[1] - xs[0]
    return float(xs[idx[0]] - h), float(xs[idx[-1]] + h)


def bm_diagnostic(frame0: FundamentalFrame, frame1: FundamentalFrame,
                  c: float, ray: RaySpec) -> DecayDiagnostic:
    """Matched-frame Borg-Marchenko decay test at the cut c.

    values_r = |M1(z) - M0(z)| sqrt(r) |phi_0(z,c) phi_1(z,c)|; Bounded
    supports agreement of the potentials on (a, c), Diverging refutes it.

    In the matched gauge (identical seed data for both frames) the Weyl
    function difference has the exact cancellation-free representation

        M1(z) - M0(z) = -int (q1 - q0)(t) psi_0(z,t) psi_1(z,t) dt,

    obtained by integrating W(psi_0, psi_1)' = (q1 - q0) psi_0 psi_1 from the
    common seed (where W(psi_0, psi_1) = M1 - M0 by the matched normalization)
    to the right endpoint (where it vanishes).  A direct subtraction of the
    two Weyl functions would lose the exponentially small difference to
    roundoff long before the diagnostic becomes meaningful.
    """
    if frame0.c != c or frame1.c != c:
        raise FrameMismatch("both frames must use the cut as base point")
    _check_matched(frame0, frame1, ray.points()[-1])
    window = _difference_window(frame0, frame1, ray.points()[-1])
    if window is None:
        return DecayDiagnostic.classify(ray.radii, [0.0] * len(ray.radii))
    from .model import eval_q
    from .propagate import sample
    lo, hi = window
    vals = []
    for r, z in zip(ray.radii, ray.points()):
        # resolve the local oscillation 2 Im sqrt(q - z) of the psi product
        n = int(min(20001, max(1601, 16.0 * (hi - lo) * math.sqrt(r) / math.pi)))
        n += (n + 1) % 2  # Simpson wants an odd count
        xs = np.linspace(lo, hi, n)
        logs = []
        for fr in (frame0, frame1):
            x0, seed = fr._seed(Side.Right, z)
            chis = sample(fr.model, z, x0, lo, seed, xs[::-1], fr.tol)[::-1]
            w = fr.wronskian_phi_chi(z)
            logs.append([cmath.log(v.u) + v.exponent - w.log() for v in chis])
        dq = np.array([eval_q(frame1.model, x) - eval_q(frame0.model, x)
                       for x in xs])
        log_prod = np.array(logs[0]) + np.array(logs[1])
        gauge = float(np.max(log_prod.real))
        integrand = dq * np.exp(log_prod - gauge)
        total = complex(simpson(integrand, x=xs))
        diff = -(LogScaledComplex.from_complex(total)
                 * LogScaledComplex.from_log(complex(gauge, 0.0)))
        if diff.is_zero:
            vals.append(0.0)
            continue
        p0 = frame0.phi_at_c(z)
        p1 = frame1.phi_at_c(z)
        log_val = (diff.abs_log() + 0.5 * math.log(r)
                   + (math.log(abs(p0.u)) + p0.exponent)
                   + (math.log(abs(p1.u)) + p1.exponent))
        vals.append(math.exp(min(log_val, 700.0)))
    return DecayDiagnostic.classify(ray.radii, vals)


def hl_condition(frame: FundamentalFrame, c: float,
                 ray: RaySpec) -> DecayDiagnostic:
    """Hochstadt-Lieberman boundedness values_r = |chi(z,c)/phi(z,c)|."""
    if not frame.model.a < c < frame.model.b:
        raise DomainError("cut must lie inside (a, b)")
    vals = []
    for z in ray.points():
        lp = _log_value(frame.phi(z, c))
        lc = _log_value(frame.chi(z, c))
        vals.append(math.exp(min((lc - lp).real, 700.0)))
    return DecayDiagnostic.classify(ray.radii, vals)


def stieltjes_invert(frame: FundamentalFrame, x0: float, x1: float,
                     eps_ladder=(0.1, 0.05, 0.025)) -> float:
    """Spectral mass of (x0, x1) by (1/pi) int Im M(x + i eps) dx.

    The Poisson kernel against isolated atoms carries an O(eps) bias, so the
    ladder values are Richardson-extrapolated to eps = 0 by polynomial fit.

    The base-point gauge adds real poles to M at the Dirichlet eigenvalues
    of (a, c); an interval containing one would pick up its (spurious, real)
    residue, so such intervals are rejected.  Choose c so that the left
    Dirichlet spectrum misses [x0, x1].
    """
    if not x0 < x1:
        raise DomainError("need x0 < x1")
    eps = [float(e) for e in eps_ladder]
    if len(eps) < 2 or any(b >= a for a, b in zip(eps, eps[1:])) or eps[-1] <= 0:
        raise DomainError("eps ladder must be decreasing positive values")
    for edge in (x0, x1):
        lo = oscillation_count(frame.model, edge - 1e-3)
        hi = oscillation_count(frame.model, edge + 1e-3)
        if lo != hi:
            raise EigenvalueCollision(
                f"an eigenvalue lies within 1e-3 of the endpoint {edge:g}")
    from .model import BoundaryCondition
    sub, bcs = (None, frame.c), (None, BoundaryCondition.dirichlet())
    n_lo = oscillation_count(frame.model, x0, sub, bcs)
    n_hi = oscillation_count(frame.model, x1, sub, bcs)
    if n_lo != n_hi:
        raise DirichletCollision(
            f"{n_hi - n_lo} Dirichlet eigenvalue(s) of (a, c) lie in "
            f"({x0:g}, {x1:g}); their gauge poles would corrupt the mass — "
            "move the base point c")
    masses = []
    for e in eps:
        val, _ = quad(lambda x: frame.singular_M(x + 1j * e).imag, x0, x1,
                      epsabs=1e-10, epsrel=1e-6, limit=300)
        masses.append(val / math.pi)
    coeff = np.polyfit(eps, masses, len(eps) - 1)
    return float(coeff[-1])


def herglotz_check(measure, grid) -> float:
    """Minimum of Im Mtilde over an upper-half-plane grid.

    Mtilde(z) = sum_n wtilde_n/(lambda_n - z) with the renormalized weights
    wtilde_n = w_n e^{-2 g_n}, g_n chosen so that wtilde_n <= 1/(1+lambda_n^2)
    makes the sum converge regardless of weight growth.
    """
    atoms = measure.atoms
    wt = []
    for lam, w in atoms:
        wtil = w / (1.0 + w * (1.0 + lam * lam))
        if not math.isfinite(wtil):
            raise NonSummable("reweighted mass not finite")
        wt.append(wtil)
    if sum(wt) > 1e15:
        raise NonSummable("reweighted mass exceeds the overflow budget")
    min_im = math.inf
    for z in grid:
        z = complex(z)
        if z.imag <= 0:
            raise DomainError("grid points must lie in the open upper half-plane")
        m = sum(w / (lam - z) for (lam, _), w in zip(atoms, wt))
        min_im = min(min_im, m.imag)
    return min_im


@dataclass(frozen=True)
class IsospectralReport:
    eigenvalue_diffs: tuple
    norming_ratios: tuple
    distinguishable: bool
    eig_tol: float = 1e-6
    norm_tol: float = 1e-4


def isospectral_compare(frame0: FundamentalFrame, frame1: FundamentalFrame,
                        count: int, eig_tol=1e-6, norm_tol=1e-4) -> IsospectralReport:
    """Tabulate eigenvalue differences and norming-constant ratios.

    Purely diagnostic: flags whether the spectral data are equal within
    tolerance; the uniqueness theorem's conclusion is not asserted.
    """
    from .spectrum import eigenvalues, norming_constants
    e0 = eigenvalues(frame0, count)
    e1 = eigenvalues(frame1, count)
    diffs = tuple(b - a for a, b in zip(e0, e1))
    g0 = norming_constants(frame0, e0, Side.Left)
    g1 = norming_constants(frame1, e1, Side.Left)
    ratios = tuple(b / a for a, b in zip(g0, g1))
    same = (all(abs(d) <= eig_tol * (1.0 + abs(l)) for d, l in zip(diffs, e0))
            and all(abs(r - 1.0) <= norm_tol for r in ratios))
    return IsospectralReport(diffs, ratios, not same, eig_tol, norm_tol)
