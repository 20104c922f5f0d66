"""Overflow-safe propagation of -u'' + q u = z u for complex z.

Integration proceeds in chunks sized from the local growth rate
sqrt(|q - z|); after each chunk the solution pair is renormalized and the
growth absorbed into a separate exponent.  For real spectral parameters a
Pruefer phase formulation counts eigenvalues below a given level.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DomainError, NonFinite, StepUnderflow
from .model import (BoundaryCondition, EndpointTag, Kind, PotentialModel,
                    Side, _endpoint_coupling, asymptotic_seed,
                    classify_endpoint, eval_q, seed_point)
from .scaling import LogScaledComplex, ScaledValue

__all__ = [
    "ScaledValue", "Trajectory", "integrate", "sample", "wronskian",
    "oscillation_count",
]

DEFAULT_TOL = 1e-10
_CHUNK_EFOLDS = 3.0


@dataclass(frozen=True)
class Trajectory:
    """Scaled solution values along an increasing or decreasing grid."""

    grid: tuple
    values: tuple
    z: complex
    model: PotentialModel

    @property
    def final(self) -> ScaledValue:
        return self.values[-1]


def _rate(model: PotentialModel, x: float, z: complex) -> float:
    # e-fold rate of the growing mode; oscillation (imaginary part) does not
    # inflate the mantissa and needs no renormalization
    return max(1.0, abs(cmath.sqrt(eval_q(model, x) - z).real))


def _singular_finite_endpoints(model: PotentialModel) -> list:
    pts = []
    if model.kind in (Kind.Bessel, Kind.PoschlTeller):
        if math.isfinite(model.a):
            pts.append(model.a)
        if math.isfinite(model.b):
            pts.append(model.b)
    return pts


def _chunk_length(model, x, z, direction, remaining, singular_pts):
    h = min(remaining, _CHUNK_EFOLDS / _rate(model, x, z))
    # geometric approach toward a singular endpoint ahead of us
    for e in singular_pts:
        d = (e - x) * direction
        if d > 0:
            h = min(h, 0.45 * d)
    # re-evaluate the rate at the tentative chunk end (q may grow ahead)
    x_probe = x + direction * h
    if model.a < x_probe < model.b:
        h = min(h, _CHUNK_EFOLDS / _rate(model, x_probe, z))
    return h


def integrate(model: PotentialModel, z: complex, from_x: float, to_x: float,
              init: ScaledValue, tol: float = DEFAULT_TOL,
              record: bool = False) -> Trajectory:
    """Propagate (u, u') from from_x to to_x with per-chunk renormalization.

    With record=True all chunk boundaries are kept in the trajectory;
    otherwise only the two ends are stored.
    """
    if not (1e-14 < tol < 1e-2):
        raise DomainError("tol must lie in (1e-14, 1e-2)")
    if from_x == to_x:
        raise DomainError("from_x and to_x must differ")
    closed = model.kind in (Kind.Regular, Kind.Tabulated)
    for x in (from_x, to_x):
        ok = model.a <= x <= model.b if closed else model.a < x < model.b
        if not ok:
            raise DomainError(f"x = {x:g} outside the open interval")

    z = complex(z)
    direction = 1.0 if to_x > from_x else -1.0
    span = abs(to_x - from_x)
    singular_pts = _singular_finite_endpoints(model)

    def rhs(x, y):
        return [y[1], (eval_q(model, x) - z) * y[0]]

    x = from_x
    y = np.array([init.u, init.du], dtype=complex)
    expo = init.exponent
    grid = [from_x]
    values = [ScaledValue(complex(y[0]), complex(y[1]), expo)]

    while (to_x - x) * direction > 1e-13 * span:
        remaining = (to_x - x) * direction
        h = _chunk_length(model, x, z, direction, remaining, singular_pts)
        if h < 1e-14 * span:
            raise StepUnderflow(f"required step {h:g} below 1e-14 * span at x = {x:g}")
        x_next = x + direction * h
        if (to_x - x_next) * direction < 1e-13 * span:
            x_next = to_x
        sol = solve_ivp(rhs, (x, x_next), y, method="DOP853",
                        rtol=tol, atol=tol * 1e-2)
        if not sol.success:
            raise NonFinite(f"integrator failed near x = {x:g}: {sol.message}")
        y = sol.y[:, -1]
        if not np.all(np.isfinite(y)):
            raise NonFinite(f"solution became non-finite near x = {x:g}")
        x = float(sol.t[-1])
        s = max(abs(y[0]), abs(y[1]))
        if s > 0:
            y = y / s
            expo += math.log(s)
        if record:
            grid.append(x)
            values.append(ScaledValue(complex(y[0]), complex(y[1]), expo))
    if not record:
        grid.append(x)
        values.append(ScaledValue(complex(y[0]), complex(y[1]), expo))
    return Trajectory(tuple(grid), tuple(values), z, model)


def sample(model: PotentialModel, z: complex, from_x: float, to_x: float,
           init: ScaledValue, xs, tol: float = DEFAULT_TOL) -> list:
    """Propagate from from_x to to_x and return ScaledValues at the points xs.

    xs must be sorted in the direction of integration and lie between from_x
    and to_x (inclusive).  Dense output points inside a chunk share the
    chunk's entry exponent, so their mantissas may reach a few e-folds.
    """
    if not (1e-14 < tol < 1e-2):
        raise DomainError("tol must lie in (1e-14, 1e-2)")
    if from_x == to_x:
        raise DomainError("from_x and to_x must differ")
    z = complex(z)
    direction = 1.0 if to_x > from_x else -1.0
    xs = [float(x) for x in xs]
    if any((x - from_x) * direction < -1e-12 or (to_x - x) * direction < -1e-12
           for x in xs):
        raise DomainError("sample points must lie between from_x and to_x")
    if any((xs[i + 1] - xs[i]) * direction <= 0 for i in range(len(xs) - 1)):
        raise DomainError("sample points must be sorted toward to_x")
    span = abs(to_x - from_x)
    singular_pts = _singular_finite_endpoints(model)

    def rhs(x, y):
        return [y[1], (eval_q(model, x) - z) * y[0]]

    x = from_x
    y = np.array([init.u, init.du], dtype=complex)
    expo = init.exponent
    out = [None] * len(xs)
    i = 0
    while i < len(xs) and abs(xs[i] - from_x) <= 1e-12:
        out[i] = ScaledValue(complex(y[0]), complex(y[1]), expo)
        i += 1

    while (to_x - x) * direction > 1e-13 * span:
        remaining = (to_x - x) * direction
        h = _chunk_length(model, x, z, direction, remaining, singular_pts)
        if h < 1e-14 * span:
            raise StepUnderflow(f"required step {h:g} below 1e-14 * span at x = {x:g}")
        x_next = x + direction * h
        if (to_x - x_next) * direction < 1e-13 * span:
            x_next = to_x
        j = i
        while j < len(xs) and (x_next - xs[j]) * direction >= -1e-12:
            j += 1
        lo, hi = min(x, x_next), max(x, x_next)
        t_eval = [min(max(t, lo), hi) for t in xs[i:j]]
        if not t_eval or abs(t_eval[-1] - x_next) > 1e-12:
            t_eval = t_eval + [x_next]
        sol = solve_ivp(rhs, (x, x_next), y, method="DOP853",
                        rtol=tol, atol=tol * 1e-2, t_eval=t_eval)
        if not sol.success:
            raise NonFinite(f"integrator failed near x = {x:g}: {sol.message}")
        for k in range(j - i):
            out[i + k] = ScaledValue(complex(sol.y[0, k]), complex(sol.y[1, k]), expo)
        i = j
        y = sol.y[:, -1]
        if not np.all(np.isfinite(y)):
            raise NonFinite(f"solution became non-finite near x = {x:g}")
        x = x_next
        s = max(abs(y[0]), abs(y[1]))
        if s > 0:
            y = y / s
            expo += math.log(s)
    for k in range(i, len(xs)):
        # points coinciding with to_x within tolerance
        out[k] = ScaledValue(complex(y[0]), complex(y[1]), expo)
    return out


def wronskian(s1: ScaledValue, s2: ScaledValue) -> tuple[complex, float]:
    """W(s1, s2) = u1 u2' - u1' u2 with exponents added, not exponentiated."""
    return (s1.u * s2.du - s1.du * s2.u, s1.exponent + s2.exponent)


def wronskian_scaled(s1: ScaledValue, s2: ScaledValue) -> LogScaledComplex:
    w, e = wronskian(s1, s2)
    if w == 0:
        return LogScaledComplex.zero()
    return LogScaledComplex(w, e).normalized()


# ---------------------------------------------------------------------------
# Pruefer-phase eigenvalue counting


def _pruefer_endpoint(model, side, lam, omega, cut=None, bc=None):
    """Starting point and scaled Pruefer angle for one end of the interval.

    The scaled angle satisfies tan(theta) = omega u / u'; zeros of u still sit
    at theta = 0 mod pi.  Returns (x, angle) with the angle in [0, pi) at the
    left end and the target angle in (0, pi] at the right end.
    """
    sgn = 1.0 if side is Side.Left else -1.0
    if cut is not None and bc is not None:
        # interior cut with an explicit boundary condition
        ang = bc.angle
        th = math.atan2(omega * math.sin(ang), sgn * math.cos(ang))
        return cut, _fold(th, side)
    cls = classify_endpoint(model, side)
    if cls.template == "oscillator":
        x = seed_point(model, side, lam)
        mu = math.sqrt(max(eval_q(model, x) - lam, 1e-12))
        th = math.atan2(omega, sgn * mu)
        return x, _fold(th, side)
    if cls.template == "frobenius":
        l = _endpoint_coupling(model, side)
        # start close enough that the O(d^2 lam) truncation of the Frobenius
        # angle cannot shift the count boundary
        d = 1e-2 / math.sqrt(1.0 + abs(lam))
        if math.isfinite(model.b - model.a):
            d = min(d, 0.05 * (model.b - model.a))
        x = model.a + d if side is Side.Left else model.b - d
        if cls.tag is EndpointTag.DecaySelect:
            th = math.atan2(omega * d, sgn * (l + 1))
        else:
            bc_end = model.bc_a if side is Side.Left else model.bc_b
            c0, s0 = math.cos(bc_end.angle), math.sin(bc_end.angle)
            u = c0 * d ** (l + 1) + s0 * d ** (-l)
            du = sgn * (c0 * (l + 1) * d**l - s0 * l * d ** (-l - 1))
            th = math.atan2(omega * u, du)
        return x, _fold(th, side)
    if cls.template == "free":
        raise DomainError("oscillation counting needs a discrete-spectrum endpoint")
    # regular endpoint
    bc_end = model.bc_a if side is Side.Left else model.bc_b
    x = model.a if side is Side.Left else model.b
    th = math.atan2(omega * math.sin(bc_end.angle), sgn * math.cos(bc_end.angle))
    return x, _fold(th, side)


def _fold(theta: float, side: Side) -> float:
    """Fold an angle into [0, pi) on the left, (0, pi] on the right."""
    th = theta % math.pi
    if side is Side.Right and th == 0.0:
        th = math.pi
    return th


def oscillation_count(model: PotentialModel, lam: float,
                      sub_interval=None, bc=(None, None)) -> int:
    """Number of eigenvalues strictly below lam of the (sub-)interval operator.

    sub_interval is a pair of cut points (either may be None for the model
    endpoint); bc gives explicit boundary conditions at interior cuts.
    """
    lam = float(lam)
    lo = sub_interval[0] if sub_interval else None
    hi = sub_interval[1] if sub_interval else None
    # frequency scaling keeps the phase derivative near-constant in the
    # oscillatory region, so the adaptive solver takes large steps there
    omega = math.sqrt(max(1.0, lam))
    x_lo, alpha = _pruefer_endpoint(model, Side.Left, lam, omega, lo, bc[0])
    x_hi, beta = _pruefer_endpoint(model, Side.Right, lam, omega, hi, bc[1])
    if not x_lo < x_hi:
        raise DomainError("empty counting interval")

    def rhs(x, y):
        c, s = math.cos(y[0]), math.sin(y[0])
        return [omega * c * c + ((lam - eval_q(model, x)) / omega) * s * s]

    sol = solve_ivp(rhs, (x_lo, x_hi), [alpha], method="RK45",
                    rtol=1e-8, atol=1e-10, dense_output=False)
    if not sol.success:
        raise NonFinite(f"Pruefer integration failed: {sol.message}")
    theta_end = float(sol.y[0, -1])
    if theta_end <= beta + 1e-9:
        return 0
    return int(math.floor((theta_end - beta - 1e-9) / math.pi)) + 1
