"""Special functions: complex log-Gamma, Weber (parabolic cylinder) functions,
Weierstrass elementary factors and a Hermite-function test oracle.

All potentially huge or tiny magnitudes are returned log-scaled; callers
combine exponents instead of exponentiating blindly.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

import mpmath as mp
import scipy.special as sps

from .errors import BranchError, PoleError, RangeError
from .scaling import LogScaledComplex

WEBER_ORDER_LIMIT = 200.0
HERMITE_LIMIT = 60


def log_gamma(z: complex) -> complex:
    """Principal branch of log Gamma(z).

    Raises PoleError at nonpositive integers.
    """
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise PoleError(f"log_gamma pole at z={z.real:g}")
    return complex(sps.loggamma(z))


def _mp_to_logscaled(v) -> LogScaledComplex:
    v = mp.mpc(v)
    if v == 0:
        return LogScaledComplex.zero()
    lg = mp.log(v)
    return LogScaledComplex.from_log(complex(float(mp.re(lg)), float(mp.im(lg))))


@lru_cache(maxsize=4096)
def weber_pair(nu: complex, x: float) -> tuple[LogScaledComplex, LogScaledComplex]:
    """D_nu(x) and its derivative D_nu'(x), log-scaled, without a range cap.

    Used internally for oscillator seeds; the derivative comes from the
    recurrence D_nu'(x) = (x/2) D_nu(x) - D_{nu+1}(x).  Memoized: large
    imaginary orders cost seconds in mpmath and recur across one frame.
    """
    nu_mp = mp.mpc(nu)
    x_mp = mp.mpf(x)
    d0 = mp.pcfd(nu_mp, x_mp)
    d1 = mp.pcfd(nu_mp + 1, x_mp)
    dd = (x_mp / 2) * d0 - d1
    return _mp_to_logscaled(d0), _mp_to_logscaled(dd)


def weber_D(nu: complex, x: float) -> LogScaledComplex:
    """Weber function D_nu(x) for real x, log-scaled.

    Validated for |nu| <= 200; relative accuracy better than 1e-8 there.
    """
    if abs(complex(nu)) > WEBER_ORDER_LIMIT:
        raise RangeError(
            f"|nu| = {abs(complex(nu)):g} exceeds validated bound {WEBER_ORDER_LIMIT:g}"
        )
    return _mp_to_logscaled(mp.pcfd(mp.mpc(nu), mp.mpf(x)))


def weber_D_derivative(nu: complex, x: float) -> LogScaledComplex:
    """Derivative of D_nu at real x, log-scaled (same validated range)."""
    if abs(complex(nu)) > WEBER_ORDER_LIMIT:
        raise RangeError(
            f"|nu| = {abs(complex(nu)):g} exceeds validated bound {WEBER_ORDER_LIMIT:g}"
        )
    return weber_pair(nu, x)[1]


def weber_ray_asymptotic(z: complex, x: float) -> LogScaledComplex:
    """Leading large-|z| term 2^((z-1)/4) sqrt(pi)/Gamma((3-z)/4) * exp(x*sqrt(-z)).

    This is the ray asymptotic of D_{(z-1)/2}(sqrt(2) x); principal square
    root, branch cut on the negative real axis, so z must stay off the
    positive real axis.
    """
    z = complex(z)
    if z.imag == 0.0 and z.real > 0.0:
        raise BranchError("z on the positive real axis")
    log_value = (
        (z - 1) / 4 * math.log(2.0)
        + 0.5 * math.log(math.pi)
        - log_gamma((3 - z) / 4)
        + x * cmath.sqrt(-z)
    )
    return LogScaledComplex.from_log(log_value)


def weber_central_value(z: complex) -> LogScaledComplex:
    """D_{(z-1)/2}(0) = 2^((z-1)/4) sqrt(pi)/Gamma((3-z)/4), log-scaled."""
    z = complex(z)
    w = (3 - z) / 4
    if w.imag == 0.0 and w.real <= 0.0 and w.real == math.floor(w.real):
        return LogScaledComplex.zero()
    log_value = (z - 1) / 4 * math.log(2.0) + 0.5 * math.log(math.pi) - log_gamma(w)
    return LogScaledComplex.from_log(log_value)


def weber_central_derivative(z: complex) -> LogScaledComplex:
    """D_{(z-1)/2}'(0) = -2^((z+1)/4) sqrt(pi)/Gamma((1-z)/4), log-scaled."""
    z = complex(z)
    w = (1 - z) / 4
    if w.imag == 0.0 and w.real <= 0.0 and w.real == math.floor(w.real):
        return LogScaledComplex.zero()
    log_value = (z + 1) / 4 * math.log(2.0) + 0.5 * math.log(math.pi) - log_gamma(w)
    return -LogScaledComplex.from_log(log_value)


def elementary_factor(p: int, zeta: float, z: complex) -> complex:
    """Weierstrass elementary factor E_p(zeta, z); E_p(0, z) = z."""
    if p < 0:
        raise RangeError("p must be >= 0")
    if zeta == 0.0:
        return complex(z)
    w = z / zeta
    s = sum(w**k / k for k in range(1, p + 1))
    return (1 - w) * cmath.exp(s)


def log_elementary_factor(p: int, zeta: float, z: complex) -> complex:
    """Principal log of E_p(zeta, z) for zeta != 0, z != zeta."""
    if zeta == 0.0:
        return cmath.log(z)
    w = z / zeta
    return cmath.log(1 - w) + sum(w**k / k for k in range(1, p + 1))


def hermite_oracle(n: int, x: float) -> float:
    """Hermite function H_n(x) exp(-x^2/2) by the three-term recurrence.

    The attached eigenvalue oracle for the harmonic oscillator is 2n+1.
    """
    if not 0 <= n <= HERMITE_LIMIT:
        raise RangeError(f"n = {n} outside [0, {HERMITE_LIMIT}]")
    g = math.exp(-x * x / 2)
    h_prev, h = 1.0, 2.0 * x
    if n == 0:
        return g
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h * g


def hermite_eigenvalue(n: int) -> float:
    return 2.0 * n + 1.0
