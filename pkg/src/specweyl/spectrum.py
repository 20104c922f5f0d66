"""Eigenvalues, sub-interval spectra, norming constants, the atomic spectral
measure, the expansion transform and convergence-exponent estimation.

Eigenvalues of the full operator are the zeros of W(phi, chi)(lambda);
brackets come from Pruefer oscillation counts and are refined by Brent's
method on the scaled Wronskian mantissa.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.optimize import brentq

from .errors import (BracketFail, DomainError, GridMismatch, NotAnEigenvalue,
                     TooFewEigenvalues)
from .model import BoundaryCondition, Side, classify_endpoint, seed_point
from .propagate import oscillation_count, sample
from .scaling import LogScaledComplex, _safe_exp
from .weyl import FundamentalFrame

__all__ = [
    "SpectralMeasure", "ExponentReport", "eigenvalues", "sub_spectrum",
    "norming_constants", "spectral_measure", "expand", "exponent_report",
    "wronskian_derivative", "poschl_teller_offset",
]

_REFINE_REL = 1e-9
_GENUS_MARGIN = 0.1   # kappa*(p+1) must exceed 1 by this much to count as convergent


@dataclass(frozen=True)
class SpectralMeasure:
    """Atoms (lambda_n, gamma_n^{-2}) of rho plus the gauge that fixed them."""

    atoms: tuple          # ((lambda, weight), ...) sorted by lambda
    gauge: dict

    def __post_init__(self):
        lams = [a[0] for a in self.atoms]
        if any(l2 <= l1 for l1, l2 in zip(lams, lams[1:])):
            raise DomainError("spectral measure atoms must be strictly increasing")
        if any(w <= 0 or not math.isfinite(w) for _, w in self.atoms):
            raise DomainError("spectral measure weights must be positive and finite")


@dataclass(frozen=True)
class ExponentReport:
    kappa: float          # growth exponent of lambda_n ~ C n^kappa
    s: float              # convergence exponent estimate 1/kappa
    genus: int
    r_squared: float
    window: tuple         # (first index, last index) of the fit, 1-based
    flagged: bool         # True if s fell below the theoretical floor 1/2


# ---------------------------------------------------------------------------
# eigenvalues of the full operator


def _count(frame, lam, sub_interval=None, bc=(None, None)):
    return oscillation_count(frame.model, lam, sub_interval, bc)


def _find_ground_floor(counter) -> float:
    """A level lo with counter(lo) == 0, stepping down geometrically."""
    lo, step = 0.0, 1.0
    for _ in range(80):
        if counter(lo) == 0:
            return lo
        lo -= step
        step *= 2.0
    raise BracketFail("could not find a level below the spectrum")


def _find_roof(counter, lo, count) -> float:
    hi, step = lo + 1.0, 1.0
    for _ in range(80):
        if counter(hi) >= count:
            return hi
        hi += step
        step *= 2.0
    raise BracketFail(f"could not bracket {count} eigenvalues above {lo:g}")


def _count_brackets(counter, count):
    """Brackets (l_n, u_n) with counter(l_n) <= n < counter(u_n), n = 0..count-1.

    Obtained by bisecting the nondecreasing counting function until every
    requested crossing is isolated to relative width ~1e-3.
    """
    lo = _find_ground_floor(counter)
    hi = _find_roof(counter, lo, count)
    # known counting values at sorted levels
    levels = {lo: 0, hi: counter(hi)}
    brackets = []
    for n in range(count):
        # smallest recorded level with counter > n and largest with counter <= n
        l = max(x for x, c in levels.items() if c <= n)
        u = min(x for x, c in levels.items() if c > n)
        while u - l > 1e-3 * (1.0 + abs(l)):
            mid = 0.5 * (l + u)
            c = counter(mid)
            levels[mid] = c
            if c <= n:
                l = mid
            else:
                u = mid
        brackets.append((l, u))
    return brackets


def _refine(f, l, u, scale_hint=1.0):
    """Zero of f in [l, u] by Brent's method; demands a sign change.

    Counting brackets can miss by a hair near a count boundary, so the
    bracket is widened a few times before giving up.
    """
    fl, fu = f(l), f(u)
    if fl == 0.0:
        return l
    if fu == 0.0:
        return u
    width = max(u - l, 1e-6 * (1.0 + abs(u)))
    tries = 0
    while fl * fu > 0:
        if tries >= 4:
            raise BracketFail(f"no sign change on bracket ({l:g}, {u:g}); "
                              "counting and sign changes disagree")
        l, u = l - width, u + width
        width *= 2.0
        fl, fu = f(l), f(u)
        tries += 1
    return brentq(f, l, u, xtol=_REFINE_REL * (1.0 + abs(u)), rtol=8.9e-16)


def _wronskian_sign_function(frame):
    """Real-valued W(phi, chi)(lambda) with a bracket-local exponent gauge."""
    eref = [None]

    def f(lam):
        w = frame.wronskian_phi_chi(complex(lam))
        if w.is_zero:
            return 0.0
        if eref[0] is None:
            eref[0] = w.exponent
        return w.mantissa.real * _safe_exp(w.exponent - eref[0])

    def reset():
        eref[0] = None

    f.reset = reset
    return f


def eigenvalues(frame: FundamentalFrame, count: int) -> list:
    """Lowest `count` eigenvalues, bracketed by oscillation counts and
    refined on the Wronskian to |dlam| <= 1e-9 (1 + |lam|)."""
    if count < 1:
        raise DomainError("count must be >= 1")
    brackets = _count_brackets(lambda lam: _count(frame, lam), count)
    f = _wronskian_sign_function(frame)
    out = []
    for l, u in brackets:
        f.reset()
        out.append(_refine(f, l, u))
    return out


def sub_spectrum(frame: FundamentalFrame, cut: float, side: Side,
                 bc: str, count: int) -> list:
    """Dirichlet/Neumann eigenvalues of the half-interval operator at `cut`.

    side Left: zeros in lambda of phi(., cut) ("dirichlet") or of
    phi'(., cut) ("neumann"); side Right mirrors with chi.
    """
    if not frame.model.a < cut < frame.model.b:
        raise DomainError("cut must lie inside (a, b)")
    bc = bc.lower()
    if bc not in ("dirichlet", "neumann"):
        raise DomainError("bc must be 'dirichlet' or 'neumann'")
    bc_obj = (BoundaryCondition.dirichlet() if bc == "dirichlet"
              else BoundaryCondition.neumann())
    if side is Side.Left:
        sub, bcs = (None, cut), (None, bc_obj)
    else:
        sub, bcs = (cut, None), (bc_obj, None)
    counter = lambda lam: _count(frame, lam, sub, bcs)
    brackets = _count_brackets(counter, count)

    eref = [None]

    def f(lam):
        v = (frame.phi(complex(lam), cut) if side is Side.Left
             else frame.chi(complex(lam), cut))
        m = v.u.real if bc == "dirichlet" else v.du.real
        if eref[0] is None:
            eref[0] = v.exponent
        return m * _safe_exp(v.exponent - eref[0])

    out = []
    for l, u in brackets:
        eref[0] = None
        out.append(_refine(f, l, u))
    return out


# ---------------------------------------------------------------------------
# norming constants and the spectral measure


def _domain_bounds(frame, lam):
    """Truncated integration domain [x_lo, x_hi] for an eigenfunction."""
    m = frame.model
    x_lo, _ = frame._seed(Side.Left, complex(lam))
    x_hi, _ = frame._seed(Side.Right, complex(lam))
    if classify_endpoint(m, Side.Left).template == "regular":
        x_lo = m.a
    if classify_endpoint(m, Side.Right).template == "regular":
        x_hi = m.b
    return x_lo, x_hi


def _squared_integral(frame, z, side, x_from, x_to, npts=2001):
    """Integral of the (real) eigenfunction squared, in the seed gauge.

    Returns (integral as LogScaledComplex magnitude, endpoint ScaledValue).
    """
    xs = np.linspace(x_from, x_to, npts)
    order = xs if side is Side.Left else xs[::-1]
    x0, seed = frame._seed(side, complex(z))
    vals = sample(frame.model, complex(z), x0, order[-1], seed, order, frame.tol)
    # common exponent: the largest one on the grid
    emax = max(v.exponent for v in vals)
    ys = np.array([(v.u.real * _safe_exp(v.exponent - emax)) ** 2 for v in vals])
    if side is Side.Right:
        ys = ys[::-1]
    integral = float(simpson(ys, x=xs))
    end = vals[-1]
    return LogScaledComplex(integral, 2.0 * emax).normalized(), end


def norming_constants(frame: FundamentalFrame, eigs, side: Side = Side.Left) -> list:
    """gamma_n^2 = integral of the squared eigenfunction, in the seed gauge.

    The integral is split at the base point c: the near-side eigenfunction is
    integrated directly and the far side uses the opposite-endpoint solution
    rescaled by the matching ratio, which avoids contamination by the growing
    mode past the turning points.
    """
    out = []
    for lam in eigs:
        lam = float(lam)
        _assert_eigenvalue(frame, lam)
        x_lo, x_hi = _domain_bounds(frame, lam)
        c = frame.c
        if not x_lo < c < x_hi:
            raise DomainError("base point outside the truncated domain")
        left, pl = _squared_integral(frame, lam, Side.Left, x_lo, c)
        right, pr = _squared_integral(frame, lam, Side.Right, c, x_hi)
        # matching ratio phi/chi at c from whichever component is larger
        ratio = _match_ratio(pl, pr)
        if side is Side.Left:
            total = left + right * (ratio * ratio)
        else:
            inv = LogScaledComplex(1.0, 0.0) / ratio
            total = right + left * (inv * inv)
        g2 = total.value().real
        if not (math.isfinite(g2) and g2 > 0):
            raise NotAnEigenvalue(f"norming integral not positive at {lam:g}")
        out.append(g2)
    return out


def _match_ratio(pl, pr) -> LogScaledComplex:
    """phi/chi at the matching point, via value or derivative components."""
    if abs(pl.u) * abs(pr.u) >= abs(pl.du) * abs(pr.du):
        num, den = pl.u.real, pr.u.real
    else:
        num, den = pl.du.real, pr.du.real
    if den == 0.0:
        raise NotAnEigenvalue("matching-point collision: chi vanishes in "
                              "value and derivative")
    return (LogScaledComplex(num, pl.exponent).normalized()
            / LogScaledComplex(den, pr.exponent).normalized())


def _assert_eigenvalue(frame, lam, rel=1e-5):
    """Reject lam unless W(phi, chi) is small relative to phi, chi at c."""
    w = frame.wronskian_phi_chi(complex(lam))
    if w.is_zero:
        return
    pc = frame.phi_at_c(complex(lam))
    cc = frame.chi_at_c(complex(lam))
    scale = (pc.exponent + math.log(max(abs(pc.u), abs(pc.du)))
             + cc.exponent + math.log(max(abs(cc.u), abs(cc.du))))
    if w.abs_log() - scale > math.log(rel * (1.0 + abs(lam))):
        raise NotAnEigenvalue(
            f"lambda = {lam:g}: Wronskian residual too large "
            f"(log rel {w.abs_log() - scale:.2f})")


def spectral_measure(frame: FundamentalFrame, count: int) -> SpectralMeasure:
    """rho = sum gamma_n^{-2} delta_{lambda_n} in the frame's phi gauge."""
    eigs = eigenvalues(frame, count)
    g2 = norming_constants(frame, eigs, Side.Left)
    atoms = tuple((lam, 1.0 / g) for lam, g in zip(eigs, g2))
    gauge = {
        "c": frame.c,
        "seed_offset": frame.seed_offset,
        "kind": frame.model.kind.value,
        "side": "left",
    }
    return SpectralMeasure(atoms, gauge)


# ---------------------------------------------------------------------------
# expansion transform


def expand(frame: FundamentalFrame, f, measure: SpectralMeasure) -> list:
    """Generalized Fourier coefficients fhat(lambda_n) = int phi(lambda_n,x) f(x) dx.

    f is a sampled function given as a pair (xs, values) on a strictly
    increasing quadrature grid inside (a, b).
    """
    xs, fs = f
    xs = np.asarray(xs, dtype=float)
    fs = np.asarray(fs, dtype=float)
    if xs.ndim != 1 or xs.shape != fs.shape or len(xs) < 9:
        raise GridMismatch("sampled function needs matching 1-d grids, >= 9 points")
    if not np.all(np.diff(xs) > 0):
        raise GridMismatch("quadrature grid must be strictly increasing")
    if xs[0] < frame.model.a or xs[-1] > frame.model.b:
        raise GridMismatch("quadrature grid leaves the model interval")
    out = []
    for lam, _ in measure.atoms:
        x0, seed = frame._seed(Side.Left, complex(lam))
        grid = [x for x in xs if (x - x0) >= 0] if x0 > xs[0] else list(xs)
        vals = sample(frame.model, complex(lam), x0, grid[-1], seed, grid, frame.tol)
        phi_vals = np.zeros_like(xs)
        off = len(xs) - len(grid)
        for i, v in enumerate(vals):
            phi_vals[off + i] = v.u.real * _safe_exp(v.exponent)
        out.append(float(simpson(phi_vals * fs, x=xs)))
    return out


# ---------------------------------------------------------------------------
# convergence exponent and genus


def exponent_report(eigs) -> ExponentReport:
    """Growth exponent kappa of lambda_n ~ C n^kappa from the top half of the
    list, convergence exponent s = 1/kappa and the genus."""
    eigs = [float(x) for x in eigs]
    if len(eigs) < 20:
        raise TooFewEigenvalues(f"need >= 20 eigenvalues, got {len(eigs)}")
    n0 = len(eigs) // 2
    window = list(range(n0 + 1, len(eigs) + 1))  # 1-based indices
    lams = eigs[n0:]
    if any(l <= 0 for l in lams):
        raise TooFewEigenvalues("top-half eigenvalues must be positive")
    ln_n = np.log(window)
    ln_l = np.log(lams)
    kappa, intercept = np.polyfit(ln_n, ln_l, 1)
    resid = ln_l - (kappa * ln_n + intercept)
    ss_tot = float(np.sum((ln_l - ln_l.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    s = 1.0 / kappa
    # sum 1/lambda^(p+1) ~ sum n^{-kappa(p+1)} converges iff kappa(p+1) > 1;
    # equality is divergent, and the estimator noise gets a safety margin
    p = 0
    while kappa * (p + 1) <= 1.0 + _GENUS_MARGIN:
        p += 1
        if p > 10:
            raise TooFewEigenvalues("genus did not stabilize; kappa too small")
    return ExponentReport(float(kappa), float(s), p, r2,
                          (window[0], window[-1]), bool(s < 0.45))


# ---------------------------------------------------------------------------
# Wronskian derivative at an eigenvalue


def wronskian_derivative(frame: FundamentalFrame, lam: float) -> float:
    """d/dz W(phi, chi) at an eigenvalue, by Richardson-extrapolated central
    differences with h = 1e-5 (1 + |lam|)."""
    lam = float(lam)
    _assert_eigenvalue(frame, lam)
    h = 1e-5 * (1.0 + abs(lam))

    def w(x):
        v = frame.wronskian_phi_chi(complex(x))
        return 0.0 if v.is_zero else v.value().real

    d1 = (w(lam + h) - w(lam - h)) / (2 * h)
    d2 = (w(lam + h / 2) - w(lam - h / 2)) / h
    return (4.0 * d2 - d1) / 3.0


# ---------------------------------------------------------------------------
# model-specific helper


def poschl_teller_offset(eigs, nu: float) -> int:
    """Index offset making lambda_n = pi^2 (n + offset + nu)^2, n = 0,1,...

    Determined numerically from the computed spectrum rather than fixed by
    convention; returns the offset in {0, 1} with the smaller misfit.
    """
    eigs = [float(x) for x in eigs]
    best, best_err = None, math.inf
    for off in (0, 1):
        err = max(abs(lam - math.pi**2 * (n + off + nu) ** 2) / abs(lam)
                  for n, lam in enumerate(eigs))
        if err < best_err:
            best, best_err = off, err
    return best
