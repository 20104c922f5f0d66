"""Product representations over interlacing Dirichlet/Neumann sub-spectra:
the Krein product for m_-, the correction polynomial h(z), and the
reconstruction of phi from eigenvalue data.

All products are accumulated as sums of logarithms, pairing each numerator
factor with its partner denominator so the joint tails cancel.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass

from .errors import DomainError, NonConvergent, PoleHit
from .model import Side
from .scaling import LogScaledComplex, ScaledValue
from .special import log_elementary_factor
from .spectrum import exponent_report
from .weyl import FundamentalFrame

__all__ = ["ProductRep", "HPolynomial", "krein_m_minus", "fit_krein_constant",
           "h_polynomial", "construct_phi"]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProductRep:
    """Interlacing Dirichlet (mu) and Neumann (nu) eigenvalues of (a, c),
    genus p, multiplicative constant C and truncation length."""

    mu: tuple
    nu: tuple
    p: int = 0
    C: float = 1.0
    N: int = 500

    def __post_init__(self):
        mu, nu = self.mu, self.nu
        if len(mu) != len(nu):
            raise DomainError("mu and nu lists must have equal length")
        n = min(len(mu), self.N)
        for i in range(n):
            if not nu[i] < mu[i]:
                raise DomainError(f"interlacing violated at index {i}: "
                                  f"nu={nu[i]:g} !< mu={mu[i]:g}")
            if i + 1 < n and not mu[i] < nu[i + 1]:
                raise DomainError(f"interlacing violated at index {i}: "
                                  f"mu={mu[i]:g} !< nu={nu[i+1]:g}")
        if self.C == 0.0:
            raise DomainError("C must be nonzero")
        if self.p < 0:
            raise DomainError("genus must be >= 0")

    @staticmethod
    def from_frame(frame: FundamentalFrame, cut: float, count: int,
                   C: float = 1.0, p=None) -> "ProductRep":
        from .spectrum import sub_spectrum
        mu = tuple(sub_spectrum(frame, cut, Side.Left, "dirichlet", count))
        nu = tuple(sub_spectrum(frame, cut, Side.Left, "neumann", count))
        if p is None:
            p = exponent_report(mu).genus if count >= 20 else 0
        return ProductRep(mu, nu, p=p, C=C, N=count)


@dataclass(frozen=True)
class HPolynomial:
    """Coefficients of h(z) = c_0 + c_1 z + ... (degree <= genus), with an
    empirical tail bound on the truncated inner sums."""

    coeffs: tuple
    tail_bound: float


def _paired_terms(rep, z, n_terms):
    """Log of each paired factor E_0(nu_{n-1}, z)/E_0(mu_n, z)."""
    z = complex(z)
    for i in range(n_terms):
        yield (log_elementary_factor(0, rep.nu[i], z)
               - log_elementary_factor(0, rep.mu[i], z))


def krein_m_minus(rep: ProductRep, z: complex, n_terms=None) -> complex:
    """C * prod E_0(nu_{n-1}, z)/E_0(mu_n, z), evaluated pairwise in log form."""
    z = complex(z)
    n_terms = min(rep.N, len(rep.mu)) if n_terms is None else n_terms
    if n_terms > len(rep.mu):
        raise DomainError(f"only {len(rep.mu)} terms available")
    for m in rep.mu[:n_terms]:
        if abs(z - m) < 1e-10 * (1.0 + abs(m)):
            raise PoleHit(f"z = {z} within 1e-10 of the Dirichlet eigenvalue {m:g}")
    total = sum(_paired_terms(rep, z, n_terms))
    return rep.C * cmath.exp(total)


def fit_krein_constant(rep: ProductRep, frame: FundamentalFrame,
                       z0: complex) -> float:
    """C making the truncated product match the direct m_- at z0."""
    z0 = complex(z0)
    if z0.imag == 0.0:
        raise DomainError("z0 must be nonreal")
    unit = ProductRep(rep.mu, rep.nu, rep.p, 1.0, rep.N)
    direct = frame.m_half_line(z0, Side.Left)
    ratio = direct / krein_m_minus(unit, z0)
    if abs(ratio.imag) > 1e-3 * abs(ratio):
        log.warning("fit_krein_constant: imaginary residual %.3g of |C|=%.3g",
                    abs(ratio.imag), abs(ratio))
    return ratio.real


def h_polynomial(rep: ProductRep) -> HPolynomial:
    """h(z) = sum_{k=1}^p z^k/k sum_n (mu_n^{-k} - nu_{n-1}^{-k}) + log C.

    The inner sums are truncated at N; convergence is checked by comparing
    the half-sum against the full sum (Cauchy criterion).
    """
    n = min(rep.N, len(rep.mu))
    coeffs = [math.log(abs(rep.C))]
    tail = 0.0
    for k in range(1, rep.p + 1):
        terms = [(1.0 / rep.mu[i] ** k - 1.0 / rep.nu[i] ** k) for i in range(n)]
        s_half = sum(terms[: n // 2])
        s_full = sum(terms)
        diff = abs(s_full - s_half)
        if diff > 0.25 * (abs(s_full) + 1e-12):
            raise NonConvergent(
                f"inner sum for z^{k} fails the Cauchy test: "
                f"|S_N - S_N/2| = {diff:g} vs |S_N| = {abs(s_full):g}")
        # the interlacing gap bounds the tail by the last paired difference
        tail = max(tail, n * abs(terms[-1]))
        coeffs.append(s_full / k)
    return HPolynomial(tuple(coeffs), tail)


def construct_phi(rep: ProductRep, frame: FundamentalFrame, z: complex,
                  x: float) -> ScaledValue:
    """Reconstruction alpha(z) c(z,x) + beta(z) s(z,x) from eigenvalue data.

    s, c are the base-point solutions with s(z,c)=0, s'(z,c)=1 and c(z,c)=1,
    c'(z,c)=0; alpha is the truncated product of E_p(mu_n, .), so the
    reconstruction vanishes at x=c exactly at the Dirichlet eigenvalues, and
    beta = -m_-(z) alpha(z) with m_- from the Krein product supplies the
    slope -phi'(z,c).
    """
    z = complex(z)
    n = min(rep.N, len(rep.mu))
    log_alpha = sum(log_elementary_factor(rep.p, rep.mu[i], z) for i in range(n))
    alpha = LogScaledComplex.from_log(log_alpha)
    beta = -(alpha * LogScaledComplex.from_complex(krein_m_minus(rep, z)))
    c_sol = _basepoint_solution(frame, z, x, ScaledValue(1.0, 0.0, 0.0))
    s_sol = _basepoint_solution(frame, z, x, ScaledValue(0.0, 1.0, 0.0))
    return c_sol.mul_log_scaled(alpha) + s_sol.mul_log_scaled(beta)


def _basepoint_solution(frame, z, x, init):
    from .propagate import integrate
    if x == frame.c:
        return init
    return integrate(frame.model, z, frame.c, x, init, frame.tol).final
