"""Fundamental frames (phi, theta), Weyl solutions and Weyl functions.

A frame fixes a base point c and carries the distinguished solutions:
phi(z, .) seeded at the left endpoint, chi(z, .) seeded at the right one,
and theta(z, .) normalized pointwise in z by theta(z,c)=0,
theta'(z,c) = -1/phi(z,c), so that W(theta, phi) = 1 automatically.
The singular Weyl function in this normalization reduces to
M(z) = -chi(z,c) / (phi(z,c) * W(phi, chi)(z)).
"""

from __future__ import annotations

import math
from typing import Iterable

from .errors import DirichletCollision, DomainError, EigenvalueCollision
from .model import PotentialModel, Side, asymptotic_seed, seed_point
from .propagate import DEFAULT_TOL, integrate, wronskian_scaled
from .scaling import LogScaledComplex, ScaledValue

_COLLISION_TOL = 1e-12


class FundamentalFrame:
    """Base point plus cached propagation of the distinguished solutions.

    seed_offset, when given, pins the oscillator seed radius so that two
    frames on different models can be gauge-matched for comparisons.
    """

    def __init__(self, model: PotentialModel, c: float,
                 seed_offset: float | None = None, tol: float = DEFAULT_TOL):
        if not model.a < c < model.b:
            raise DomainError("base point c must lie inside (a, b)")
        self.model = model
        self.c = float(c)
        self.seed_offset = seed_offset
        self.tol = tol
        self._cache: dict = {}

    # -- seeds ------------------------------------------------------------

    def _seed(self, side: Side, z: complex) -> tuple[float, ScaledValue]:
        z = complex(z)
        key = ("seed", side, z)
        if key not in self._cache:
            x0 = seed_point(self.model, side, z)
            if self.seed_offset is not None and math.isinf(
                    self.model.a if side is Side.Left else self.model.b):
                off = max(self.seed_offset, abs(x0))
                x0 = -off if side is Side.Left else off
            self._cache[key] = (x0, asymptotic_seed(self.model, side, z, x0))
        return self._cache[key]

    # -- distinguished solutions ------------------------------------------

    def _endpoint_solution(self, side: Side, z: complex,
                           xs: Iterable[float]) -> dict[float, ScaledValue]:
        """Values of phi (side Left) or chi (side Right) at the points xs."""
        z = complex(z)
        xs = sorted(set(float(x) for x in xs), reverse=(side is Side.Right))
        x0, val = self._seed(side, z)
        out = {}
        cur_x, cur = x0, val
        for x in xs:
            if x != cur_x:
                cur = integrate(self.model, z, cur_x, x, cur, self.tol).final
                cur_x = x
            out[x] = cur
        return out

    def phi(self, z: complex, x: float) -> ScaledValue:
        """Solution in the domain of H near the left endpoint."""
        return self._endpoint_solution(Side.Left, z, [x])[x]

    def chi(self, z: complex, x: float) -> ScaledValue:
        """Mirror of phi at the right endpoint."""
        return self._endpoint_solution(Side.Right, z, [x])[x]

    def phi_at_c(self, z: complex) -> ScaledValue:
        z = complex(z)
        key = ("phi_c", z)
        if key not in self._cache:
            self._cache[key] = self.phi(z, self.c)
        return self._cache[key]

    def chi_at_c(self, z: complex) -> ScaledValue:
        z = complex(z)
        key = ("chi_c", z)
        if key not in self._cache:
            self._cache[key] = self.chi(z, self.c)
        return self._cache[key]

    def theta(self, z: complex, x: float) -> ScaledValue:
        """Companion solution with theta(z,c) = 0, theta'(z,c) = -1/phi(z,c)."""
        pc = self.phi_at_c(z)
        if abs(pc.u) < _COLLISION_TOL:
            raise DirichletCollision(
                f"z = {z} too close to a Dirichlet eigenvalue of (a, c)")
        init = ScaledValue(0.0, -1.0 / pc.u, -pc.exponent)
        if x == self.c:
            return init
        return integrate(self.model, z, self.c, x, init, self.tol).final

    # -- Weyl functions ----------------------------------------------------

    def m_half_line(self, z: complex, side: Side) -> complex:
        """m_-(z) = -phi'(z,c)/phi(z,c) or m_+(z) = chi'(z,c)/chi(z,c)."""
        v = self.phi_at_c(z) if side is Side.Left else self.chi_at_c(z)
        if abs(v.u) < _COLLISION_TOL:
            raise DirichletCollision(
                f"z = {z} too close to a half-line eigenvalue at c")
        ratio = v.du / v.u
        return -ratio if side is Side.Left else ratio

    def wronskian_phi_chi(self, z: complex) -> LogScaledComplex:
        """W(phi, chi)(z); vanishes exactly at eigenvalues of H."""
        return wronskian_scaled(self.phi_at_c(z), self.chi_at_c(z))

    def M_scaled(self, z: complex) -> LogScaledComplex:
        pc = self.phi_at_c(z)
        cc = self.chi_at_c(z)
        if abs(pc.u) < _COLLISION_TOL:
            raise DirichletCollision(
                f"z = {z} too close to a Dirichlet eigenvalue of (a, c)")
        w = self.wronskian_phi_chi(z)
        if w.is_zero or abs(w.mantissa) < _COLLISION_TOL:
            raise EigenvalueCollision(f"z = {z} too close to an eigenvalue of H")
        num = LogScaledComplex(cc.u, cc.exponent).normalized()
        den = LogScaledComplex(pc.u, pc.exponent).normalized() * w
        return -(num / den)

    def singular_M(self, z: complex) -> complex:
        """Singular Weyl function M(z) in this frame's gauge."""
        return self.M_scaled(z).value()

    def psi_scaled(self, z: complex, x: float) -> ScaledValue:
        """Weyl solution psi = theta + M phi, proportional to chi.

        Evaluated through the identity psi = -chi / W(phi, chi), which is the
        same function under this theta normalization but avoids the
        catastrophic cancellation of theta against M phi at large |z|.
        """
        w = self.wronskian_phi_chi(z)
        if w.is_zero or abs(w.mantissa) < _COLLISION_TOL:
            raise EigenvalueCollision(f"z = {z} too close to an eigenvalue of H")
        factor = -(LogScaledComplex(1.0, 0.0) / w)
        return self.chi(z, x).mul_log_scaled(factor)

    def psi(self, z: complex, x: float) -> complex:
        return self.psi_scaled(z, x).value()
