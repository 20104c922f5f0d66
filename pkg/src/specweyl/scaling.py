"""Log-scaled representations of solution values and complex magnitudes.

Solutions of -u'' + q u = z u grow like exp(x*sqrt(-z)) or exp(x^2/2), far
beyond double-precision range.  Values are therefore carried as a mantissa
of order one together with a separate real exponent; the true value is
mantissa * exp(exponent).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass


def _safe_exp(e: float) -> float:
    if e > 700.0:
        return math.inf
    if e < -745.0:
        return 0.0
    return math.exp(e)


@dataclass(frozen=True)
class ScaledValue:
    """A solution pair (u, u') at a point, scaled by a common exponent.

    The represented values are u*exp(exponent) and du*exp(exponent).
    """

    u: complex
    du: complex
    exponent: float = 0.0

    def normalized(self) -> "ScaledValue":
        """Renormalize so that max(|u|, |du|) = 1, absorbing into the exponent."""
        s = max(abs(self.u), abs(self.du))
        if s == 0.0 or not math.isfinite(s):
            return self
        return ScaledValue(self.u / s, self.du / s, self.exponent + math.log(s))

    def scaled(self, factor: complex) -> "ScaledValue":
        return ScaledValue(self.u * factor, self.du * factor, self.exponent).normalized()

    def value(self) -> complex:
        """True u, exponentiated.  Over/underflows saturate to inf/0."""
        return self.u * _safe_exp(self.exponent)

    def derivative(self) -> complex:
        return self.du * _safe_exp(self.exponent)

    def log_u(self) -> complex:
        """Principal log of the true u; requires u != 0."""
        return cmath.log(self.u) + self.exponent

    def __add__(self, other: "ScaledValue") -> "ScaledValue":
        """Sum of two solution pairs with exponent alignment."""
        if self.exponent >= other.exponent:
            big, small = self, other
        else:
            big, small = other, self
        shift = _safe_exp(small.exponent - big.exponent)
        return ScaledValue(
            big.u + small.u * shift, big.du + small.du * shift, big.exponent
        ).normalized()

    def mul_log_scaled(self, factor: "LogScaledComplex") -> "ScaledValue":
        if factor.is_zero:
            return ScaledValue(0.0, 0.0, 0.0)
        return ScaledValue(
            self.u * factor.mantissa, self.du * factor.mantissa,
            self.exponent + factor.exponent,
        ).normalized()


@dataclass(frozen=True)
class LogScaledComplex:
    """A complex number mantissa*exp(exponent) with |mantissa| in [1/2, 2].

    mantissa == 0 encodes an exact zero.
    """

    mantissa: complex
    exponent: float = 0.0

    @staticmethod
    def zero() -> "LogScaledComplex":
        return LogScaledComplex(0.0, 0.0)

    @staticmethod
    def from_complex(value: complex) -> "LogScaledComplex":
        if value == 0:
            return LogScaledComplex.zero()
        e = math.log(abs(value))
        return LogScaledComplex(value / math.exp(e), e)

    @staticmethod
    def from_log(log_value: complex) -> "LogScaledComplex":
        return LogScaledComplex(cmath.exp(1j * log_value.imag), log_value.real)

    def normalized(self) -> "LogScaledComplex":
        a = abs(self.mantissa)
        if a == 0.0 or not math.isfinite(a):
            return self
        e = math.log(a)
        return LogScaledComplex(self.mantissa / a, self.exponent + e)

    @property
    def is_zero(self) -> bool:
        return self.mantissa == 0

    def value(self) -> complex:
        return self.mantissa * _safe_exp(self.exponent)

    def abs_log(self) -> float:
        """log|value|; -inf for an exact zero."""
        if self.is_zero:
            return -math.inf
        return math.log(abs(self.mantissa)) + self.exponent

    def log(self) -> complex:
        if self.is_zero:
            raise ValueError("log of exact zero")
        return cmath.log(self.mantissa) + self.exponent

    def __mul__(self, other: "LogScaledComplex") -> "LogScaledComplex":
        if self.is_zero or other.is_zero:
            return LogScaledComplex.zero()
        return LogScaledComplex(
            self.mantissa * other.mantissa, self.exponent + other.exponent
        ).normalized()

    def __truediv__(self, other: "LogScaledComplex") -> "LogScaledComplex":
        if other.is_zero:
            raise ZeroDivisionError("division by exact zero LogScaledComplex")
        if self.is_zero:
            return LogScaledComplex.zero()
        return LogScaledComplex(
            self.mantissa / other.mantissa, self.exponent - other.exponent
        ).normalized()

    def __neg__(self) -> "LogScaledComplex":
        return LogScaledComplex(-self.mantissa, self.exponent)

    def __add__(self, other: "LogScaledComplex") -> "LogScaledComplex":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        # align on the larger exponent so the smaller term underflows gracefully
        if self.exponent >= other.exponent:
            big, small = self, other
        else:
            big, small = other, self
        shift = _safe_exp(small.exponent - big.exponent)
        return LogScaledComplex(
            big.mantissa + small.mantissa * shift, big.exponent
        ).normalized()

    def __sub__(self, other: "LogScaledComplex") -> "LogScaledComplex":
        return self + (-other)

    def conjugate(self) -> "LogScaledComplex":
        return LogScaledComplex(self.mantissa.conjugate(), self.exponent)
