"""Arbitrary-precision scalar types.

Two value types are used throughout:

* ``ComplexHP`` -- a complex number tagged with its working precision in
  bits.  Arithmetic between two values is performed at (and the result
  tagged with) the larger of the two precisions.  Non-finite components are
  rejected eagerly: NaN/inf is a bug, never a value.

* ``LogComplex`` -- a nonzero complex number stored as (log-magnitude,
  phase).  Multiplication is componentwise addition and therefore exact;
  this is how quantities of size exp(+-c*n) are carried around without
  ever being materialized.

Internals of the numerical kernels work on raw ``mpmath`` values inside
``mp.workprec`` blocks for speed; these wrappers are the module-boundary
currency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath import mp, mpf, mpc

from .errors import DomainError

DEFAULT_PRECISION = 128

# Working precision must grow linearly with the polynomial degree: the
# values involved scale like exp(c*n).
PRECISION_SLOPE = 3.5


def precision_for(n: int) -> int:
    """Working precision in bits adequate for degree-n computations."""
    return max(DEFAULT_PRECISION, math.ceil(PRECISION_SLOPE * n))


def workprec(bits: int):
    """Context manager setting the mpmath working precision."""
    return mp.workprec(int(bits))


def to_mpc(value) -> mpc:
    if isinstance(value, ComplexHP):
        return value.value
    if isinstance(value, (mpc, mpf)):
        return mpc(value)
    if isinstance(value, complex):
        return mpc(value.real, value.imag)
    return mpc(value)


def _is_finite(z: mpc) -> bool:
    return mp.isfinite(z.real) and mp.isfinite(z.imag)


class ComplexHP:
    """Complex number carrying its own working precision (bits >= 64)."""

    __slots__ = ("value", "precision")

    def __init__(self, re, im=None, precision: int = DEFAULT_PRECISION):
        if precision < 64:
            raise DomainError(f"precision must be >= 64 bits, got {precision}")
        self.precision = int(precision)
        with mp.workprec(self.precision):
            if im is None:
                z = to_mpc(re)
            else:
                z = mpc(mpf(re), mpf(im))
        if not _is_finite(z):
            raise DomainError(f"non-finite complex value {z!r}")
        self.value = z

    @classmethod
    def wrap(cls, z, precision: int = DEFAULT_PRECISION) -> "ComplexHP":
        out = cls.__new__(cls)
        out.precision = int(precision)
        out.value = to_mpc(z)
        if not _is_finite(out.value):
            raise DomainError(f"non-finite complex value {z!r}")
        return out

    @property
    def re(self) -> mpf:
        return self.value.real

    @property
    def im(self) -> mpf:
        return self.value.imag

    def _coerce(self, other) -> "ComplexHP":
        if isinstance(other, ComplexHP):
            return other
        return ComplexHP.wrap(other, self.precision)

    def _binop(self, other, op) -> "ComplexHP":
        other = self._coerce(other)
        prec = max(self.precision, other.precision)
        with mp.workprec(prec):
            return ComplexHP.wrap(op(self.value, other.value), prec)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._coerce(other)._binop(self, lambda a, b: a - b)

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binop(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._coerce(other)._binop(self, lambda a, b: a / b)

    def __neg__(self):
        return ComplexHP.wrap(-self.value, self.precision)

    def conjugate(self) -> "ComplexHP":
        return ComplexHP.wrap(self.value.conjugate(), self.precision)

    def __abs__(self) -> mpf:
        with mp.workprec(self.precision):
            return abs(self.value)

    def __complex__(self) -> complex:
        return complex(self.value)

    def __eq__(self, other):
        if isinstance(other, ComplexHP):
            return self.value == other.value
        return self.value == to_mpc(other)

    def __hash__(self):
        return hash((self.value.real, self.value.imag))

    def __repr__(self):
        return f"ComplexHP({self.value}, prec={self.precision})"


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerance and budget for adaptive contour quadrature."""

    rel_tol: float = 1e-25
    abs_tol: float = 1e-30
    max_subdivisions: int = 4000

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise DomainError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be >= 1")


# Magnitudes with |logmag| beyond this cannot be converted to an explicit
# complex value (contract threshold; mpmath exponents reach further).
LOGMAG_OVERFLOW = mpf(2) ** 40


class LogComplex:
    """Nonzero complex value as (natural log of modulus, phase in radians).

    The phase is deliberately not reduced mod 2*pi: callers accumulate
    winding information (n*pi phases of the monic prefactor, for instance)
    and reduce only when comparing.
    """

    __slots__ = ("logmag", "phase", "precision")

    def __init__(self, logmag, phase, precision: int = DEFAULT_PRECISION):
        self.precision = int(precision)
        with mp.workprec(self.precision):
            self.logmag = mpf(logmag)
            self.phase = mpf(phase)
        if not (mp.isfinite(self.logmag) and mp.isfinite(self.phase)):
            raise DomainError("non-finite LogComplex components")

    @classmethod
    def from_complex(cls, z, precision: int = DEFAULT_PRECISION) -> "LogComplex":
        z = to_mpc(z)
        if z == 0:
            raise DomainError("LogComplex cannot represent zero")
        with mp.workprec(precision):
            return cls(mp.log(abs(z)), mp.atan2(z.imag, z.real), precision)

    def to_complex(self) -> mpc:
        if abs(self.logmag) > LOGMAG_OVERFLOW:
            raise DomainError(
                f"logmag {self.logmag} beyond overflow threshold for explicit value"
            )
        with mp.workprec(self.precision):
            return mp.exp(mpc(self.logmag, self.phase))

    def _prec_with(self, other) -> int:
        return max(self.precision, other.precision)

    def __mul__(self, other: "LogComplex") -> "LogComplex":
        prec = self._prec_with(other)
        with mp.workprec(prec):
            return LogComplex(self.logmag + other.logmag, self.phase + other.phase, prec)

    def __truediv__(self, other: "LogComplex") -> "LogComplex":
        prec = self._prec_with(other)
        with mp.workprec(prec):
            return LogComplex(self.logmag - other.logmag, self.phase - other.phase, prec)

    def scaled(self, factor) -> "LogComplex":
        """Multiply by an explicit (modest-sized) complex factor."""
        return self * LogComplex.from_complex(factor, self.precision)

    def relative_difference(self, other: "LogComplex") -> mpf:
        """|self/other - 1|, computed entirely in log space."""
        prec = self._prec_with(other)
        with mp.workprec(prec):
            dlog = self.logmag - other.logmag
            dphase = self.phase - other.phase
            if dlog > 50:
                return mp.exp(dlog)
            return abs(mp.exp(mpc(dlog, dphase)) - 1)

    def __repr__(self):
        return f"LogComplex(logmag={self.logmag}, phase={self.phase})"
