"""Log-Gamma on the real line, including negative arguments.

For x > 0 this defers to mpmath's loggamma.  For x < 0 the reflection
formula is used,

    Gamma(x) = pi / (sin(pi*x) * Gamma(1-x)),

and the result is reported as a complex logarithm whose imaginary part
records the accumulated sign of Gamma(x) as k*pi with integer k
(k = ceil(-x): one pi per pole passed going left from the origin).
"""

from __future__ import annotations

import mpmath
from mpmath import mp, mpf, mpc

from .errors import PoleError
from .hp import ComplexHP, DEFAULT_PRECISION


def gamma_ln(x, precision: int = DEFAULT_PRECISION) -> ComplexHP:
    """log Gamma(x) for real x not a non-positive integer.

    exp(gamma_ln(x)) recovers Gamma(x) including its sign for x < 0.
    """
    with mp.workprec(precision + 16):
        x = mpf(x)
        if x <= 0 and x == mp.floor(x):
            raise PoleError(f"Gamma pole at x = {x}")
        if x > 0:
            return ComplexHP.wrap(mpc(mpmath.loggamma(x)), precision)
        # |Gamma(x)| = pi / (|sin(pi x)| * Gamma(1-x)); sign flips at each
        # negative integer, giving imaginary part pi * ceil(-x).
        log_abs = (
            mp.log(mp.pi)
            - mp.log(abs(mpmath.sinpi(x)))
            - mpmath.loggamma(1 - x)
        )
        k = int(mp.ceil(-x))
        return ComplexHP.wrap(mpc(log_abs, k * mp.pi), precision)


def gamma_real(x, precision: int = DEFAULT_PRECISION) -> mpf:
    """Gamma(x) as a signed real, via gamma_ln."""
    g = gamma_ln(x, precision)
    with mp.workprec(precision):
        return mp.exp(g.value).real


def factorial_ln(n: int, precision: int = DEFAULT_PRECISION) -> mpf:
    """log(n!) as a real high-precision value."""
    with mp.workprec(precision + 8):
        return mpf(mpmath.loggamma(mpf(n) + 1))
