"""Complex Airy function Ai and Ai' at arbitrary precision.

Evaluation strategy:

* Maclaurin series inside a precision-dependent radius.  The two series
  branches F (even triples) and G (offset triples) solve w'' = z*w with
  (F(0), F'(0)) = (1, 0) and (G(0), G'(0)) = (0, 1); then
  Ai = Ai(0)*F + Ai'(0)*G.  The series suffers cancellation of order
  exp(2|xi|) with xi = (2/3) z^(3/2), so guard bits proportional to |xi|
  are added to the working precision.

* Poincare asymptotic expansion outside that radius for |arg z| <= 2*pi/3,
  rotated into that sector via the connection identity
  Ai(z) + w*Ai(w*z) + w^2*Ai(w^2*z) = 0 (w = exp(2*pi*i/3)) otherwise.

The crossover radius is chosen so the asymptotic tail can actually reach
the requested precision (optimal truncation error ~ exp(-2|xi|)); this
forces the radius to grow like precision^(2/3), and both methods are
required to agree to well beyond target precision in an overlap annulus
(exercised in the test suite).
"""

from __future__ import annotations

import mpmath
from mpmath import mp, mpf, mpc

from .errors import NonConvergence, DomainError
from .hp import ComplexHP, DEFAULT_PRECISION, to_mpc

_LN2 = 0.6931471805599453


def series_radius(precision: int) -> float:
    """Crossover radius: asymptotics only beyond where they can converge."""
    xi_required = 0.5 * precision * _LN2 + 14.0
    return (1.5 * xi_required) ** (2.0 / 3.0)


def _airy_series(z: mpc, precision: int):
    """(Ai, Ai') by Maclaurin summation; valid for any finite z."""
    absz = abs(z)
    # cancellation ~ exp(2*(2/3)|z|^{3/2}); add matching guard bits
    guard = int(2.9 * float(absz) ** 1.5) + 40
    with mp.workprec(precision + guard):
        z = mpc(z)
        z3 = z * z * z
        f_term = mpc(1)            # a_{3k} z^{3k}
        g_term = mpc(z)            # b_{3k+1} z^{3k+1}
        f_sum, g_sum = mpc(f_term), mpc(g_term)
        fp_sum = mpc(0)            # F' = sum 3k a_{3k} z^{3k-1}
        gp_sum = mpc(1)            # G' = sum (3k+1) b_{3k+1} z^{3k}
        eps = mpf(2) ** (-(precision + guard - 6))
        k = 0
        zinv = 1 / z if z != 0 else mpc(0)
        while True:
            f_term = f_term * z3 / ((3 * k + 2) * (3 * k + 3))
            g_term = g_term * z3 / ((3 * k + 3) * (3 * k + 4))
            k += 1
            f_sum += f_term
            g_sum += g_term
            if z != 0:
                fp_sum += (3 * k) * f_term * zinv
            gp_sum += (3 * k + 1) * g_term / z if z != 0 else mpc(0)
            if abs(f_term) < eps * (1 + abs(f_sum)) and abs(g_term) < eps * (1 + abs(g_sum)):
                break
            if k > 4000:
                raise NonConvergence("Airy Maclaurin series did not converge")
        ai0 = mpf(3) ** mpf("-2/3") / mpmath.gamma(mpf(2) / 3)
        aip0 = -(mpf(3) ** mpf("-1/3")) / mpmath.gamma(mpf(1) / 3)
        ai = ai0 * f_sum + aip0 * g_sum
        aip = ai0 * fp_sum + aip0 * gp_sum
        return +ai, +aip


def _airy_asymptotic_direct(z: mpc, precision: int):
    """Poincare expansion; caller guarantees |arg z| <= 2*pi/3 + margin."""
    with mp.workprec(precision + 30):
        z = mpc(z)
        sqrt_z = mp.sqrt(z)
        xi = mpf(2) / 3 * z * sqrt_z
        xi_inv = 1 / xi
        u = mpf(1)
        s_ai = mpc(1)
        s_aip = mpc(1)
        term = mpc(1)
        eps = mpf(2) ** (-(precision + 10))
        prev = mp.inf
        k = 0
        while True:
            k += 1
            u = u * mpf((6 * k - 5) * (6 * k - 1)) / (72 * k)
            term = term * (-xi_inv)
            t_ai = u * term
            if abs(t_ai) >= prev:
                # entered the divergent tail before reaching eps
                raise NonConvergence(
                    f"Airy asymptotic series stalled at |z|={abs(z)}"
                )
            s_ai += t_ai
            s_aip += t_ai * mpf(6 * k + 1) / (1 - 6 * k)
            prev = abs(t_ai)
            if prev < eps * abs(s_ai):
                break
            if k > 600:
                raise NonConvergence("Airy asymptotic series budget exhausted")
        zq = mp.sqrt(sqrt_z)  # z^{1/4}, principal
        pref = mp.exp(-xi) / (2 * mp.sqrt(mp.pi))
        ai = pref / zq * s_ai
        aip = -pref * zq * s_aip
        return +ai, +aip


def _airy_asymptotic(z: mpc, precision: int):
    with mp.workprec(precision + 30):
        z = mpc(z)
        if abs(mp.arg(z)) <= 2 * mp.pi / 3 + mpf("1e-12"):
            return _airy_asymptotic_direct(z, precision)
        # rotate onto sectors |arg| <= pi/3 via the connection identity
        w = mp.exp(2j * mp.pi / 3)
        a1, a1p = _airy_asymptotic_direct(w * z, precision)
        a2, a2p = _airy_asymptotic_direct(w * w * z, precision)
        ai = -(w * a1 + w * w * a2)
        aip = -(w * w * a1p + w * a2p)
        return +ai, +aip


def airy_ai_both(z, precision: int = DEFAULT_PRECISION):
    """(Ai(z), Ai'(z)) as raw mpc values at the given precision."""
    z = to_mpc(z)
    if not (mp.isfinite(z.real) and mp.isfinite(z.imag)):
        raise DomainError("Airy argument must be finite")
    if abs(z) <= series_radius(precision):
        ai, aip = _airy_series(z, precision)
    else:
        ai, aip = _airy_asymptotic(z, precision)
    with mp.workprec(precision):
        return +ai, +aip


def airy_ai(z, precision: int = DEFAULT_PRECISION) -> ComplexHP:
    return ComplexHP.wrap(airy_ai_both(z, precision)[0], precision)


def airy_ai_prime(z, precision: int = DEFAULT_PRECISION) -> ComplexHP:
    return ComplexHP.wrap(airy_ai_both(z, precision)[1], precision)


def _zero_seed(k: int) -> float:
    """Asymptotic location of the k-th negative Airy zero (magnitude)."""
    t = 3.0 * 3.141592653589793 * (4 * k - 1) / 8.0
    return t ** (2.0 / 3.0) * (1 + 5.0 / (48.0 * t * t))


def airy_negative_zero(k: int, precision: int = DEFAULT_PRECISION) -> mpf:
    """iota_k > 0 with Ai(-iota_k) = 0, k-th smallest in magnitude."""
    if k < 1:
        raise DomainError("zero index must be >= 1")
    seed = _zero_seed(k)
    with mp.workprec(precision + 20):
        lo, hi = mpf(seed - 0.4), mpf(seed + 0.4)
        if k == 1:
            lo = max(lo, mpf(2))  # iota_1 in (2, 3)
        f_lo = airy_ai_both(-lo, precision + 20)[0].real
        f_hi = airy_ai_both(-hi, precision + 20)[0].real
        if f_lo * f_hi > 0:
            raise NonConvergence(f"Airy zero {k} not bracketed by seed interval")
        # bisect to get safely inside the basin, then Newton
        for _ in range(40):
            mid = (lo + hi) / 2
            f_mid = airy_ai_both(-mid, precision + 20)[0].real
            if f_lo * f_mid <= 0:
                hi = mid
            else:
                lo, f_lo = mid, f_mid
        x = (lo + hi) / 2
        tol = mpf(2) ** (-(precision + 4))
        for _ in range(60):
            ai, aip = airy_ai_both(-x, precision + 20)
            step = ai.real / aip.real  # d/dx Ai(-x) = -Ai'(-x)
            x = x + step
            if abs(step) < tol * x:
                break
        else:
            raise NonConvergence(f"Newton polish for Airy zero {k} stalled")
    with mp.workprec(precision):
        return +x
