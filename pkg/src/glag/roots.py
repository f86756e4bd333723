"""Simultaneous polynomial root finding (Aberth-Ehrlich iteration).

Works on monic polynomials with arbitrary-precision complex coefficients.
Initial guesses sit on a circle of radius 1 + max|coeff|, rotationally
perturbed by a fixed seeded offset so symmetric configurations (conjugate
root pairs, roots of unity patterns) cannot trap the iteration on a
symmetry axis.  Robust for the clustered-along-arcs root sets this package
produces.
"""

from __future__ import annotations

import random

from mpmath import mp, mpf, mpc

from .errors import DomainError, NonConvergence
from .hp import DEFAULT_PRECISION, to_mpc

ABERTH_SEED = 987654321  # recorded in CLI metadata; fixed for determinism
MAX_SWEEPS = 200


def polyval_with_derivative(coeffs, z):
    """(p(z), p'(z)) by a joint Horner pass; coeffs ascending."""
    p = mpc(0)
    dp = mpc(0)
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def polyval_scaled(coeffs, z):
    """(p(z), p'(z), scale) where scale majorizes the Horner intermediates.

    |p(z)| below scale * 2^-prec is indistinguishable from an exact zero at
    the working precision; the Aberth loop uses this as its per-root stop.
    """
    p = mpc(0)
    dp = mpc(0)
    scale = mpf(0)
    az = abs(z)
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
        scale = scale * az + abs(c)
    return p, dp, scale


def polyval(coeffs, z):
    p = mpc(0)
    for c in reversed(coeffs):
        p = p * z + c
    return p


def aberth_roots(
    coeffs,
    precision: int = DEFAULT_PRECISION,
    max_sweeps: int = MAX_SWEEPS,
    seed: int = ABERTH_SEED,
):
    """All roots of a monic polynomial (ascending coefficients, leading 1).

    Returns roots sorted by (re, im).  Residuals are the caller's business;
    ``polyval`` is exposed for that.
    """
    n = len(coeffs) - 1
    if n < 1:
        raise DomainError("degree must be >= 1")
    with mp.workprec(precision + 10):
        cs = [to_mpc(c) for c in coeffs]
        if cs[-1] != 1:
            raise DomainError("polynomial must be monic (leading coefficient 1)")
        # 1 + max|coeff| contracts far too slowly when coefficients are huge
        # (factorial-sized Wilkinson coefficients exhaust the sweep budget);
        # cap by the Fujiwara bound, which encloses all roots.
        naive = 1 + max(abs(c) for c in cs[:-1])
        fujiwara = 2 * max(abs(cs[n - k]) ** (mpf(1) / k) for k in range(1, n + 1))
        radius = max(min(naive, fujiwara), mpf("0.5"))
        rng = random.Random(seed)
        jitter = mpf(rng.uniform(0.05, 0.45))
        z = [
            radius * mp.exp(2j * mp.pi * (mpf(k) + jitter + mpf("0.5") * k / n) / n)
            for k in range(n)
        ]
        tol = mpf(2) ** (-(precision - 6))
        noise = mpf(2) ** (-(precision + 4))
        done = [False] * n
        for _sweep in range(max_sweeps):
            moved = mpf(0)
            for i in range(n):
                if done[i]:
                    continue
                p, dp, scale = polyval_scaled(cs, z[i])
                if abs(p) <= scale * noise:
                    done[i] = True
                    continue
                if dp == 0:
                    z[i] = z[i] * (1 + mpf("1e-10")) + mpf("1e-10")
                    continue
                newton = p / dp
                acc = mpc(0)
                for j in range(n):
                    if j != i:
                        d = z[i] - z[j]
                        if d == 0:
                            d = mpc(tol)
                        acc += 1 / d
                denom = 1 - newton * acc
                step = newton if denom == 0 else newton / denom
                z[i] = z[i] - step
                moved = max(moved, abs(step) / (1 + abs(z[i])))
            if all(done) or moved < tol:
                break
        else:
            raise NonConvergence(f"Aberth iteration exceeded {max_sweeps} sweeps")
        roots = sorted(z, key=lambda w: (w.real, w.imag))
        return [+r for r in roots]


def coeffs_from_roots(roots, precision: int = DEFAULT_PRECISION):
    """Expand prod (z - r_k) into ascending monic coefficients."""
    with mp.workprec(precision + 10):
        cs = [mpc(1)]
        for r in roots:
            r = to_mpc(r)
            nxt = [mpc(0)] * (len(cs) + 1)
            for i, c in enumerate(cs):
                nxt[i + 1] += c
                nxt[i] -= c * r
            cs = nxt
        return [+c for c in cs]
