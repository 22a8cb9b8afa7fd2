"""Arbitrary-precision reference values (mpmath), for tests and verification only.

The working precision in bits comes from ``SPT_NLCS_PRECISION`` (default 256).
"""

from __future__ import annotations

import os
from contextlib import contextmanager

import mpmath as mp

DEFAULT_BITS = 256


def precision_bits() -> int:
    raw = os.environ.get("SPT_NLCS_PRECISION", "")
    try:
        bits = int(raw)
    except ValueError:
        return DEFAULT_BITS
    return bits if bits >= 53 else DEFAULT_BITS


@contextmanager
def workprec():
    with mp.workprec(precision_bits()):
        yield


def _c(v) -> complex:
    return complex(v)


def besselj(nu, z) -> complex:
    with workprec():
        return _c(mp.besselj(nu, mp.mpmathify(z)))


def besselj_series(nu, z, terms: int = 60) -> complex:
    """Ascending series for ``J_nu(z)`` with a fixed number of terms."""
    with workprec():
        z = mp.mpmathify(z)
        half = z / 2
        total = mp.mpf(0)
        for k in range(terms):
            total += (-1) ** k * half ** (2 * k) / (mp.factorial(k) * mp.gamma(nu + k + 1))
        return _c(half**nu * total)


def besseli(nu, x) -> float:
    with workprec():
        return float(mp.besseli(nu, x))


def besselk(nu, x) -> float:
    with workprec():
        return float(mp.besselk(nu, x))


def hyp1f2(a, b1, b2, x) -> float:
    with workprec():
        return float(mp.hyp1f2(a, b1, b2, x))


def hyp2f1(a, b, c, x) -> complex:
    with workprec():
        return _c(mp.hyp2f1(mp.mpmathify(a), mp.mpmathify(b), mp.mpmathify(c), mp.mpmathify(x)))


def loggamma(z) -> complex:
    with workprec():
        return _c(mp.loggamma(mp.mpmathify(z)))


def gegenbauer(n, nu, y) -> float:
    """Explicit finite sum; mpmath's hypergeometric route can stall at ``y = 0``."""
    with workprec():
        y, nu = mp.mpf(y), mp.mpf(nu)
        total = mp.mpf(0)
        for k in range(n // 2 + 1):
            total += (-1) ** k * mp.rf(nu, n - k) / (mp.factorial(k) * mp.factorial(n - 2 * k)) * (2 * y) ** (n - 2 * k)
        return float(total)


def quad_half_line(f) -> float:
    """``int_0^inf f(x) dx`` with mpmath's tanh-sinh rule."""
    with workprec():
        return float(mp.quad(f, [0, 1, 10, mp.inf]))


def weight_gamma1(x) -> float:
    with workprec():
        y = mp.mpf(x) / mp.sqrt(2)
        a = mp.mpc(mp.mpf(1) / 2, y)
        return float(abs(mp.gamma(a + 1)) ** 2 / (2 * mp.pi) / abs(mp.hyp2f1(a, 1, a + 1, -1)) ** 2)
