"""Floating-point special functions.

Validated domains (relative error bound in parentheses):

* ``log_gamma_complex``: Re z >= -1000, away from poles (1e-12)
* ``bessel_j``: |z| <= 12 ascending series, |z| > 12 Hankel expansion,
  order ``nu >= -1/2`` (1e-10)
* ``bessel_i``: real ``0 <= x < 700``, ``nu > -1`` (1e-13)
* ``bessel_k0``, ``macdonald_k``: ``1e-6 <= x <= 700`` (1e-12)
* ``hyp1f2``: real argument, tail bound 1e-16 of the running sum
* ``hyp2f1``: terminating sums at any argument (exact rational summation),
  otherwise ``|x| <= 1`` (1e-12)
"""

from __future__ import annotations

import cmath
import math
import warnings
from fractions import Fraction

import numpy as np

from .errors import DomainError, PrecisionWarning

EULER_GAMMA = 0.57721566490153286060651209008240243

_BERNOULLI = [
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
    Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510),
    Fraction(43867, 798), Fraction(-174611, 330),
]
_STIRLING = [float(b / (2 * k * (2 * k - 1))) for k, b in enumerate(_BERNOULLI, start=1)]
_LOG_SQRT_2PI = 0.5 * math.log(2 * math.pi)


def gamma(x: float) -> float:
    return math.gamma(x)


def log_gamma_complex(z) -> complex:
    """Principal branch of ``log Gamma(z)`` for complex ``z``.

    The argument is shifted to ``Re z >= 15`` with the recurrence (summing
    logarithms keeps the branch continuous) and finished with Stirling's
    series.
    """
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real):
        raise DomainError(f"Gamma has a pole at {z.real}")
    if z.real < -1000:
        raise DomainError("log_gamma_complex is validated for Re z >= -1000")
    shift = 0j
    while z.real < 15:
        shift += cmath.log(z)
        z += 1
    inv = 1 / z
    inv2 = inv * inv
    series = 0j
    power = inv
    for c in _STIRLING:
        series += c * power
        power *= inv2
    return (z - 0.5) * cmath.log(z) - z + _LOG_SQRT_2PI + series - shift


def gamma_complex(z) -> complex:
    return cmath.exp(log_gamma_complex(z))


def abs_gamma_squared(z) -> float:
    """``|Gamma(z)|^2`` through the log-Gamma real part."""
    return math.exp(2.0 * log_gamma_complex(z).real)


def _rgamma(x: float) -> float:
    """``1 / Gamma(x)`` with zeros at the non-positive integers."""
    if x <= 0 and x == math.floor(x):
        return 0.0
    return 1.0 / math.gamma(x)


def _crgamma(x) -> complex:
    x = complex(x)
    if x.imag == 0:
        return complex(_rgamma(x.real))
    return cmath.exp(-log_gamma_complex(x))


# ----------------------------------------------------------------------
# Bessel functions


def bessel_j_reduced(nu: float, z):
    """Entire function ``(z/2)^(-nu) J_nu(z) = sum (-z^2/4)^k / (k! Gamma(nu+k+1))``.

    Accepts scalars or numpy arrays.  Extended-precision input
    (``longdouble``/``clongdouble``) is summed in that precision.
    """
    if nu <= -1 and nu == math.floor(nu):
        raise DomainError("negative integer order is outside the validated domain")
    z = np.asarray(z)
    extended = z.dtype in (np.longdouble, np.clongdouble)
    z = z.astype(np.clongdouble if extended else complex)
    eps = np.finfo(np.longdouble if extended else float).eps / 16
    q = -(z * z) / 4
    term = np.full_like(z, _rgamma(nu + 1.0))
    total = term.copy()
    for k in range(1, 400):
        term = term * q / (k * (nu + k))
        total = total + term
        if np.all(np.abs(term) <= eps * np.maximum(np.abs(total), 1e-300)):
            break
    return total if total.ndim else complex(total)


def bessel_j(nu: float, z) -> complex:
    """Bessel function of the first kind ``J_nu(z)`` for complex ``z``.

    Ascending series for ``|z| <= 12``; Hankel's asymptotic expansion beyond
    (principal branch, ``|arg z| < pi``).
    """
    if nu < -0.5:
        warnings.warn("bessel_j validated for nu >= -1/2 only", PrecisionWarning, stacklevel=2)
    z = complex(z)
    if z == 0:
        if nu == 0:
            return 1.0 + 0j
        return 0j if nu > 0 else complex(math.inf)
    if abs(z) <= 12.0:
        return (z / 2) ** nu * bessel_j_reduced(nu, z)
    return _bessel_j_hankel(nu, z)


def _bessel_j_hankel(nu: float, z: complex) -> complex:
    mu = 4.0 * nu * nu
    p_sum, q_sum = 0j, 0j
    term = 1 + 0j
    error = 0.0
    for k in range(200):
        if k % 2 == 0:
            p_sum += term * (-1) ** (k // 2)
        else:
            q_sum += term * (-1) ** (k // 2)
        nxt = term * (mu - (2 * k + 1) ** 2) / ((k + 1) * 8 * z)
        if nxt == 0 or abs(nxt) < 1e-17:
            break
        if abs(nxt) >= abs(term):
            # asymptotic series: stop at the smallest term
            error = abs(term)
            break
        term = nxt
    if error > 1e-10:
        warnings.warn(
            f"Hankel expansion for J_{nu}({z}) limited to ~{error:.1e}", PrecisionWarning, stacklevel=3
        )
    chi = z - (nu / 2 + 0.25) * math.pi
    return cmath.sqrt(2 / (math.pi * z)) * (p_sum * cmath.cos(chi) - q_sum * cmath.sin(chi))


def bessel_i(nu: float, x):
    """Modified Bessel function ``I_nu(x)`` for real ``x >= 0`` (ascending series)."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise DomainError("bessel_i implemented for x >= 0")
    if np.any(arr >= 700):
        warnings.warn("bessel_i overflows beyond x ~ 700", PrecisionWarning, stacklevel=2)
    half = arr / 2.0
    with np.errstate(divide="ignore"):
        lead = np.where(half > 0, half ** nu, 1.0 if nu == 0 else 0.0)
    term = lead * _rgamma(nu + 1.0)
    total = term.copy()
    q = half * half
    for k in range(1, 2000):
        term = term * q / (k * (nu + k))
        total = total + term
        if np.all(term <= 1e-17 * np.maximum(total, 1e-300)):
            break
    return float(total) if total.ndim == 0 else total


def _k0_series(x: np.ndarray) -> np.ndarray:
    q = x * x / 4.0
    term = np.ones_like(x)
    i0 = np.ones_like(x)
    tail = np.zeros_like(x)
    harmonic = 0.0
    for k in range(1, 60):
        term = term * q / (k * k)
        harmonic += 1.0 / k
        i0 += term
        tail += term * harmonic
        if np.all(term * harmonic <= 1e-18 * np.abs(tail) + 1e-300):
            break
    return -(np.log(x / 2.0) + EULER_GAMMA) * i0 + tail


def macdonald_k(tau: float, x):
    """Macdonald function ``K_tau(x) = int_0^inf exp(-x cosh t) cosh(tau t) dt``.

    The integral is summed with the trapezoidal rule, which converges
    geometrically here because the integrand is entire and decays doubly
    exponentially.  The factor ``exp(-x)`` is taken out to avoid underflow.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0):
        raise DomainError("K_tau(x) needs x > 0")
    flat = arr.reshape(-1)
    out = np.empty_like(flat)
    for i, xv in enumerate(flat):
        out[i] = _macdonald_scalar(float(tau), float(xv))
    out = out.reshape(arr.shape)
    return float(out) if out.ndim == 0 else out


def _macdonald_scalar(tau: float, x: float) -> float:
    if x < 1e-6 or x > 700:
        warnings.warn(f"K_tau({x}) outside validated domain", PrecisionWarning, stacklevel=3)
    h = min(0.1, 0.5 / math.sqrt(x))
    # exp(-x (cosh t - 1) + |tau| t) below 1e-18 of the peak
    t_max = math.acosh(1.0 + (42.0 + abs(tau) * 40.0) / x) + 1.0
    t = np.arange(0.0, t_max + h, h)
    f = np.exp(-x * (np.cosh(t) - 1.0)) * np.cosh(tau * t)
    total = h * (f.sum() - 0.5 * f[0])
    return math.exp(-x) * total


def bessel_k0(x):
    """``K_0(x)`` for ``x > 0``: ascending series for ``x <= 2``, integral form above."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0):
        raise DomainError("K_0(x) needs x > 0")
    out = np.empty_like(arr)
    small = arr <= 2.0
    if np.any(small):
        out[small] = _k0_series(arr[small])
    if np.any(~small):
        out[~small] = _macdonald_vector(0.0, arr[~small])
    return float(out) if out.ndim == 0 else out


def _macdonald_vector(tau: float, x: np.ndarray) -> np.ndarray:
    # shared trapezoid grid for x > 2 (h <= 0.5/sqrt(x_max))
    h = min(0.1, 0.5 / math.sqrt(float(x.max())))
    t_max = math.acosh(1.0 + (42.0 + abs(tau) * 40.0) / float(x.min())) + 1.0
    t = np.arange(0.0, t_max + h, h)
    w = np.full_like(t, h)
    w[0] = h / 2
    expo = -np.outer(x, np.cosh(t) - 1.0)
    vals = np.exp(expo) * np.cosh(tau * t)
    return np.exp(-x) * (vals @ w)


# ----------------------------------------------------------------------
# Orthogonal polynomials


def _real(y) -> np.ndarray:
    y = np.asarray(y)
    return y if y.dtype == np.longdouble else y.astype(float)


def gegenbauer(n: int, nu: float, y):
    """Gegenbauer polynomial ``C_n^nu(y)`` by the three-term recurrence."""
    y = _real(y)
    prev = np.zeros_like(y)
    cur = np.ones_like(y)
    if n == 0:
        return float(cur) if cur.ndim == 0 else cur
    if nu == 0:
        raise DomainError("C_n^0 vanishes identically for n >= 1; use Chebyshev T")
    for k in range(n):
        prev, cur = cur, (2.0 * (k + nu) * y * cur - (k + 2.0 * nu - 1.0) * prev) / (k + 1.0)
    return float(cur) if cur.ndim == 0 else cur


def chebyshev_u(n: int, y):
    """Chebyshev polynomial of the second kind ``U_n(y)``."""
    y = _real(y)
    prev = np.zeros_like(y)
    cur = np.ones_like(y)
    for _ in range(n):
        prev, cur = cur, 2.0 * y * cur - prev
    return float(cur) if cur.ndim == 0 else cur


def gegenbauer_bessel_sum(t, tau: float, y: float, n_terms: int) -> complex:
    """Partial sum ``sum_{k<=n_terms} t^k C_k^tau(y) / (2 tau)_k``."""
    t = complex(t)
    total = 0j
    poch = 1.0
    power = 1 + 0j
    prev, cur = 0.0, 1.0
    for k in range(n_terms + 1):
        total += power * cur / poch
        prev, cur = cur, (2.0 * (k + tau) * y * cur - (k + 2.0 * tau - 1.0) * prev) / (k + 1.0)
        power *= t
        poch *= 2 * tau + k
    return total


def gegenbauer_bessel_closed(t, tau: float, y: float) -> complex:
    """``Gamma(tau+1/2) e^{yt} (t s/2)^{1/2-tau} J_{tau-1/2}(t s)`` with ``s = sqrt(1-y^2)``."""
    t = complex(t)
    s = math.sqrt(1.0 - y * y)
    return math.gamma(tau + 0.5) * cmath.exp(y * t) * bessel_j_reduced(tau - 0.5, t * s)


# ----------------------------------------------------------------------
# Hypergeometric series


def _is_nonpositive_int(v) -> bool:
    v = complex(v)
    return v.imag == 0 and v.real <= 0 and v.real == math.floor(v.real)


def hyp1f2(a: float, b1: float, b2: float, x: float) -> float:
    """``1F2(a; b1, b2; x)`` by direct summation with a geometric tail bound."""
    if _is_nonpositive_int(b1) or _is_nonpositive_int(b2):
        raise DomainError("1F2 denominator parameter is a non-positive integer")
    x = float(x)
    term = 1.0
    total = 1.0
    k = 0
    while True:
        ratio = (a + k) / ((b1 + k) * (b2 + k) * (k + 1)) * x
        term *= ratio
        total += term
        k += 1
        if term == 0.0:
            break
        nxt = abs((a + k) / ((b1 + k) * (b2 + k) * (k + 1)) * x)
        if nxt < 0.5 and k > abs(a) and abs(term) * nxt / (1 - nxt) < 1e-16 * abs(total):
            break
        if k > 10_000:
            raise ArithmeticError("1F2 series failed to converge")
    return total


def hyp0f1(b: float, x: float) -> float:
    term = total = 1.0
    for k in range(1, 10_000):
        term *= x / ((b + k - 1) * k)
        total += term
        if abs(term) < 1e-17 * abs(total):
            break
    return total


def _to_gaussian(v) -> tuple[Fraction, Fraction]:
    v = complex(v)
    return Fraction(v.real), Fraction(v.imag)


def _gmul(p, q):
    return (p[0] * q[0] - p[1] * q[1], p[0] * q[1] + p[1] * q[0])


def _gdiv(p, q):
    d = q[0] * q[0] + q[1] * q[1]
    return ((p[0] * q[0] + p[1] * q[1]) / d, (p[1] * q[0] - p[0] * q[1]) / d)


def _hyp2f1_terminating(m: int, other, c, x) -> complex:
    """Exact Gaussian-rational sum of a terminating 2F1, rounded once."""
    b = _to_gaussian(other)
    cc = _to_gaussian(c)
    xx = _to_gaussian(x)
    term = (Fraction(1), Fraction(0))
    total = term
    for k in range(m):
        num = _gmul(_gmul(term, (Fraction(-m + k), Fraction(0))), (b[0] + k, b[1]))
        num = _gmul(num, xx)
        term = _gdiv(num, (cc[0] + k, cc[1]))
        term = (term[0] / (k + 1), term[1] / (k + 1))
        total = (total[0] + term[0], total[1] + term[1])
    return complex(float(total[0]), float(total[1]))


def _hyp2f1_series(a, b, c, x) -> complex:
    term = 1 + 0j
    total = 1 + 0j
    ax = abs(x)
    for k in range(100_000):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * x
        total += term
        ratio = abs((a + k + 1) * (b + k + 1) / ((c + k + 1) * (k + 2))) * ax
        if ratio < 1 and abs(term) * ratio / (1 - ratio) < 1e-17 * abs(total):
            return total
        if term == 0:
            return total
    raise ArithmeticError("2F1 series failed to converge")


def hyp2f1(a, b, c, x) -> complex:
    """Gauss hypergeometric function ``2F1(a, b; c; x)``.

    Terminating series (``a`` or ``b`` a non-positive integer) are summed
    exactly in Gaussian rationals, so arguments like ``x = 2`` carry no
    cancellation error.  Otherwise: direct series for ``|x| <= 1/2``,
    the Pfaff transformation ``x -> x/(x-1)`` for ``-1 <= x < -1/2``
    (the Euler transform of the alternating series), Gauss' sum at
    ``x = 1``, and the direct series elsewhere.
    """
    a, b, c = complex(a), complex(b), complex(c)
    if _is_nonpositive_int(c) and not (
        (_is_nonpositive_int(a) and a.real > c.real) or (_is_nonpositive_int(b) and b.real > c.real)
    ):
        raise DomainError("2F1 with non-positive integer c")
    for top, other in ((a, b), (b, a)):
        if _is_nonpositive_int(top):
            return _hyp2f1_terminating(int(-top.real), other, c, x)
    xc = complex(x)
    if xc.imag != 0 or abs(xc) > 1:
        raise DomainError("non-terminating 2F1 needs a real argument with |x| <= 1")
    xr = xc.real
    if xr == 1:
        if (c - a - b).real <= 0:
            raise DomainError("2F1 diverges at x = 1 unless Re(c - a - b) > 0")
        return cmath.exp(
            log_gamma_complex(c) + log_gamma_complex(c - a - b)
            - log_gamma_complex(c - a) - log_gamma_complex(c - b)
        )
    if xr < -0.5:
        return (1 - xr) ** (-a) * _hyp2f1_series(a, c - b, c, xr / (xr - 1))
    # direct summation; slow but convergent as x -> 1
    return _hyp2f1_series(a, b, c, xr)
