"""Polynomial families generated by shift-operator recurrences.

A family is fixed by the relation

    x phi_n = up(n) phi_{n+1} + down(n) phi_{n-1},   phi_{-1} = 0, phi_0 = 1,

with ``up(n)`` and ``down(n)`` in Q(sqrt 2), so every coefficient of
``phi_n`` is an exact :class:`~spt_nlcs.poly.QSqrt2`.  Three families are
built in:

* ``gamma = 0``: ``up(n) = (n+1)/sqrt 2``, ``down(n) = n/sqrt 2``
* ``gamma = 1``: ``up(n) = (n+2)/sqrt 2``, ``down(n) = (n+1)/sqrt 2``
* sigma family: ``up(n) = (n+1)/sqrt 2``, ``down(n) = (n+2 sigma-1)/sqrt 2``

The first and third are Meixner-Pollaczek polynomials ``P_n^(sigma)(x/sqrt 2, pi/2)``
(``sigma = 1/2`` for ``gamma = 0``); the second is the associated Pollaczek
family with ``lambda = 1/2``, ``c = 1``.  Floating-point evaluations of those
closed forms live here too, as does the weight under which the ``gamma = 1``
family is orthogonal.
"""

from __future__ import annotations

import cmath
import json
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import DivergenceWarning, DomainError, PrecisionWarning
from .moments import as_rational, format_rational
from .poly import QSqrt2, RationalPoly
from .special import abs_gamma_squared, hyp2f1

HALF_PI = math.pi / 2


def _over_sqrt2(q) -> QSqrt2:
    """``q / sqrt 2 = (q/2) sqrt 2``."""
    return QSqrt2(0, Fraction(q) / 2)


@dataclass(frozen=True)
class RecurrenceFamily:
    """Three-term recurrence ``x phi_n = up(n) phi_{n+1} + down(n) phi_{n-1}``."""

    name: str
    up: Callable[[int], QSqrt2]
    down: Callable[[int], QSqrt2]

    def polys(self, n_max: int) -> list[RationalPoly]:
        if n_max < 0:
            raise DomainError("n_max must be >= 0")
        out = [RationalPoly([QSqrt2(1)])]
        prev = RationalPoly()
        for n in range(n_max):
            cur = out[n]
            nxt = (cur.mul_x() - prev * self.down(n)) / self.up(n)
            out.append(nxt)
            prev = cur
        return out

    def values(self, x, n_max: int) -> np.ndarray:
        """Float values ``phi_0(x) .. phi_{n_max}(x)`` (rows) by the recurrence."""
        x = np.asarray(x, dtype=float)
        rows = [np.ones_like(x)]
        prev = np.zeros_like(x)
        for n in range(n_max):
            nxt = (x * rows[n] - float(self.down(n)) * prev) / float(self.up(n))
            prev = rows[n]
            rows.append(nxt)
        return np.array(rows)

    def residual(self, p: list[RationalPoly], n: int, x: float) -> float:
        """``|x phi_n - up(n) phi_{n+1} - down(n) phi_{n-1}|`` in floating point."""
        lower = p[n - 1](x) if n >= 1 else 0.0
        return abs(
            x * p[n](x) - float(self.up(n)) * p[n + 1](x) - float(self.down(n)) * lower
        )


def gamma0_family() -> RecurrenceFamily:
    return RecurrenceFamily("gamma=0", lambda n: _over_sqrt2(n + 1), lambda n: _over_sqrt2(n))


def gamma1_family() -> RecurrenceFamily:
    return RecurrenceFamily("gamma=1", lambda n: _over_sqrt2(n + 2), lambda n: _over_sqrt2(n + 1))


def sigma_family(sigma) -> RecurrenceFamily:
    s = as_rational(sigma)
    if s <= 0:
        raise DomainError("sigma must be positive")
    return RecurrenceFamily(
        f"sigma={format_rational(s)}",
        lambda n: _over_sqrt2(n + 1),
        lambda n: _over_sqrt2(n + 2 * s - 1),
    )


def family_for(gamma=None, sigma=None) -> RecurrenceFamily:
    if sigma is not None:
        return sigma_family(sigma)
    g = as_rational(gamma)
    if g == 0:
        return gamma0_family()
    if g == 1:
        return gamma1_family()
    raise DomainError("shift families are exact only for gamma in {0, 1}; use sigma")


def phi_family(gamma=None, n_max: int = 6, sigma=None) -> list[RationalPoly]:
    """Exact ``phi_0 .. phi_{n_max}`` for ``gamma`` in {0, 1} or a sigma family.

    >>> [str(p) for p in phi_family(0, 2)]
    ['1', 'sqrt2 x', 'x^2 - 1/2']
    """
    return family_for(gamma, sigma).polys(n_max)


def q_normalized(phis: list[RationalPoly]) -> list[RationalPoly]:
    """``q_n = n! 2^(-n/2) phi_n`` for the ``gamma = 0`` family; rational coefficients."""
    out = []
    for n, p in enumerate(phis):
        if n % 2:
            scale = QSqrt2(0, Fraction(math.factorial(n), 2 ** ((n + 1) // 2)))
        else:
            scale = QSqrt2(Fraction(math.factorial(n), 2 ** (n // 2)))
        scaled = p * scale
        coeffs = []
        for c in scaled.coeffs:
            if c.b != 0:
                raise AssertionError(f"q_{n} has an irrational coefficient")
            coeffs.append(c.a)
        out.append(RationalPoly(coeffs))
    return out


def q_recurrence_holds(qs: list[RationalPoly]) -> bool:
    """Exact check of ``q_{n+1} = x q_n - (n^2/2) q_{n-1}``."""
    for n in range(len(qs) - 1):
        lower = qs[n - 1] if n >= 1 else RationalPoly()
        if qs[n + 1] != qs[n].mul_x() - lower * Fraction(n * n, 2):
            return False
    return True


# ----------------------------------------------------------------------
# Meixner-Pollaczek and Pollaczek closed forms


def _unit(n: int, phi: float) -> complex:
    if phi == HALF_PI:
        return 1j**n
    return cmath.exp(1j * n * phi)


def mp_hypergeometric(lam, u: float, phi: float, n: int) -> float:
    """``P_n^(lam)(u, phi) = (2 lam)_n / n! e^{i n phi} 2F1(-n, lam + iu; 2 lam; 1 - e^{-2 i phi})``.

    The terminating sum is done in exact Gaussian rationals.
    """
    lam = float(lam)
    if n < 0:
        raise DomainError("n must be >= 0")
    if n == 0:
        return 1.0
    x = 2.0 if phi == HALF_PI else 1 - cmath.exp(-2j * phi)
    f = hyp2f1(-n, complex(lam, u), 2 * lam, x)
    poch = math.prod(2 * lam + k for k in range(n)) / math.factorial(n)
    return (poch * _unit(n, phi) * f).real


def mp_recurrence(lam, u: float, phi: float, n: int) -> float:
    """``P_n^(lam)(u, phi)`` from
    ``(n+1) P_{n+1} = 2 (u sin phi + (n + lam) cos phi) P_n - (n + 2 lam - 1) P_{n-1}``.
    """
    return pollaczek_eval(PollaczekParams(lam, phi, 0), u, n)


def mp_eval(lam, u: float, phi: float, n: int) -> tuple[float, float]:
    """Meixner-Pollaczek value by the hypergeometric form and by the recurrence."""
    return mp_hypergeometric(lam, u, phi, n), mp_recurrence(lam, u, phi, n)


def mp_generating(lam, u: float, phi: float, t) -> complex:
    """``(1 - e^{i phi} t)^{-lam + iu} (1 - e^{-i phi} t)^{-lam - iu}``."""
    lam = float(lam)
    e = cmath.exp(1j * phi)
    a = cmath.exp(complex(-lam, u) * cmath.log(1 - e * t))
    b = cmath.exp(complex(-lam, -u) * cmath.log(1 - t / e))
    return a * b


def mp_generating_check(lam, u: float, phi: float, t: float, n_terms: int | None = None) -> float:
    """``|sum_{n <= N} P_n t^n - closed form|``.

    ``N`` defaults to the first index where the crude term bound
    ``|t|^N (N+1)^g e^g`` (``g = 2 lam + |u|``) falls below 1e-16.
    """
    if abs(t) >= 1:
        warnings.warn("generating series diverges for |t| >= 1", DivergenceWarning, stacklevel=2)
    if n_terms is None:
        n_terms = _terms_for(abs(t), 2 * float(lam) + abs(u))
    vals = pollaczek_values(PollaczekParams(lam, phi, 0), u, n_terms)
    partial = sum(v * t**k for k, v in enumerate(vals))
    return abs(partial - mp_generating(lam, u, phi, t))


def _terms_for(r: float, growth: float) -> int:
    if r == 0:
        return 0
    n = 1
    while n < 5000 and r**n * (n + 1) ** growth * math.exp(growth) > 1e-16:
        n += 1
    return n


def arctan_identity(z: float, t: float) -> tuple[complex, complex]:
    """``((1 - it)/(1 + it))^{iz/2}`` and ``exp(z arctan t)``."""
    lhs = cmath.exp(0.5j * z * cmath.log((1 - 1j * t) / (1 + 1j * t)))
    return lhs, complex(math.exp(z * math.atan(t)))


@dataclass(frozen=True)
class PollaczekParams:
    """Parameters ``(lam, phi, c)`` of the associated Pollaczek polynomials."""

    lam: Fraction
    phi: float
    c: Fraction = Fraction(0)

    def __post_init__(self):
        lam = as_rational(self.lam)
        c = as_rational(self.c)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "c", c)
        if not 0 < self.phi < math.pi:
            raise DomainError("phi must lie in (0, pi)")
        if not ((2 * lam + c > 0 and c >= 0) or (2 * lam + c >= 1 and c > -1)):
            raise DomainError(f"invalid Pollaczek parameters lam={lam}, c={c}")


def pollaczek_values(params: PollaczekParams, x, n_max: int) -> list:
    """``P_0 .. P_{n_max}`` from
    ``(n+c+1) P_{n+1} = 2[(n+lam+c) cos phi + x sin phi] P_n - (n+2lam+c-1) P_{n-1}``.
    """
    lam, c = float(params.lam), float(params.c)
    cos_p = 0.0 if params.phi == HALF_PI else math.cos(params.phi)
    sin_p = math.sin(params.phi)
    out = [1.0]
    prev = 0.0
    for n in range(n_max):
        cur = out[n]
        nxt = (2 * ((n + lam + c) * cos_p + x * sin_p) * cur - (n + 2 * lam + c - 1) * prev) / (
            n + c + 1
        )
        prev = cur
        out.append(nxt)
    return out


def pollaczek_eval(params: PollaczekParams, x: float, n: int) -> float:
    if n < 0:
        raise DomainError("n must be >= 0")
    return pollaczek_values(params, x, n)[n]


def weight_gamma1(x: float) -> float:
    """Orthogonality weight of the ``gamma = 1`` family.

    ``(2 pi)^{-1} |Gamma(3/2 + iy)|^2 |2F1(1/2 + iy, 1; 3/2 + iy; -1)|^{-2}``
    with ``y = x / sqrt 2``.  Total mass is not normalised.
    """
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("x must be finite")
    if abs(x) > 40:
        warnings.warn("|Gamma|^2 underflows for |x| > 40", PrecisionWarning, stacklevel=2)
    y = x / math.sqrt(2.0)
    a = complex(0.5, y)
    f = hyp2f1(1, a, a + 1, -1.0)
    return abs_gamma_squared(a + 1) / (2 * math.pi * abs(f) ** 2)



def g_generating(x: float, t: float) -> float:
    """``G_x(t) = sqrt 2 / sqrt(2 + t^2) exp(sqrt 2 x arctan(t / sqrt 2))``, the egf of ``q_n``."""
    return math.sqrt(2.0) / math.sqrt(2.0 + t * t) * math.exp(
        math.sqrt(2.0) * x * math.atan(t / math.sqrt(2.0))
    )


def g_ode_residual(x: float, t: float, h: float = 1e-5) -> float:
    """``|(t^2 + 2) G' + (t - 2x) G|`` with a central difference for ``G'``."""
    deriv = (g_generating(x, t + h) - g_generating(x, t - h)) / (2 * h)
    return abs((t * t + 2) * deriv + (t - 2 * x) * g_generating(x, t))


def sigma_generating(sigma, x: float, t: float) -> float:
    """``(1 + t^2)^{-sigma} exp(sqrt 2 x arctan t)``."""
    return (1 + t * t) ** (-float(sigma)) * math.exp(math.sqrt(2.0) * x * math.atan(t))


def sigma_generating_check(sigma, x: float, t: float, n_terms: int | None = None) -> float:
    if abs(t) >= 1:
        warnings.warn("generating series diverges for |t| >= 1", DivergenceWarning, stacklevel=2)
    if n_terms is None:
        n_terms = _terms_for(abs(t), 2 * float(sigma) + abs(x))
    vals = sigma_family(sigma).values(x, n_terms)
    partial = sum(float(v) * t**k for k, v in enumerate(vals))
    return abs(partial - sigma_generating(sigma, x, t))


def family_to_dict(family: RecurrenceFamily, polys: list[RationalPoly]) -> dict:
    """JSON form; each coefficient is ``[[a_num, a_den], [b_num, b_den]]`` for ``a + b sqrt 2``."""
    return {"family": family.name, "polys": [p.to_json() for p in polys]}


def family_to_json(family: RecurrenceFamily, polys: list[RationalPoly], **kwargs) -> str:
    return json.dumps(family_to_dict(family, polys), **kwargs)
