"""Monic orthogonal polynomials of a symmetric moment functional.

Two exact constructions are available: the Hankel-determinant formula and
the Stieltjes recursion ``P_{n+1} = (x - a_n) P_n - b_n P_{n-1}`` driven by
the moment functional.  :func:`monic_ops` uses the recursion and certifies
it against the determinants for the first few degrees.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DomainError, MomentPositivityError, OutOfScopeError
from .moments import (
    Convention,
    MomentSequence,
    SequenceSpec,
    as_rational,
    format_rational,
    from_pair,
    moments_for,
    rational_pair,
)
from .poly import RationalPoly

CERTIFY_DEGREE = 4


class _Functional:
    """Linear moment functional ``L[x^k] = mu_k``."""

    def __init__(self, moments: MomentSequence):
        self.moments = moments

    def __call__(self, p: RationalPoly, shift: int = 0) -> Fraction:
        """``L[x^shift p(x)]``."""
        mu = self.moments.moment
        return sum((c * mu(k + shift) for k, c in enumerate(p.coeffs) if c), Fraction(0))

    def pair(self, p: RationalPoly, q: RationalPoly) -> Fraction:
        return self(p * q)


def hankel_determinant(moments: MomentSequence, n: int) -> Fraction:
    """``Delta_n = det(mu_{i+j})_{i,j=0..n}``, with ``Delta_{-1} = 1``."""
    if n < 0:
        return Fraction(1)
    mu = moments.moment
    return _det([[mu(i + j) for j in range(n + 1)] for i in range(n + 1)])


def _det(rows) -> Fraction:
    a = [list(map(Fraction, r)) for r in rows]
    size = len(a)
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, size):
            f = a[r][col] / p
            if f:
                row_r, row_c = a[r], a[col]
                for c in range(col, size):
                    row_r[c] -= f * row_c[c]
    return det


def monic_by_determinant(moments: MomentSequence, n: int) -> RationalPoly:
    """Monic ``P_n`` from the bordered Hankel determinant.

    The last row ``(1, x, ..., x^n)`` is expanded by cofactors.
    """
    if n == 0:
        return RationalPoly.one()
    mu = moments.moment
    d_prev = hankel_determinant(moments, n - 1)
    if d_prev == 0:
        raise MomentPositivityError(n - 1, d_prev)
    top = [[mu(i + j) for j in range(n + 1)] for i in range(n)]
    coeffs = []
    for j in range(n + 1):
        minor = [row[:j] + row[j + 1:] for row in top]
        sign = -1 if (n + j) % 2 else 1
        coeffs.append(sign * _det(minor) / d_prev)
    return RationalPoly(coeffs)


@dataclass(frozen=True)
class OrthoSystem:
    """Monic orthogonal polynomials with their norms and recurrence data.

    ``alphas[n]`` and ``betas[n]`` satisfy
    ``P_{n+1} = (x - alphas[n]) P_n - betas[n] P_{n-1}`` for ``n < n_max``, where
    ``betas[0] = mu_0`` so that ``xi[n] = betas[0] * ... * betas[n]``.
    """

    moments: MomentSequence
    polys: tuple
    xi: tuple
    betas: tuple
    alphas: tuple

    @property
    def n_max(self) -> int:
        return len(self.polys) - 1

    @property
    def spec(self) -> SequenceSpec:
        return self.moments.spec

    def poly(self, n: int) -> RationalPoly:
        _check_range(self, n)
        return self.polys[n]

    def pairing(self, p: RationalPoly, q: RationalPoly) -> Fraction:
        return _Functional(self.moments).pair(p, q)

    def to_dict(self) -> dict:
        gamma = self.spec.gamma
        return {
            "convention": self.spec.label,
            "gamma": None if gamma is None else format_rational(gamma),
            "polys": [p.to_json() for p in self.polys],
            "xi": [rational_pair(v) for v in self.xi],
            "beta": [rational_pair(v) for v in self.betas],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def system_from_dict(payload: dict) -> dict:
    """Decode the JSON form back into exact objects (polys, xi, beta)."""
    return {
        "convention": payload["convention"],
        "gamma": None if payload["gamma"] is None else as_rational(payload["gamma"]),
        "polys": [RationalPoly.from_json(p) for p in payload["polys"]],
        "xi": [from_pair(v) for v in payload["xi"]],
        "beta": [from_pair(v) for v in payload["beta"]],
    }


def _check_range(sys: OrthoSystem, n: int):
    if n < 0 or n > sys.n_max:
        raise IndexError(f"degree {n} outside computed range 0..{sys.n_max}")


def monic_ops(moments: MomentSequence, n_max: int, certify: bool = True) -> OrthoSystem:
    """Build ``P_0 .. P_{n_max}`` exactly from the moments.

    Parameters
    ----------
    moments : MomentSequence
        Must provide moments through degree ``2 n_max``.
    n_max : int
        Highest polynomial degree.
    certify : bool
        Compare against the determinant construction for degrees up to 4.

    Raises
    ------
    MomentPositivityError
        At the first ``n`` with ``xi_n <= 0``.
    """
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    if moments.max_degree < 2 * n_max:
        raise DomainError(
            f"need moments through degree {2 * n_max}, have {moments.max_degree}"
        )
    L = _Functional(moments)
    mu0 = moments.moment(0)
    if mu0 <= 0:
        raise MomentPositivityError(0, mu0)
    polys = [RationalPoly.one()]
    xi = [mu0]
    betas = [mu0]
    alphas = []
    prev = RationalPoly()
    for n in range(n_max):
        p = polys[n]
        # L[x p^2] = L[x^{n+1} p] + c_{n-1} L[x^n p], the rest vanishes by orthogonality
        top = L(p, shift=n + 1) + p.coeff(n - 1) * xi[n] if n >= 1 else L(p, shift=1)
        alpha = top / xi[n]
        alphas.append(alpha)
        nxt = p.mul_x() - p * alpha - prev * betas[n] if n >= 1 else p.mul_x() - p * alpha
        h = L(nxt, shift=n + 1)
        if h <= 0:
            raise MomentPositivityError(n + 1, h)
        polys.append(nxt)
        xi.append(h)
        betas.append(h / xi[n])
        prev = p
    sys = OrthoSystem(moments, tuple(polys), tuple(xi), tuple(betas), tuple(alphas))
    if certify:
        for n in range(min(CERTIFY_DEGREE, n_max) + 1):
            if monic_by_determinant(moments, n) != polys[n]:
                raise AssertionError(f"recursion and determinant disagree at degree {n}")
    return sys


def build_system(convention, n_max: int, gamma=None) -> OrthoSystem:
    """Convenience wrapper: named convention to :class:`OrthoSystem`."""
    spec = SequenceSpec(Convention(convention), gamma)
    return monic_ops(moments_for(spec, n_max), n_max)


def norm_xi(sys: OrthoSystem, n: int) -> Fraction:
    """Exact squared norm ``xi_n = L[P_n^2]``."""
    _check_range(sys, n)
    return sys.xi[n]


def recurrence_A(sys: OrthoSystem, n: int) -> tuple[Fraction, float]:
    """``(A_n^2, A_n)`` for ``x Pt_n = A_{n+1} Pt_{n+1} + A_n Pt_{n-1}``.

    ``A_n^2 = xi_n / xi_{n-1}`` is exact; ``A_n`` is its float square root.
    """
    if n < 1:
        raise IndexError("A_n is defined for n >= 1")
    _check_range(sys, n)
    sq = sys.xi[n] / sys.xi[n - 1]
    return sq, _sqrt_fraction(sq)


def _sqrt_fraction(q: Fraction) -> float:
    return math.sqrt(float(q))


@dataclass(frozen=True)
class HalfLinePoly:
    """Normalised half-line polynomial ``monic(x) / sqrt(norm)``."""

    monic: RationalPoly
    norm: Fraction

    def __call__(self, x: float) -> float:
        return float(self.monic(float(x))) / math.sqrt(self.norm)

    def eval_array(self, xs):
        return self.monic.eval_array(xs) / math.sqrt(self.norm)

    def matches_scaled(self, radicand, poly: RationalPoly) -> bool:
        """Exact test of ``monic / sqrt(norm) == sqrt(radicand) * poly``.

        Cross-multiplied form: ``monic == s * poly`` with ``s`` the ratio of
        leading coefficients and ``s^2 == radicand * norm``.
        """
        radicand = as_rational(radicand)
        if poly.degree != self.monic.degree or poly.leading == 0:
            return False
        s = self.monic.leading / poly.leading
        if s <= 0:
            return False
        return s * s == radicand * self.norm and poly * s == self.monic


def half_line_poly(sys: OrthoSystem, n: int) -> HalfLinePoly:
    """The degree-``n`` half-line polynomial ``V_n`` with ``Pt_{2n}(t) = V_n(t^2)``."""
    _check_range(sys, 2 * n)
    p = sys.polys[2 * n]
    if p.parity() != 0:
        raise AssertionError(f"P_{2 * n} is not even; symmetric moments violated")
    return HalfLinePoly(p.even_part_in_square(), sys.xi[2 * n])


@dataclass(frozen=True)
class IdentityRecord:
    n: int
    lhs: RationalPoly
    rhs: RationalPoly

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def kernel_identity_check(n_max: int) -> list[IdentityRecord]:
    """Check ``x Q_{2n}(x) = P_{2n+1}(x)`` exactly for ``0 <= n <= n_max``.

    ``P`` comes from ``(n!)^2`` moments, ``Q`` from ``((n+1)!)^2``.
    """
    if n_max < 0:
        return []
    p_sys = build_system(Convention.FACTORIAL_SQUARED, 2 * n_max + 1)
    q_sys = build_system(Convention.SHIFTED_FACTORIAL_SQUARED, 2 * n_max)
    return [
        IdentityRecord(n, q_sys.polys[2 * n].mul_x(), p_sys.polys[2 * n + 1])
        for n in range(n_max + 1)
    ]


def dp_weight(x, k: int):
    """Ultra-exponential weight for ``k = 1`` (``exp(-x)``) or ``k = 2`` (``2 K_0(2 sqrt x)``)."""
    from .special import bessel_k0

    if k not in (1, 2):
        raise OutOfScopeError(
            f"ultra-exponential weight for k = {k} has no closed form here; "
            "only k = 1 and k = 2 are implemented"
        )
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0):
        raise DomainError("the weight is defined for x > 0")
    out = np.exp(-arr) if k == 1 else 2.0 * bessel_k0(2.0 * np.sqrt(arr))
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class TrendRow:
    n: int
    a_squared: Fraction
    ratio: float  # A_n / n

    @property
    def deviation(self) -> float:
        return abs(self.ratio - math.pi / 4)


def recurrence_trend(n_max: int = 48) -> list[TrendRow]:
    """``A_n / n`` for the ``(n!)^2`` system, ``1 <= n <= n_max``."""
    sys = build_system(Convention.FACTORIAL_SQUARED, n_max)
    rows = []
    for n in range(1, n_max + 1):
        sq, a = recurrence_A(sys, n)
        rows.append(TrendRow(n, sq, a / n))
    return rows


def pair_means(values: Sequence[float]) -> list[float]:
    """Two-term moving means, which cancel the even/odd oscillation of the trend."""
    return [(values[i] + values[i + 1]) / 2 for i in range(len(values) - 1)]
