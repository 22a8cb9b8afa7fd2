"""Dense univariate polynomials with exact coefficients.

Coefficients are Fractions, or elements of Q(sqrt 2) (:class:`QSqrt2`) for
the shift-operator families whose recurrences carry a ``1/sqrt 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .moments import as_rational, format_rational, from_pair, rational_pair

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class QSqrt2:
    """The number ``a + b*sqrt(2)`` with rational ``a``, ``b``."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def coerce(cls, value) -> "QSqrt2":
        if isinstance(value, QSqrt2):
            return value
        return cls(as_rational(value), Fraction(0))

    def __add__(self, other):
        o = QSqrt2.coerce(other)
        return QSqrt2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt2(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-QSqrt2.coerce(other))

    def __rsub__(self, other):
        return QSqrt2.coerce(other) - self

    def __mul__(self, other):
        o = QSqrt2.coerce(other)
        return QSqrt2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conjugate(self) -> "QSqrt2":
        return QSqrt2(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 2 * self.b * self.b

    def __truediv__(self, other):
        o = QSqrt2.coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 2)")
        num = self * o.conjugate()
        return QSqrt2(num.a / n, num.b / n)

    def __rtruediv__(self, other):
        return QSqrt2.coerce(other) / self

    def __eq__(self, other):
        try:
            o = QSqrt2.coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __float__(self):
        return float(self.a) + float(self.b) * SQRT2

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __str__(self):
        if self.b == 0:
            return format_rational(self.a)
        if self.a == 0:
            return "sqrt2" if self.b == 1 else f"{format_rational(self.b)}*sqrt2"
        return f"({format_rational(self.a)} + {format_rational(self.b)}*sqrt2)"

    def to_json(self) -> list:
        return [rational_pair(self.a), rational_pair(self.b)]


def _is_zero(c) -> bool:
    return c.is_zero() if isinstance(c, QSqrt2) else c == 0


class RationalPoly:
    """Immutable polynomial ``sum c_k x^k`` with coefficients in ascending order."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, (Fraction, QSqrt2)) else as_rational(c) for c in coeffs]
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def x(cls) -> "RationalPoly":
        return cls([0, 1])

    @classmethod
    def one(cls) -> "RationalPoly":
        return cls([1])

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self._coeffs) - 1

    @property
    def leading(self):
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def coeff(self, k: int):
        return self._coeffs[k] if 0 <= k < len(self._coeffs) else Fraction(0)

    def is_monic(self) -> bool:
        return bool(self._coeffs) and self.leading == 1

    def parity(self) -> int | None:
        """``0`` (even), ``1`` (odd) or ``None`` for mixed parity."""
        odd = any(not _is_zero(c) for c in self._coeffs[1::2])
        even = any(not _is_zero(c) for c in self._coeffs[0::2])
        if odd and even:
            return None
        return 1 if odd else 0

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self._coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self._coeffs), len(other._coeffs))
        return RationalPoly(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(-c for c in self._coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if not isinstance(other, RationalPoly):
            return RationalPoly(c * other for c in self._coeffs)
        if not self._coeffs or not other._coeffs:
            return RationalPoly()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] = a * b + out[i + j]
        return RationalPoly(out)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, scalar):
        return RationalPoly(c / scalar for c in self._coeffs)

    def mul_x(self, power: int = 1) -> "RationalPoly":
        return RationalPoly([Fraction(0)] * power + list(self._coeffs))

    def __call__(self, x):
        """Horner evaluation.

        Exact for Fraction/int ``x`` with rational coefficients.  Float input
        with Q(sqrt 2) coefficients evaluates the rational and irrational
        parts exactly at ``Fraction(x)`` and combines them once.
        """
        if isinstance(x, float) and any(isinstance(c, QSqrt2) for c in self._coeffs):
            xf = Fraction(x)
            a = sum((QSqrt2.coerce(c).a * xf**k for k, c in enumerate(self._coeffs)), Fraction(0))
            b = sum((QSqrt2.coerce(c).b * xf**k for k, c in enumerate(self._coeffs)), Fraction(0))
            return float(a) + float(b) * SQRT2
        if isinstance(x, (float, complex)):
            acc = 0.0
            for c in reversed(self._coeffs):
                acc = acc * x + float(c)
            return acc
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def eval_array(self, xs):
        """Vectorised float evaluation (numpy array in, array out)."""
        import numpy as np

        xs = np.asarray(xs, dtype=float)
        acc = np.zeros_like(xs)
        for c in reversed(self._coeffs):
            acc = acc * xs + float(c)
        return acc

    def even_part_in_square(self) -> "RationalPoly":
        """The polynomial ``v`` with ``p(t) = v(t^2)`` for an even ``p``."""
        if self.parity() == 1:
            raise ValueError("polynomial is odd; no half-line image")
        if any(not _is_zero(c) for c in self._coeffs[1::2]):
            raise ValueError("polynomial has mixed parity")
        return RationalPoly(self._coeffs[0::2])

    def to_json(self) -> dict:
        coeffs = [
            c.to_json() if isinstance(c, QSqrt2) else rational_pair(c) for c in self._coeffs
        ]
        return {"degree": self.degree, "coeffs": coeffs}

    @classmethod
    def from_json(cls, payload: dict) -> "RationalPoly":
        coeffs = []
        for item in payload["coeffs"]:
            if isinstance(item[0], list):
                coeffs.append(QSqrt2(from_pair(item[0]), from_pair(item[1])))
            else:
                coeffs.append(from_pair(item))
        return cls(coeffs)

    def __repr__(self):
        return f"RationalPoly({list(self._coeffs)!r})"

    def __str__(self):
        return format_poly(self)


def _as_poly(value) -> RationalPoly:
    if isinstance(value, RationalPoly):
        return value
    return RationalPoly([value])


def format_poly(p: RationalPoly, var: str = "x") -> str:
    if p.degree < 0:
        return "0"
    terms = []
    for k in range(p.degree, -1, -1):
        c = p.coeff(k)
        if _is_zero(c):
            continue
        if isinstance(c, QSqrt2):
            body = str(c)
            sign = "+"
            if c.b == 0 and c.a < 0 or c.a == 0 and c.b < 0:
                sign, body = "-", str(-c)
        else:
            sign = "-" if c < 0 else "+"
            body = format_rational(abs(c))
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if mono and body == "1":
            piece = mono
        elif mono:
            piece = f"{body} {mono}"
        else:
            piece = body
        terms.append((sign, piece))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, piece in terms[1:]:
        out += f" {sign} {piece}"
    return out


def poly_from_dict(terms: dict) -> RationalPoly:
    """Build a polynomial from ``{power: coefficient}``."""
    if not terms:
        return RationalPoly()
    deg = max(terms)
    return RationalPoly(as_rational(terms.get(k, 0)) for k in range(deg + 1))
