"""Exact moment sequences and the generalized factorial.

All exact scalars are :class:`fractions.Fraction` values.  The sequence

    x_0 = 0,  x_1 = Gamma(2g + 1),  x_n = n (n + g)(n + 2g - 1) / (n + g - 1)

and the generalized factorial

    x_n! = n! (n + g) (2g + 1)(2g + 2) ... (2g + n - 1),   x_0! = 1

are provided for rational ``g >= 0``, together with named moment providers
(``mu_2n``) used by :mod:`spt_nlcs.hankel`.
"""

from __future__ import annotations

import enum
import math
import numbers
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .errors import DomainError, ExactnessError

Rational = Fraction
RationalLike = Union[int, Fraction, str]
Number = Union[int, Fraction, float]

__all__ = [
    "Convention",
    "MomentSequence",
    "Rational",
    "SequenceSpec",
    "as_rational",
    "cs_factorial",
    "gen_factorial",
    "moments_for",
    "pochhammer",
    "x_seq",
]


def as_rational(value) -> Fraction:
    """Convert ``value`` to a Fraction.

    Strings accept ``"5/2"`` and decimal literals.  Floats are read through
    their shortest decimal repr, so ``0.3`` becomes ``3/10``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational literal: {value!r}") from exc
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DomainError(f"not a finite number: {value!r}")
        return Fraction(repr(value))
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def _is_exact(value) -> bool:
    return isinstance(value, (numbers.Integral, Fraction)) and not isinstance(value, bool)


def _check_gamma(gamma):
    if gamma < 0:
        raise DomainError(f"gamma must be >= 0, got {gamma}")


def pochhammer(a, n: int):
    """Rising factorial ``(a)_n = a (a+1) ... (a+n-1)`` with ``(a)_0 = 1``.

    Exact for int/Fraction ``a``; float otherwise.
    """
    if n < 0:
        raise DomainError("pochhammer needs n >= 0")
    if _is_exact(a):
        out = Fraction(1)
        a = Fraction(a)
    else:
        out = 1.0
    for k in range(n):
        out *= a + k
    return out


def x_seq(n: int, gamma, exact: bool | None = None):
    """The positive sequence ``x_n^gamma``.

    Parameters
    ----------
    n : int
        Index, ``n >= 0``.
    gamma : int, Fraction, str or float
        Parameter, ``gamma >= 0``.
    exact : bool, optional
        ``True`` demands a Fraction and raises :class:`ExactnessError` when
        ``Gamma(2 gamma + 1)`` is irrational (only ``x_1`` is affected).
        ``False`` forces float output.  ``None`` returns a Fraction whenever
        the value is rational.
    """
    if n < 0:
        raise DomainError("x_seq needs n >= 0")
    if isinstance(gamma, str):
        gamma = as_rational(gamma)
    _check_gamma(gamma)
    rational = _is_exact(gamma)
    if exact and not rational:
        raise ExactnessError("exact mode needs a rational gamma")
    if n == 0:
        return Fraction(0) if (rational and exact is not False) else 0.0
    if n == 1:
        two_g = 2 * gamma
        if rational and Fraction(two_g).denominator == 1:
            val = Fraction(math.factorial(int(two_g)))
            return val if exact is not False else float(val)
        if exact:
            raise ExactnessError(
                f"Gamma(2*gamma + 1) is irrational for gamma = {gamma}"
            )
        return math.gamma(2 * float(gamma) + 1)
    if rational and exact is not False:
        g = Fraction(gamma)
        return n * (n + g) * (n + 2 * g - 1) / (n + g - 1)
    g = float(gamma)
    return n * (n + g) * (n + 2 * g - 1) / (n + g - 1)


@lru_cache(maxsize=4096)
def _gen_factorial_exact(n: int, gamma: Fraction) -> Fraction:
    if n == 0:
        return Fraction(1)
    return math.factorial(n) * (n + gamma) * pochhammer(2 * gamma + 1, n - 1)


def gen_factorial(n: int, gamma):
    """Generalized factorial ``x_n^gamma! = n! (n+gamma) (2gamma+1)_{n-1}``.

    ``x_0! = 1`` by convention.  The value is rational for every rational
    ``gamma`` and is returned as a Fraction in that case; float ``gamma``
    gives a float.
    """
    if n < 0:
        raise DomainError("gen_factorial needs n >= 0")
    if isinstance(gamma, str):
        gamma = as_rational(gamma)
    _check_gamma(gamma)
    if _is_exact(gamma):
        return _gen_factorial_exact(n, Fraction(gamma))
    if n == 0:
        return 1.0
    g = float(gamma)
    return math.factorial(n) * (n + g) * pochhammer(2 * g + 1, n - 1)


def cs_factorial(n: int, gamma):
    """Coherent-state weight ``n! (n+gamma) Gamma(n+2gamma) / Gamma(2gamma+1)``.

    Equal to :func:`gen_factorial` for ``n >= 1``.  At ``n = 0`` the Gamma
    form gives ``1/2`` for every ``gamma > 0`` (and ``1`` at ``gamma = 0``,
    where the radial measure degenerates to ``2 K_0``).  These are the
    Mellin moments ``(1/2) int r^n h(r) dr`` of the resolution-of-identity
    density, and the weights under which ``sum |z|^(2n) / w_n`` equals
    ``2 1F2(gamma; gamma+1, 2gamma; |z|^2)``.
    """
    if n == 0:
        if isinstance(gamma, str):
            gamma = as_rational(gamma)
        _check_gamma(gamma)
        if gamma == 0:
            return Fraction(1) if _is_exact(gamma) else 1.0
        return Fraction(1, 2) if _is_exact(gamma) else 0.5
    return gen_factorial(n, gamma)


def log_cs_factorial(n: int, gamma: float) -> float:
    """Natural log of :func:`cs_factorial` in floating point (large ``n``)."""
    g = float(gamma)
    if n == 0:
        return 0.0 if g == 0 else -math.log(2.0)
    if g == 0:
        return 2.0 * math.lgamma(n + 1)
    return (
        math.lgamma(n + 1) + math.log(n + g) + math.lgamma(n + 2 * g)
        - math.lgamma(2 * g + 1)
    )


class Convention(enum.Enum):
    """Named even-moment conventions."""

    GENERALIZED = "generalized-factorial"
    FACTORIAL_SQUARED = "factorial-squared"
    SHIFTED_FACTORIAL_SQUARED = "shifted-factorial-squared"
    CUSTOM = "custom"


@dataclass(frozen=True)
class SequenceSpec:
    """Which moment convention to use, and its parameter."""

    convention: Convention
    gamma: Fraction | None = None

    def __post_init__(self):
        conv = Convention(self.convention)
        object.__setattr__(self, "convention", conv)
        if self.gamma is not None:
            object.__setattr__(self, "gamma", as_rational(self.gamma))
        g = self.gamma
        if conv is Convention.FACTORIAL_SQUARED:
            if g is None:
                object.__setattr__(self, "gamma", Fraction(0))
            elif g != 0:
                raise DomainError("factorial-squared moments require gamma = 0")
        elif conv is Convention.SHIFTED_FACTORIAL_SQUARED:
            if g is None:
                object.__setattr__(self, "gamma", Fraction(1))
            elif g != 1:
                raise DomainError("shifted-factorial-squared moments require gamma = 1")
        elif conv is Convention.GENERALIZED:
            if g is None:
                raise DomainError("the generalized-factorial convention needs gamma")
            _check_gamma(g)

    def even_moment(self, n: int) -> Fraction:
        conv = self.convention
        if conv is Convention.FACTORIAL_SQUARED:
            return Fraction(math.factorial(n) ** 2)
        if conv is Convention.SHIFTED_FACTORIAL_SQUARED:
            return Fraction(math.factorial(n + 1) ** 2)
        if conv is Convention.GENERALIZED:
            return gen_factorial(n, self.gamma)
        raise DomainError("custom sequences carry explicit values")

    @property
    def label(self) -> str:
        return self.convention.value


@dataclass(frozen=True)
class MomentSequence:
    """Even moments ``mu_0, mu_2, ..., mu_{2 n_max}`` of a symmetric measure.

    Odd moments are identically zero.  Instances are immutable, so a single
    sequence may be shared between threads.
    """

    spec: SequenceSpec
    even: tuple = field(default_factory=tuple)

    def __post_init__(self):
        even = tuple(as_rational(v) for v in self.even)
        for n, v in enumerate(even):
            if v <= 0:
                raise DomainError(f"even moment mu_{2 * n} = {v} is not positive")
        object.__setattr__(self, "even", even)

    @property
    def n_max(self) -> int:
        return len(self.even) - 1

    @property
    def max_degree(self) -> int:
        """Largest ``k`` with ``mu_k`` available."""
        return 2 * self.n_max + 1

    def __call__(self, k: int) -> Fraction:
        return self.moment(k)

    def moment(self, k: int) -> Fraction:
        if k < 0:
            raise DomainError("moment index must be >= 0")
        if k % 2:
            return Fraction(0)
        n = k // 2
        if n > self.n_max:
            raise IndexError(f"mu_{k} not computed (n_max = {self.n_max})")
        return self.even[n]

    def scaled(self, c) -> "MomentSequence":
        """The sequence ``c * mu`` as a custom convention."""
        c = as_rational(c)
        if c <= 0:
            raise DomainError("scale factor must be positive")
        return MomentSequence(SequenceSpec(Convention.CUSTOM), tuple(c * v for v in self.even))

    def __len__(self):
        return len(self.even)

    def __iter__(self):
        return iter(self.even)


def moments_for(spec: SequenceSpec, n_max: int) -> MomentSequence:
    """Exact even moments ``mu_{2n}`` for ``0 <= n <= n_max``.

    >>> list(moments_for(SequenceSpec(Convention.FACTORIAL_SQUARED), 4))
    [Fraction(1, 1), Fraction(1, 1), Fraction(4, 1), Fraction(36, 1), Fraction(576, 1)]
    """
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    return MomentSequence(spec, tuple(spec.even_moment(n) for n in range(n_max + 1)))


def custom_moments(even: Iterable[RationalLike]) -> MomentSequence:
    """Wrap an explicit list of even moments."""
    return MomentSequence(SequenceSpec(Convention.CUSTOM), tuple(as_rational(v) for v in even))


def parse_convention(name: str) -> Convention:
    aliases = {
        "generalized-factorial": Convention.GENERALIZED,
        "generalized": Convention.GENERALIZED,
        "factorial-squared": Convention.FACTORIAL_SQUARED,
        "shifted-factorial-squared": Convention.SHIFTED_FACTORIAL_SQUARED,
        "custom": Convention.CUSTOM,
    }
    try:
        return aliases[name.strip().lower()]
    except KeyError:
        raise DomainError(f"unknown moment convention {name!r}") from None


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def rational_pair(q: Fraction) -> list:
    """JSON-safe ``["num", "den"]`` pair."""
    return [str(q.numerator), str(q.denominator)]


def from_pair(pair: Sequence) -> Fraction:
    return Fraction(int(pair[0]), int(pair[1]))
