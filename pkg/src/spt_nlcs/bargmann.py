"""Bargmann-type transform onto the space of entire functions with weights ``w_n``.

The transform sends the well's eigenbasis to normalised monomials,

    B[phi_n](z) = z^n / sqrt(w_n),   w_n = cs_factorial(n, gamma),

and the target space carries the inner product
``<F, G> = sum_n w_n a_n conj(b_n)`` for ``F = sum a_n z^n``, ``G = sum b_n z^n``.
Its reproducing kernel is ``K(z, w) = sum (z wbar)^n / w_n``.

For ``gamma`` in {0, 1} that inner product is an integral against an explicit
radial measure ``g(|w|^2) d|w|^2 dtheta / (2 pi)``, with ``g(r) = 2 K_0(2 sqrt r)``
and ``r K_0(2 sqrt r)`` respectively; :func:`identity_moment_check` checks its
moments ``int r^n h(r) dr = 2 w_n`` for ``h = 2 g``.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import asdict, dataclass

import numpy as np

from .cstates import CSParams, eigenfunction
from .errors import DomainError, QuadratureConvergenceWarning
from .moments import cs_factorial, format_rational, log_cs_factorial
from .quadrature import gauss_legendre, half_line_rule
from .special import bessel_j_reduced, bessel_k0

TRANSFORM_TOL = 1e-8


def _prefactor(gamma: float, alpha: float) -> float:
    """``sqrt(2 alpha Gamma(gamma+1) Gamma(gamma+1/2) / sqrt(pi))``."""
    return math.exp(
        0.5 * (math.log(2 * alpha) + math.lgamma(gamma + 1) + math.lgamma(gamma + 0.5)
               - 0.5 * math.log(math.pi))
    )


def transform_kernel(theta, z, gamma: float, alpha: float = 1.0, variant: str = "cos"):
    """Integral kernel of the transform at ``(theta, z)``.

    ``variant="cos"``:
    ``K e^{z s} (z/2)^{1/2-gamma} J_{gamma-1/2}(z c) sqrt(c) = K e^{z s} c^gamma Jr(z c)``,
    with ``Jr`` the reduced Bessel function.  ``variant="sin"`` swaps the
    Bessel argument to ``z s``; it exists only to show that choice fails.
    """
    z = complex(z)
    th = np.asarray(theta)
    if th.dtype == np.longdouble:
        z = np.clongdouble(z)
    else:
        th = th.astype(float)
    a = alpha * th
    s, c = np.sin(a), np.clip(np.cos(a), 0, None)
    pref = _prefactor(gamma, alpha)
    mu = gamma - 0.5
    if variant == "cos":
        return pref * np.exp(z * s) * c**gamma * bessel_j_reduced(mu, z * c)
    if variant == "sin":
        arg = z * s
        # (z/2)^{-mu} (arg/2)^{mu} on principal branches
        ratio = np.exp(mu * (np.log((arg + 0j) / 2) - cmath.log(z / 2))) if z != 0 else 0
        return pref * np.exp(z * s) * ratio * bessel_j_reduced(mu, arg) * np.sqrt(c)
    raise DomainError(f"unknown variant {variant!r}")


@dataclass(frozen=True)
class TransformValue:
    value: complex
    change: float  # |value(2n) - value(n)| / max(1, |value|)
    nodes: int


def bargmann_transform(
    f, z, gamma: float, alpha: float = 1.0, nodes: int = 128, variant: str = "cos",
    extended: bool = True,
) -> TransformValue:
    """``B_gamma[f](z)`` by Gauss-Legendre with ``nodes`` and ``2 nodes`` points.

    ``f`` maps an array of angles to values.  With ``extended`` the angles,
    kernel and sum are carried in ``longdouble``: for small ``|z|`` the
    result is a tiny remainder of O(1) terms that cancel, and double
    precision leaves an absolute floor near 1e-16.  A
    :class:`QuadratureConvergenceWarning` is raised when doubling the nodes
    moves the result by more than 1e-8.
    """
    if gamma < 1:
        raise DomainError("the transform is implemented for gamma >= 1")
    half = math.pi / (2 * alpha)
    values = []
    for n in (nodes, 2 * nodes):
        rule = gauss_legendre(n, -half, half, extended=extended)
        k = transform_kernel(rule.nodes, z, gamma, alpha, variant)
        values.append(complex(np.sum(rule.weights * k * f(rule.nodes))))
    change = abs(values[1] - values[0]) / max(1.0, abs(values[1]))
    if change > TRANSFORM_TOL:
        warnings.warn(
            f"transform changed by {change:.2e} when doubling {nodes} nodes",
            QuadratureConvergenceWarning,
            stacklevel=2,
        )
    return TransformValue(values[1], change, 2 * nodes)


def basis_image(n: int, z, gamma: float, alpha: float = 1.0, nodes: int = 128, variant: str = "cos"):
    """``B_gamma[phi_n](z)`` for the eigenfunction with ``nu = gamma``."""
    params = CSParams(gamma, gamma, alpha)
    return bargmann_transform(lambda th: eigenfunction(n, th, params), z, gamma, alpha, nodes, variant)


def monomial_image(n: int, z, gamma: float) -> complex:
    """Exact target ``z^n / sqrt(w_n)``."""
    return complex(z) ** n / math.sqrt(float(cs_factorial(n, gamma)))


# ----------------------------------------------------------------------
# Reproducing kernel


@dataclass(frozen=True)
class KernelEval:
    value: complex
    gamma: float
    n_terms: int
    tail: float  # bound on the dropped terms relative to the partial sum


def _kernel_terms(x: float, gamma: float, tol: float = 1e-17) -> tuple[int, float]:
    """Number of terms of ``sum x^n / w_n`` (``x >= 0``) and the tail bound."""
    if x == 0:
        return 1, 0.0
    total = 0.0
    peak = -math.inf
    prev = None
    for n in range(100_000):
        lt = n * math.log(x) - log_cs_factorial(n, gamma)
        peak = max(peak, lt)
        total += math.exp(lt - peak) if lt - peak > -745 else 0.0
        if prev is not None:
            ratio = math.exp(lt - prev)
            if ratio < 0.5:
                tail = math.exp(lt - peak) * ratio / (1 - ratio)
                if tail < tol:
                    return n + 1, tail
        prev = lt
    raise ArithmeticError("kernel series did not converge")


def reproducing_kernel(z, w, gamma: float) -> KernelEval:
    """``K(z, w) = sum_n (z wbar)^n / w_n`` with a ratio-test tail bound."""
    x = complex(z) * complex(w).conjugate()
    n_terms, tail = _kernel_terms(abs(x), gamma)
    total = complex(math.exp(-log_cs_factorial(0, gamma)))
    if x != 0:
        log_x = cmath.log(x)
        for n in range(1, n_terms):
            total += cmath.exp(n * log_x - log_cs_factorial(n, gamma))
    return KernelEval(total, gamma, n_terms, tail)


def kernel_array(z, w: np.ndarray, gamma: float) -> np.ndarray:
    """Vectorised ``K(z, w)`` over an array of ``w``."""
    w = np.asarray(w, dtype=complex)
    x = complex(z) * np.conj(w)
    n_terms, _ = _kernel_terms(float(np.max(np.abs(x))), gamma)
    logw = np.array([log_cs_factorial(n, gamma) for n in range(n_terms)])
    total = np.zeros_like(x)
    power = np.ones_like(x)
    for n in range(n_terms):
        total += power * math.exp(-logw[n])
        power = power * x
    return total


# ----------------------------------------------------------------------
# Measures and moment checks


def radial_density(r, gamma: int):
    """``h(r)`` with ``int_0^inf r^n h(r) dr = 2 w_n``: ``4 K_0(2 sqrt r)`` or ``2 r K_0(2 sqrt r)``."""
    r = np.asarray(r, dtype=float)
    k0 = bessel_k0(2.0 * np.sqrt(r))
    if gamma == 0:
        return 4.0 * k0
    if gamma == 1:
        return 2.0 * r * k0
    raise DomainError("closed-form densities exist for gamma in {0, 1} only")


@dataclass(frozen=True)
class CheckRecord:
    check: str
    gamma: float
    n: int
    exact: str
    numeric: float
    rel_err: float

    def to_dict(self) -> dict:
        return asdict(self)


def identity_moment_check(gamma: int, n_max: int) -> list[CheckRecord]:
    """``int r^n h(r) dr`` by panel quadrature against ``2 w_n``, ``n <= n_max``."""
    if gamma not in (0, 1):
        raise DomainError("moment check available for gamma in {0, 1}")
    rule = half_line_rule()
    h = radial_density(rule.nodes, gamma)
    out = []
    for n in range(n_max + 1):
        exact = 2 * cs_factorial(n, gamma)
        numeric = float(np.dot(rule.weights, rule.nodes**n * h))
        out.append(
            CheckRecord("identity-moment", gamma, n, format_rational(exact), numeric,
                        abs(numeric / float(exact) - 1))
        )
    return out


def k0_moment_check(n_max: int) -> list[CheckRecord]:
    """``int x^n 2 K_0(2 sqrt x) dx = (n!)^2``."""
    rule = half_line_rule()
    h = 2.0 * bessel_k0(2.0 * np.sqrt(rule.nodes))
    out = []
    for n in range(n_max + 1):
        exact = math.factorial(n) ** 2
        numeric = float(np.dot(rule.weights, rule.nodes**n * h))
        out.append(CheckRecord("k0-moment", 0, n, str(exact), numeric, abs(numeric / exact - 1)))
    return out


def growth_condition(a, gamma: float) -> float:
    """``sum_n w_n |a_n|^2``, the squared norm of ``sum a_n z^n``."""
    a = np.asarray(a, dtype=complex)
    w = np.array([math.exp(log_cs_factorial(n, gamma)) for n in range(len(a))])
    return float(np.sum(w * np.abs(a) ** 2))


def taylor_coefficients(F, m: int = 32, radius: float = 1.0) -> np.ndarray:
    """First ``m`` Taylor coefficients of an entire ``F`` from ``m`` samples on a circle."""
    k = np.arange(m)
    pts = radius * np.exp(2j * np.pi * k / m)
    vals = np.array([F(p) for p in pts], dtype=complex)
    return np.fft.fft(vals) / m / radius**k


def isometry_gram(
    gamma: float, n_max: int = 6, m: int = 16, radius: float = 3.0, alpha: float = 1.0
) -> np.ndarray:
    """Gram matrix of ``B[phi_0..phi_n_max]`` in the target-space inner product.

    Taylor coefficients come from samples on ``|z| = radius``; a radius
    above 1 keeps sampling noise in the high coefficients, which the weights
    ``w_k`` amplify, well below the diagonal.
    """
    coeffs = []
    for n in range(n_max + 1):
        coeffs.append(
            taylor_coefficients(lambda p, n=n: basis_image(n, p, gamma, alpha).value, m, radius)
        )
    C = np.array(coeffs)
    w = np.array([math.exp(log_cs_factorial(k, gamma)) for k in range(m)])
    return (C * w) @ C.conj().T


def reproducing_check(F_coeffs: np.ndarray, z, gamma: int, angular: int = 64) -> tuple[complex, complex]:
    """``int F(w) K(z, w) dmu(w)`` against ``F(z)`` for the explicit ``gamma`` in {0, 1} measure.

    ``F`` is given by its Taylor coefficients.  The radial part uses the
    half-line rule in ``r = |w|^2``; the angular part the trapezoidal rule.
    """
    rule = half_line_rule()
    g = radial_density(rule.nodes, gamma) / 2.0
    theta = 2 * np.pi * np.arange(angular) / angular
    rho = np.sqrt(rule.nodes)
    W = rho[:, None] * np.exp(1j * theta)[None, :]
    F = np.polynomial.polynomial.polyval(W, F_coeffs)
    K = kernel_array(z, W.ravel(), gamma).reshape(W.shape)
    inner = (F * K).mean(axis=1)
    integral = complex(np.dot(rule.weights, g * inner))
    return integral, complex(np.polynomial.polynomial.polyval(complex(z), F_coeffs))
