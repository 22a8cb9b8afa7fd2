"""Coherent states for the symmetric Poschl-Teller well.

Units are hbar = m = 1.  The potential lives on ``|theta| <= pi / (2 alpha)``
and ``nu >= 1`` (``nu = 1`` is the infinite square well).

The coherent state with parameter ``gamma`` is

    |z, gamma> = N(|z|^2)^{-1/2} sum_n  zbar^n / sqrt(w_n) |phi_n>,

with ``w_n`` from :func:`~spt_nlcs.moments.cs_factorial` and
``N = 2 1F2(gamma; gamma+1, 2 gamma; |z|^2)``.  When ``nu = gamma`` the series
sums to a Bessel closed form (:func:`wavefunction_closed`).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .moments import log_cs_factorial
from .special import bessel_i, bessel_j_reduced, gegenbauer, hyp1f2

TAIL_TOL = 1e-17
MAX_TERMS = 4000


@dataclass(frozen=True)
class CSParams:
    gamma: float
    nu: float
    alpha: float = 1.0

    def __post_init__(self):
        if not self.gamma > 0:
            raise DomainError("gamma must be > 0")
        if not self.nu >= 1:
            raise DomainError("nu must be >= 1")
        if not self.alpha > 0:
            raise DomainError("alpha must be > 0")

    @property
    def half_width(self) -> float:
        return math.pi / (2 * self.alpha)

    def check_theta(self, theta):
        arr = np.asarray(theta)
        if arr.dtype != np.longdouble:
            arr = arr.astype(float)
        if np.any(np.abs(arr) > self.half_width * (1 + 1e-12)):
            raise DomainError(f"theta outside [-pi/(2 alpha), pi/(2 alpha)] = +-{self.half_width}")
        return arr


def energy(n: int, params: CSParams) -> float:
    """``E_n = alpha^2 (nu + n)^2 / 2``."""
    if n < 0:
        raise DomainError("n must be >= 0")
    return params.alpha**2 * (params.nu + n) ** 2 / 2


def _log_eig_norm(n: int, nu: float, alpha: float) -> float:
    return 0.5 * (
        math.log(alpha) + math.lgamma(n + 1) + math.log(n + nu) + math.lgamma(nu)
        + math.lgamma(2 * nu) - 0.5 * math.log(math.pi) - math.lgamma(n + 2 * nu)
        - math.lgamma(nu + 0.5)
    )


def eigenfunction(n: int, theta, params: CSParams):
    """Normalised eigenfunction ``c_n cos^nu(alpha theta) C_n^nu(sin alpha theta)``."""
    th = params.check_theta(theta)
    a = params.alpha * th
    cos = np.clip(np.cos(a), 0, None)
    out = math.exp(_log_eig_norm(n, params.nu, params.alpha)) * cos**params.nu * gegenbauer(
        n, params.nu, np.sin(a)
    )
    return float(out) if np.ndim(out) == 0 else out


def eigenfunction_square_well(n: int, theta, alpha: float = 1.0):
    """``sqrt(2 alpha / pi) cos(alpha theta) U_n(sin alpha theta)``, the ``nu = 1`` case."""
    from .special import chebyshev_u

    a = alpha * np.asarray(theta, dtype=float)
    out = math.sqrt(2 * alpha / math.pi) * np.cos(a) * chebyshev_u(n, np.sin(a))
    return float(out) if np.ndim(out) == 0 else out


def normalization(z, gamma: float) -> float:
    """``N_gamma(|z|^2) = 2 1F2(gamma; gamma + 1, 2 gamma; |z|^2)``."""
    return 2.0 * hyp1f2(gamma, gamma + 1, 2 * gamma, abs(complex(z)) ** 2)


def _truncation(r2: float, gamma: float) -> int:
    """Smallest ``N`` whose positive tail ``sum_{n>N} r2^n / w_n`` is < TAIL_TOL of the sum."""
    if r2 == 0:
        return 0
    log_r2 = math.log(r2)
    log_terms = []
    n = 0
    while n < MAX_TERMS:
        log_terms.append(n * log_r2 - log_cs_factorial(n, gamma))
        if n >= 1:
            ratio = math.exp(log_terms[n] - log_terms[n - 1])
            if ratio < 0.5:
                peak = max(log_terms)
                tail = math.exp(log_terms[n] - peak) * ratio / (1 - ratio)
                if tail < TAIL_TOL:
                    return n + 2
        n += 1
    raise ArithmeticError("coherent-state series did not converge within MAX_TERMS")


@dataclass(frozen=True)
class NLCSCoefficients:
    """Expansion coefficients ``zbar^n / sqrt(w_n)`` of the unnormalised state.

    ``norm`` is the closed form ``N_gamma(|z|^2)``; ``tail`` bounds the
    relative weight of the dropped terms.
    """

    z: complex
    gamma: float
    coeffs: np.ndarray
    norm: float
    tail: float

    def normalized(self) -> np.ndarray:
        return self.coeffs / math.sqrt(self.norm)

    def partial_norm(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))


def nlcs_coefficients(z, gamma: float, n_max: int | None = None) -> NLCSCoefficients:
    """Coefficients through ``n_max`` (default: chosen by the tail bound)."""
    z = complex(z)
    if gamma < 0:
        raise DomainError("gamma must be >= 0")
    if n_max is None:
        n_max = _truncation(abs(z) ** 2, gamma)
    zb = z.conjugate()
    r = abs(zb)
    phase = zb / r if r else 0j
    coeffs = np.zeros(n_max + 1, dtype=complex)
    for n in range(n_max + 1):
        if n == 0:
            coeffs[0] = math.exp(-0.5 * log_cs_factorial(0, gamma))
        elif r:
            coeffs[n] = phase**n * math.exp(n * math.log(r) - 0.5 * log_cs_factorial(n, gamma))
    # gamma = 0 has w_n = (n!)^2, whose generating sum is I_0(2|z|)
    norm = normalization(z, gamma) if gamma > 0 else _bg_norm_closed(r, 0.5)
    tail = max(0.0, 1.0 - float(np.sum(np.abs(coeffs) ** 2)) / norm)
    return NLCSCoefficients(z, gamma, coeffs, norm, tail)


@dataclass(frozen=True)
class NLCSState:
    params: CSParams
    z: complex

    @property
    def norm(self) -> float:
        return normalization(self.z, self.params.gamma)

    def coefficients(self) -> NLCSCoefficients:
        return nlcs_coefficients(self.z, self.params.gamma)

    def wavefunction(self, theta):
        return wavefunction_series(theta, self.z, self.params)


def wavefunction_series(theta, z, params: CSParams, n_max: int | None = None):
    """``<theta | z, gamma>`` summed term by term over the eigenfunctions."""
    th = params.check_theta(theta)
    if n_max is None:
        n_max = _pointwise_truncation(abs(complex(z)), params)
    c = nlcs_coefficients(z, params.gamma, n_max).normalized()
    total = np.zeros(np.shape(th), dtype=complex)
    for n, cn in enumerate(c):
        if cn != 0:
            total = total + cn * eigenfunction(n, th, params)
    return complex(total) if np.ndim(total) == 0 else total


def _pointwise_truncation(r: float, params: CSParams) -> int:
    """Truncation for the eigenfunction sum.

    Bounds term ``n`` by ``|c_n| sup|phi_n| / cos^nu``, using
    ``|C_n^nu| <= (2 nu)_n / n!``, so the tail stays small even near the walls
    where every term carries the same vanishing factor ``cos^nu``.
    """
    if r == 0:
        return 0
    g, nu, alpha = params.gamma, params.nu, params.alpha
    logs = []
    for n in range(MAX_TERMS):
        logs.append(
            n * math.log(r) - 0.5 * log_cs_factorial(n, g) + _log_eig_norm(n, nu, alpha)
            + math.lgamma(2 * nu + n) - math.lgamma(2 * nu) - math.lgamma(n + 1)
        )
        if n >= 1:
            ratio = math.exp(logs[n] - logs[n - 1])
            if ratio < 0.5 and math.exp(logs[n] - max(logs)) * ratio / (1 - ratio) < TAIL_TOL:
                return n + 2
    raise ArithmeticError("eigenfunction series did not converge within MAX_TERMS")


def wavefunction_closed(theta, z, gamma: float, alpha: float = 1.0):
    """Closed form of ``<theta | z, gamma>`` for ``nu = gamma``.

    Written with the entire function ``(x/2)^{-mu} J_mu(x)`` so that ``z = 0``
    and ``cos(alpha theta) = 0`` need no special handling:

        psi = K N^{-1/2} e^{zbar s} c^gamma (xi/2)^{1/2-gamma} J_{gamma-1/2}(xi),

    where ``s = sin(alpha theta)``, ``c = cos(alpha theta)``, ``xi = zbar c`` and
    ``K = sqrt(2 alpha Gamma(gamma+1) Gamma(gamma+1/2) / sqrt(pi))``.
    """
    params = CSParams(gamma, gamma, alpha)
    th = params.check_theta(theta)
    zb = complex(z).conjugate()
    a = alpha * th
    s = np.sin(a)
    c = np.clip(np.cos(a), 0.0, None)
    log_k = 0.5 * (
        math.log(2 * alpha) + math.lgamma(gamma + 1) + math.lgamma(gamma + 0.5)
        - 0.5 * math.log(math.pi)
    )
    pref = math.exp(log_k) / math.sqrt(normalization(zb, gamma))
    out = pref * np.exp(zb * s) * c**gamma * bessel_j_reduced(gamma - 0.5, zb * c)
    return complex(out) if np.ndim(out) == 0 else out


def wavefunction_square_well(theta, z, alpha: float = 1.0):
    """``gamma = nu = 1``:
    ``sqrt(2 alpha/pi) (|z|/zbar) (I_0(2|z|) - 1)^{-1/2} e^{zbar s} sin(zbar c)``.
    """
    params = CSParams(1.0, 1.0, alpha)
    th = params.check_theta(theta)
    zb = complex(z).conjugate()
    if zb == 0:
        raise DomainError("z = 0 is a removable singularity here; use wavefunction_closed")
    r = abs(zb)
    a = alpha * th
    pref = math.sqrt(2 * alpha / math.pi) * (r / zb) / math.sqrt(bessel_i(0, 2 * r) - 1.0)
    out = pref * np.exp(zb * np.sin(a)) * np.sin(zb * np.cos(a))
    return complex(out) if np.ndim(out) == 0 else out


# ----------------------------------------------------------------------
# Barut-Girardello states


def _bg_norm_closed(r: float, sigma: float) -> float:
    """``Gamma(2 sigma) r^{1 - 2 sigma} I_{2 sigma - 1}(2 r)``."""
    if r == 0:
        return 1.0
    return math.gamma(2 * sigma) * r ** (1 - 2 * sigma) * bessel_i(2 * sigma - 1, 2 * r)


@dataclass(frozen=True)
class BGState:
    """Barut-Girardello coefficients ``zbar^n / sqrt(n! (2 sigma)_n)``.

    ``factor`` is the normalising constant
    ``|z|^{sigma-1/2} / sqrt(Gamma(2 sigma) I_{2 sigma-1}(2|z|))``.
    """

    z: complex
    sigma: float
    coeffs: np.ndarray
    norm_series: float
    norm_closed: float

    @property
    def factor(self) -> float:
        return 1.0 / math.sqrt(self.norm_closed)

    def normalized(self) -> np.ndarray:
        return self.coeffs * self.factor


def barut_girardello(z, sigma, n_max: int | None = None) -> BGState:
    sigma = float(sigma)
    if not sigma > 0 or (2 * sigma) != int(2 * sigma):
        raise DomainError("2 sigma must be a positive integer")
    z = complex(z)
    r = abs(z)
    if n_max is None:
        n_max = 0 if r == 0 else _bg_truncation(r * r, sigma)
    zb = z.conjugate()
    coeffs = np.zeros(n_max + 1, dtype=complex)
    coeffs[0] = 1.0
    log_w = 0.0
    phase = zb / r if r else 0j
    for n in range(1, n_max + 1):
        log_w += math.log(n) + math.log(2 * sigma + n - 1)
        if r:
            coeffs[n] = phase**n * math.exp(n * math.log(r) - 0.5 * log_w)
    return BGState(z, sigma, coeffs, float(np.sum(np.abs(coeffs) ** 2)), _bg_norm_closed(r, sigma))


def _bg_truncation(r2: float, sigma: float) -> int:
    term, total, n = 1.0, 1.0, 0
    while n < MAX_TERMS:
        n += 1
        ratio = r2 / (n * (2 * sigma + n - 1))
        term *= ratio
        total += term
        if ratio < 0.5 and term * ratio / (1 - ratio) < TAIL_TOL * total:
            return n + 2
    raise ArithmeticError("Barut-Girardello series did not converge")


def phase_rotate(coeffs: np.ndarray, delta: float) -> np.ndarray:
    """Coefficients of the state at ``z e^{i delta}``: ``c_n e^{-i n delta}``."""
    return coeffs * np.exp(-1j * delta * np.arange(len(coeffs)))


def canonical_coefficients(z, n_max: int) -> np.ndarray:
    """Canonical coherent-state coefficients ``e^{-|z|^2/2} zbar^n / sqrt(n!)``."""
    zb = complex(z).conjugate()
    n = np.arange(n_max + 1)
    logf = np.array([math.lgamma(k + 1) for k in n])
    return cmath.exp(-abs(zb) ** 2 / 2) * zb**n / np.exp(0.5 * logf)
