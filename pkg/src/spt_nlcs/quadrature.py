"""Gauss-Legendre rules on finite intervals and on the half line."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import QuadratureConvergenceWarning


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and positive weights; ``domain`` is ``"interval"`` or ``"half-line"``."""

    nodes: np.ndarray
    weights: np.ndarray
    domain: str = "interval"

    def integrate(self, f) -> complex | float:
        return np.dot(self.weights, f(self.nodes))

    def __len__(self):
        return len(self.nodes)


@lru_cache(maxsize=64)
def _legendre(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


@lru_cache(maxsize=16)
def _legendre_extended(n: int):
    """Nodes and weights in ``longdouble``, Newton-polished from the double rule."""
    x = _legendre(n)[0].astype(np.longdouble)
    for _ in range(3):
        p_prev, p = np.ones_like(x), x.copy()
        for k in range(2, n + 1):
            p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
        dp = n * (x * p - p_prev) / (x * x - 1)
        x = x - p / dp
    p_prev, p = np.ones_like(x), x.copy()
    for k in range(2, n + 1):
        p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
    dp = n * (x * p - p_prev) / (x * x - 1)
    w = 2 / ((1 - x * x) * dp * dp)
    return x, w


def gauss_legendre(n: int, a: float = -1.0, b: float = 1.0, extended: bool = False) -> QuadratureRule:
    """``n``-point Gauss-Legendre rule on ``[a, b]``; exact to degree ``2n - 1``.

    ``extended=True`` returns ``numpy.longdouble`` nodes and weights (80-bit
    on x86-64; identical to double on platforms without it).
    """
    if n < 1:
        raise ValueError("need at least one node")
    if extended:
        x, w = _legendre_extended(n)
        a, b = np.longdouble(a), np.longdouble(b)
    else:
        x, w = _legendre(n)
    half = (b - a) / 2
    return QuadratureRule(a + half * (x + 1), half * w, "interval")


def half_line_rule(
    n_per_panel: int = 40, s_max: float = 40.0, panels: int = 16
) -> QuadratureRule:
    """Rule for ``int_0^inf f(r) dr`` with integrands decaying like ``exp(-2 sqrt r)``.

    With ``r = s^2`` the integral becomes ``int 2 s f(s^2) ds``.  The ``s``
    range ``[0, s_max]`` is cut into panels whose widths double, the first
    being ``s_max / (2^panels - 1)``, so the rule is dense near the
    logarithmic singularity of ``K_0`` at the origin.
    """
    edges = s_max * (2.0 ** np.arange(panels + 1) - 1.0) / (2.0**panels - 1.0)
    x, w = _legendre(n_per_panel)
    s_nodes, s_weights = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        half = (hi - lo) / 2.0
        s_nodes.append(lo + half * (x + 1.0))
        s_weights.append(half * w)
    s = np.concatenate(s_nodes)
    ws = np.concatenate(s_weights)
    return QuadratureRule(s * s, 2.0 * s * ws, "half-line")


def converged(f, n: int, a: float, b: float, tol: float = 1e-8):
    """Integrate with ``n`` and ``2n`` nodes; warn when they differ by more than ``tol``.

    Returns ``(value_2n, change)``.
    """
    coarse = gauss_legendre(n, a, b).integrate(f)
    fine = gauss_legendre(2 * n, a, b).integrate(f)
    change = abs(fine - coarse) / max(abs(fine), 1.0)
    if change > tol or not math.isfinite(change):
        warnings.warn(
            f"quadrature changed by {change:.2e} when doubling {n} nodes",
            QuadratureConvergenceWarning,
            stacklevel=2,
        )
    return fine, change
