import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spt_nlcs import cstates
from spt_nlcs.errors import DomainError
from spt_nlcs.moments import cs_factorial
from spt_nlcs.quadrature import gauss_legendre


def _mp_eigen(n, theta, nu, alpha=1.0):
    # c_n^2 = alpha n! (n+nu) Gamma(nu)^2 / (pi 2^{1-2nu} Gamma(n+2nu)), from the Gegenbauer norm
    with mp.workprec(200):
        nu = mp.mpf(nu)
        c2 = alpha * mp.factorial(n) * (n + nu) * mp.gamma(nu) ** 2 / (mp.pi * 2 ** (1 - 2 * nu) * mp.gamma(n + 2 * nu))
        a = alpha * mp.mpf(theta)
        return mp.sqrt(c2) * mp.cos(a) ** nu * mp.gegenbauer(n, nu, mp.sin(a))


def _mp_state(theta, z, gamma, terms=80):
    # direct series sum_n zbar^n / sqrt(w_n) phi_n(theta) / sqrt(N)
    with mp.workprec(200):
        zb = mp.conj(mp.mpc(z))
        g = mp.mpf(gamma)
        total = mp.mpc(0)
        norm = mp.mpf(0)
        for n in range(terms):
            w = mp.mpf(1) / 2 if n == 0 else mp.factorial(n) * (n + g) * mp.rf(2 * g + 1, n - 1)
            total += zb**n / mp.sqrt(w) * _mp_eigen(n, theta, g)
            norm += abs(zb) ** (2 * n) / w
        return complex(total / mp.sqrt(norm))


# ----------------------------------------------------------------
# eigenfunctions


def test_params_validation():
    with pytest.raises(DomainError):
        cstates.CSParams(0.0, 1.0)
    with pytest.raises(DomainError):
        cstates.CSParams(1.0, 0.5)
    with pytest.raises(DomainError):
        cstates.CSParams(1.0, 1.0, -1.0)
    with pytest.raises(DomainError):
        cstates.eigenfunction(0, 2.0, cstates.CSParams(1.0, 1.0))


def test_energy():
    assert cstates.energy(3, cstates.CSParams(1.0, 2.0, 0.5)) == pytest.approx(0.25 * 25 / 2)


@pytest.mark.parametrize("n, nu, alpha, theta", [(0, 1.0, 1.0, 0.3), (3, 2.5, 1.0, -0.9),
                                                 (7, 3.5, 2.0, 0.6), (12, 1.5, 0.5, 2.1)])
def test_eigenfunction_oracle(n, nu, alpha, theta):
    got = cstates.eigenfunction(n, theta, cstates.CSParams(nu, nu, alpha))
    assert got == pytest.approx(float(_mp_eigen(n, theta, nu, alpha)), rel=1e-12, abs=1e-14)


def test_square_well_eigenfunctions():
    th = np.linspace(-1.5, 1.5, 9)
    p = cstates.CSParams(1.0, 1.0)
    for n in range(6):
        assert np.allclose(cstates.eigenfunction_square_well(n, th), cstates.eigenfunction(n, th, p), atol=1e-14)


@pytest.mark.parametrize("nu, alpha", [(1.0, 1.0), (2.0, 0.7), (3.5, 1.0)])
def test_orthonormality(nu, alpha):
    p = cstates.CSParams(nu, nu, alpha)
    rule = gauss_legendre(200, -p.half_width, p.half_width)
    V = np.array([cstates.eigenfunction(n, rule.nodes, p) for n in range(7)])
    assert np.max(np.abs((V * rule.weights) @ V.T - np.eye(7))) < 1e-8


# ----------------------------------------------------------------
# coefficients and norms


def test_normalization_reference():
    assert cstates.normalization(1.2 + 0.5j, 2.5) == pytest.approx(2.5393912498043109321, rel=1e-13)
    assert cstates.normalization(0, 1.0) == 2.0


def test_coefficients_at_origin():
    c = cstates.nlcs_coefficients(0, 1.5)
    assert c.norm == 2.0
    assert np.allclose(c.normalized(), [1.0])


def test_gamma0_norm_is_i0():
    c = cstates.nlcs_coefficients(1.7 - 0.4j, 0.0)
    assert c.norm == pytest.approx(float(mp.besseli(0, 2 * abs(1.7 - 0.4j))), rel=1e-13)
    assert c.partial_norm() == pytest.approx(c.norm, rel=1e-12)


def test_raw_coefficients():
    z = 0.8 - 0.6j
    c = cstates.nlcs_coefficients(z, 2.0, n_max=5)
    for n in range(6):
        assert c.coeffs[n] == pytest.approx(z.conjugate() ** n / math.sqrt(float(cs_factorial(n, 2))), rel=1e-14)


@settings(max_examples=40, deadline=None)
@given(st.floats(0, 4), st.floats(-math.pi, math.pi), st.floats(0.2, 6))
def test_unit_norm(r, phase, gamma):
    c = cstates.nlcs_coefficients(cmath.rect(r, phase), gamma)
    assert abs(float(np.sum(np.abs(c.normalized()) ** 2)) - 1) < 1e-9
    assert c.tail < 1e-9


@settings(max_examples=30, deadline=None)
@given(st.floats(0.1, 3), st.floats(-3, 3), st.floats(-3, 3))
def test_phase_rotation(r, phase, delta):
    a = cstates.nlcs_coefficients(cmath.rect(r, phase), 1.5, n_max=30).coeffs
    b = cstates.nlcs_coefficients(cmath.rect(r, phase + delta), 1.5, n_max=30).coeffs
    assert np.allclose(cstates.phase_rotate(a, delta), b, rtol=1e-12, atol=1e-15)


def test_barut_girardello():
    bg = cstates.barut_girardello(1.3, 1)
    assert bg.norm_series == pytest.approx(bg.norm_closed, rel=1e-12)
    assert float(np.sum(np.abs(bg.normalized()) ** 2)) == pytest.approx(1.0, rel=1e-12)
    # sigma = 1/2 gives the (n!)^2 weights
    half = cstates.barut_girardello(0.9 + 0.2j, 0.5, n_max=20)
    nl = cstates.nlcs_coefficients(0.9 + 0.2j, 0.0, n_max=20)
    assert np.allclose(half.coeffs, nl.coeffs, rtol=1e-14)
    with pytest.raises(DomainError):
        cstates.barut_girardello(1.0, 0.3)


def test_canonical_coefficients():
    c = cstates.canonical_coefficients(1.5 + 0.5j, 60)
    assert float(np.sum(np.abs(c) ** 2)) == pytest.approx(1.0, rel=1e-14)


# ----------------------------------------------------------------
# wavefunctions


@pytest.mark.parametrize("gamma, z, theta", [(2.5, 0.7 + 0.3j, 0.4), (1.0, 1.1 - 0.2j, -1.2),
                                             (3.5, -2 + 1j, 0.9)])
def test_closed_form_oracle(gamma, z, theta):
    want = _mp_state(theta, z, gamma)
    assert abs(cstates.wavefunction_closed(theta, z, gamma) - want) < 1e-12 * abs(want)
    ser = cstates.wavefunction_series(theta, z, cstates.CSParams(gamma, gamma))
    assert abs(ser - want) < 1e-12 * abs(want)


@pytest.mark.parametrize("gamma, z", [(2.5, 0.7 + 0.3j), (1.0, 1.1 - 0.2j)])
def test_closed_vs_series_grid(gamma, z):
    th = np.linspace(-math.pi / 2, math.pi / 2, 21)
    ser = cstates.wavefunction_series(th, z, cstates.CSParams(gamma, gamma))
    clo = cstates.wavefunction_closed(th, z, gamma)
    assert np.max(np.abs(ser - clo) / np.maximum(np.abs(ser), 1e-300)) < 1e-10


@pytest.mark.parametrize("gamma, z, alpha", [(1.0, 2 - 1j, 1.0), (2.5, 0.5j, 0.8), (1.5, 3.0, 1.0)])
def test_wavefunction_unit_norm(gamma, z, alpha):
    p = cstates.CSParams(gamma, gamma, alpha)
    rule = gauss_legendre(200, -p.half_width, p.half_width)
    psi = cstates.wavefunction_closed(rule.nodes, z, gamma, alpha)
    assert float(np.dot(rule.weights, np.abs(psi) ** 2)) == pytest.approx(1.0, rel=1e-10)


def test_closed_form_at_origin_is_ground_state():
    th = np.linspace(-1.4, 1.4, 7)
    p = cstates.CSParams(2.0, 2.0)
    assert np.allclose(cstates.wavefunction_closed(th, 0, 2.0), cstates.eigenfunction(0, th, p), atol=1e-15)


def test_square_well_form():
    th = np.linspace(-1.5, 1.5, 13)
    z = 1.1 - 0.2j
    assert np.max(np.abs(cstates.wavefunction_square_well(th, z) - cstates.wavefunction_closed(th, z, 1.0))) < 1e-12
    with pytest.raises(DomainError):
        cstates.wavefunction_square_well(0.1, 0)


def test_state_object():
    s = cstates.NLCSState(cstates.CSParams(1.5, 2.0), 0.6 + 0.1j)
    assert s.norm == pytest.approx(s.coefficients().partial_norm(), rel=1e-10)
    p = s.params
    rule = gauss_legendre(200, -p.half_width, p.half_width)
    assert float(np.dot(rule.weights, np.abs(s.wavefunction(rule.nodes)) ** 2)) == pytest.approx(1.0, rel=1e-10)
