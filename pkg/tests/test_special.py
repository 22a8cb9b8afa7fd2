import cmath
import math
import warnings
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spt_nlcs import oracle, special
from spt_nlcs.errors import DomainError

# reference values from mpmath at 256 bits, frozen


@pytest.mark.parametrize("x, want", [
    (0.1, 2.4270690247020165578),
    (1.0, 0.42102443824070833334),
    (3.5, 0.019598897170368489108),
    (20.0, 5.7412378153365242927e-10),
])
def test_k0_reference(x, want):
    assert special.bessel_k0(x) == pytest.approx(want, rel=1e-13)


def test_macdonald_reference():
    assert special.macdonald_k(1, 2.2) == pytest.approx(0.10789681011908725046, rel=1e-13)
    assert special.macdonald_k(0.7, 4.0) == pytest.approx(0.011790873831224358077, rel=1e-13)


@pytest.mark.parametrize("x", [0.05, 0.8, 1.9, 2.1, 7.5, 25.0])
def test_wronskian(x):
    # I_0 K_1 + I_1 K_0 = 1/x
    w = special.bessel_i(0, x) * special.macdonald_k(1, x) + special.bessel_i(1, x) * special.bessel_k0(x)
    assert w * x == pytest.approx(1.0, rel=1e-12)


def test_bessel_i_reference():
    assert special.bessel_i(0, 2.4) == pytest.approx(3.0492566579894136401, rel=1e-14)
    assert special.bessel_i(1.5, 0.9) == pytest.approx(0.24601572013302372693, rel=1e-14)


@pytest.mark.parametrize("nu, z, want", [
    (1.5, 1 + 0.5j, 0.2420149293092099318 + 0.16320229500887287007j),
    (0.3, 15.0, 0.080045072038934181249),
    (2.5, -0.7 + 3j, 0.085278654522927016195 - 1.5780465084765871544j),
    (0.0, 30.0, -0.086367983581040211336),
])
def test_bessel_j_reference(nu, z, want):
    assert abs(special.bessel_j(nu, z) - want) < 1e-13 * max(1.0, abs(want))


def test_bessel_j_series_oracle():
    z = 1 + 0.5j
    assert abs(special.bessel_j(1.5, z) - oracle.besselj_series(1.5, z)) < 1e-14


def test_bessel_j_half_integer_closed_form():
    # J_{1/2}(x) = sqrt(2/(pi x)) sin x
    for x in (0.3, 4.0, 11.0, 40.0):
        assert special.bessel_j(0.5, x).real == pytest.approx(math.sqrt(2 / (math.pi * x)) * math.sin(x), abs=1e-13)


def test_reduced_bessel_at_zero():
    # (z/2)^{-nu} J_nu(z) -> 1/Gamma(nu+1)
    assert abs(special.bessel_j_reduced(1.5, 0.0) - 1 / math.gamma(2.5)) < 1e-15


def test_reduced_bessel_keeps_longdouble():
    z = np.array([0.3 + 0.1j], dtype=np.clongdouble)
    assert special.bessel_j_reduced(0.5, z).dtype == np.clongdouble


# ----------------------------------------------------------------
# Gamma


def test_log_gamma_reference():
    assert abs(special.log_gamma_complex(0.3 + 40j) - (-62.650686053968132692 + 107.24156057988667968j)) < 1e-12
    assert abs(special.log_gamma_complex(-5.5 + 2j) - (-9.7811429856215211033 - 15.228097632212937624j)) < 1e-12
    assert special.gamma(4.5) == pytest.approx(11.631728396567448929, rel=1e-15)


@settings(max_examples=60)
@given(st.floats(-6, 6))
def test_abs_gamma_half_line(y):
    # |Gamma(1/2 + iy)|^2 = pi / cosh(pi y)
    assert special.abs_gamma_squared(complex(0.5, y)) == pytest.approx(math.pi / math.cosh(math.pi * y), rel=1e-12)


@settings(max_examples=60)
@given(st.floats(-30, 30), st.floats(-30, 30))
def test_gamma_recurrence(x, y):
    z = complex(x, y)
    if abs(z) < 1e-3 or (y == 0 and x <= 0 and x == int(x)):
        return
    lhs = special.log_gamma_complex(z + 1)
    rhs = special.log_gamma_complex(z) + cmath.log(z)
    d = (lhs - rhs) / (2j * math.pi)
    assert abs(d.real) < 1e-9 and abs(d.imag - round(d.imag)) < 1e-9


def test_gamma_poles():
    with pytest.raises(DomainError):
        special.log_gamma_complex(-3)


# ----------------------------------------------------------------
# orthogonal polynomials


def test_gegenbauer_reference():
    assert special.gegenbauer(5, 1.5, 0.3) == pytest.approx(2.02174875, rel=1e-15)
    assert special.chebyshev_u(7, -0.45) == pytest.approx(-0.6253569, rel=1e-14)


@settings(max_examples=40)
@given(st.integers(0, 15), st.floats(0.5, 6), st.floats(-1, 1))
def test_gegenbauer_against_oracle(n, nu, y):
    want = oracle.gegenbauer(n, nu, y)
    assert special.gegenbauer(n, nu, y) == pytest.approx(want, rel=1e-11, abs=1e-11 * math.comb(n + int(2 * nu), n))


def test_gegenbauer_bessel_formula():
    s = special.gegenbauer_bessel_sum(0.9, 2.0, 0.4, 80)
    assert abs(s - special.gegenbauer_bessel_closed(0.9, 2.0, 0.4)) < 1e-12


# ----------------------------------------------------------------
# hypergeometric


def test_hyp1f2_reference():
    assert special.hyp1f2(0.5, 1.5, 1, 3.7) == pytest.approx(3.15977483008412522, rel=1e-14)
    assert special.hyp1f2(2.5, 3.5, 5, 10) == pytest.approx(3.8320576727881098877, rel=1e-14)


@settings(max_examples=40)
@given(st.floats(0, 6))
def test_hyp1f2_i0_identity(z):
    # 1F2(1; 2, 2; z^2) z^2 = I_0(2z) - 1
    assert special.hyp1f2(1, 2, 2, z * z) * z * z == pytest.approx(special.bessel_i(0, 2 * z) - 1, rel=1e-12, abs=1e-15)


def test_hyp0f1():
    # 0F1(; 1; x^2/4) = I_0(x)
    assert special.hyp0f1(1, 1.44) == pytest.approx(special.bessel_i(0, 2.4), rel=1e-14)


def test_hyp2f1_terminating_exact():
    b = complex(0.5, 0.4)
    bq = (F(1, 2), F(2, 5))
    # brute-force Gaussian-rational sum of (-3)_k (b)_k / (k!)^2 2^k
    re, im = F(0), F(0)
    pa, pb = F(1), (F(1), F(0))
    for k in range(4):
        term = pa * F(2) ** k / math.factorial(k) ** 2
        re += term * pb[0]
        im += term * pb[1]
        pa *= -3 + k
        pb = (pb[0] * (bq[0] + k) - pb[1] * bq[1], pb[0] * bq[1] + pb[1] * (bq[0] + k))
    got = special.hyp2f1(-3, b, 1, 2)
    assert abs(got - complex(float(re), float(im))) < 1e-15


@pytest.mark.parametrize("a, b, c, x, want", [
    (0.3, 0.7, 1.5, 0.6, 1.1201205117323476853),
    (0.3, 0.7, 1.5, -0.9, 0.90733890234437889488),
    (0.3, 0.7, 2.5, 1.0, 1.1480180708837365613),
])
def test_hyp2f1_reference(a, b, c, x, want):
    assert abs(special.hyp2f1(a, b, c, x) - want) < 1e-13


def test_hyp2f1_outside_domain():
    with pytest.raises(DomainError):
        special.hyp2f1(1.2, 0.4, 2.1, -3.0)


def test_arctan_as_2f1():
    # 2F1(1/2, 1; 3/2; -t^2) = arctan(t)/t
    for t in (0.2, 0.7, 1.0):
        assert special.hyp2f1(0.5, 1, 1.5, -t * t).real == pytest.approx(math.atan(t) / t, rel=1e-13)


def test_no_warnings_in_validated_range():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        special.bessel_j(2.5, 11.9 + 0.5j)
        special.bessel_j(0.5, 60.0)


def test_oracle_precision_env(monkeypatch):
    monkeypatch.setenv("SPT_NLCS_PRECISION", "512")
    assert oracle.precision_bits() == 512
    monkeypatch.setenv("SPT_NLCS_PRECISION", "junk")
    assert oracle.precision_bits() == 256
    monkeypatch.setenv("SPT_NLCS_PRECISION", "20")
    assert oracle.precision_bits() == 256
