import json
import math
from fractions import Fraction as F

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spt_nlcs import shiftpoly
from spt_nlcs.errors import DivergenceWarning, DomainError, PrecisionWarning
from spt_nlcs.poly import QSqrt2, RationalPoly, poly_from_dict
from spt_nlcs.quadrature import gauss_legendre
from spt_nlcs.reference_tables import PHI_TABLE

XS = (-2.0, -0.5, 0.3, 1.7)


def _mp_meixner_pollaczek(lam, x, phi, n):
    # (2 lam)_n / n! e^{i n phi} 2F1(-n, lam + i x; 2 lam; 1 - e^{-2 i phi})
    with mp.workprec(200):
        e = mp.exp(1j * phi)
        v = mp.rf(2 * lam, n) / mp.factorial(n) * e**n * mp.hyp2f1(-n, lam + 1j * x, 2 * lam, 1 - e**-2)
        return float(mp.re(v))


# ----------------------------------------------------------------
# exact families


def test_gamma0_first_polys():
    assert [str(p) for p in shiftpoly.phi_family(0, 2)] == ["1", "sqrt2 x", "x^2 - 1/2"]


def test_sigma_half_is_gamma0():
    assert shiftpoly.sigma_family(F(1, 2)).polys(10) == shiftpoly.gamma0_family().polys(10)


@pytest.mark.parametrize("fam", [shiftpoly.gamma0_family(), shiftpoly.gamma1_family(),
                                 shiftpoly.sigma_family(F(3, 2))])
def test_recurrence_exact(fam):
    ps = fam.polys(12)
    x = RationalPoly.x()
    for n in range(1, 12):
        assert ps[n] * x == ps[n + 1] * fam.up(n) + ps[n - 1] * fam.down(n)


@settings(max_examples=50)
@given(st.integers(0, 19), st.floats(-4, 4))
def test_recurrence_residual_float(n, x):
    fam = shiftpoly.gamma1_family()
    ps = fam.polys(20)
    assert fam.residual(ps, n, x) <= 1e-9 * max(1.0, abs(x * ps[n](x)))


def test_family_selection():
    assert shiftpoly.family_for(1).name == "gamma=1"
    assert shiftpoly.family_for(sigma=2).name == "sigma=2"
    with pytest.raises(DomainError):
        shiftpoly.family_for(2)
    with pytest.raises(DomainError):
        shiftpoly.sigma_family(0)


def test_printed_gamma0_list_is_inconsistent():
    phis = shiftpoly.phi_family(0, 6)
    printed = [poly_from_dict(t) for t in PHI_TABLE]
    assert phis[0] == RationalPoly([QSqrt2(1)])
    ratios = {float(p.leading) / float(q.leading) for p, q in zip(printed[1:], phis[1:])}
    assert len(ratios) > 1


def test_q_normalized_recurrence():
    qs = shiftpoly.q_normalized(shiftpoly.phi_family(0, 12))
    assert shiftpoly.q_recurrence_holds(qs)
    assert all(q.is_monic() for q in qs)


# ----------------------------------------------------------------
# closed forms


@pytest.mark.parametrize("x", XS)
def test_gamma0_is_meixner_pollaczek(x):
    phis = shiftpoly.phi_family(0, 12)
    for n in range(13):
        want = _mp_meixner_pollaczek(0.5, x / math.sqrt(2), math.pi / 2, n)
        hyp, rec = shiftpoly.mp_eval(F(1, 2), x / math.sqrt(2), math.pi / 2, n)
        v = phis[n](x)
        assert v == pytest.approx(want, rel=1e-10, abs=1e-12)
        assert hyp == pytest.approx(want, rel=1e-10, abs=1e-12)
        assert rec == pytest.approx(want, rel=1e-10, abs=1e-12)


def test_meixner_pollaczek_general_phi():
    for n in (0, 3, 7):
        want = _mp_meixner_pollaczek(1.5, 0.4, 1.1, n)
        assert shiftpoly.mp_hypergeometric(F(3, 2), 0.4, 1.1, n) == pytest.approx(want, rel=1e-10, abs=1e-12)


@pytest.mark.parametrize("x", XS)
def test_gamma1_is_associated_pollaczek(x):
    params = shiftpoly.PollaczekParams(F(1, 2), math.pi / 2, 1)
    g1 = shiftpoly.phi_family(1, 12)
    for n in range(13):
        assert g1[n](x) == pytest.approx(shiftpoly.pollaczek_eval(params, x / math.sqrt(2), n), rel=1e-10, abs=1e-12)


def test_pollaczek_params_validation():
    with pytest.raises(DomainError):
        shiftpoly.PollaczekParams(F(1, 2), 0.0, 0)
    with pytest.raises(DomainError):
        shiftpoly.PollaczekParams(F(-1), 1.0, 0)
    with pytest.raises(DomainError):
        shiftpoly.pollaczek_eval(shiftpoly.PollaczekParams(1, 1.0), 0.2, -1)


# ----------------------------------------------------------------
# weight


def test_weight_reference():
    assert shiftpoly.weight_gamma1(0.0) == pytest.approx(2 / math.pi**2, rel=1e-13)
    assert shiftpoly.weight_gamma1(1.3) == pytest.approx(0.13066159323411001149, rel=1e-13)


def test_weight_oracle():
    from spt_nlcs import oracle
    for x in (-3.0, 0.7, 5.5):
        assert shiftpoly.weight_gamma1(x) == pytest.approx(oracle.weight_gamma1(x), rel=1e-12)


def test_weight_warns_far_out():
    with pytest.warns(PrecisionWarning):
        shiftpoly.weight_gamma1(45.0)
    with pytest.raises(DomainError):
        shiftpoly.weight_gamma1(float("inf"))


def test_weight_orthogonality():
    rule = gauss_legendre(600, -30.0, 30.0)
    w = np.array([shiftpoly.weight_gamma1(x) for x in rule.nodes])
    V = shiftpoly.gamma1_family().values(rule.nodes, 6)
    G = (V * w * rule.weights) @ V.T
    d = np.diag(G)
    off = np.abs(G - np.diag(d)) / np.sqrt(np.outer(d, d))
    assert off.max() < 1e-6


# ----------------------------------------------------------------
# generating functions


@pytest.mark.parametrize("case", [(0.5, 0.0, math.pi / 2, 0.3), (0.5, 0.7, math.pi / 2, -0.4),
                                  (1.5, -0.3, 1.1, 0.5)])
def test_mp_generating(case):
    assert shiftpoly.mp_generating_check(*case) < 1e-8


@pytest.mark.parametrize("case", [(F(1, 2), 1.0, 0.4), (F(3, 2), 0.8, 0.5), (2, -1.2, 0.6)])
def test_sigma_generating(case):
    assert shiftpoly.sigma_generating_check(*case) < 1e-8


def test_sigma_generating_diverges():
    with pytest.warns(DivergenceWarning):
        shiftpoly.sigma_generating_check(1, 0.3, 1.2, n_terms=10)


@settings(max_examples=30)
@given(st.floats(-2, 2), st.floats(-0.9, 0.9))
def test_g_ode(x, t):
    assert shiftpoly.g_ode_residual(x, t) < 1e-8


def test_q_generating_function():
    # sum q_n t^n / n! = G_x(t)
    qs = shiftpoly.q_normalized(shiftpoly.phi_family(0, 40))
    for x in (-0.8, 0.0, 1.3):
        for t in (0.3, -0.6):
            s = sum(q(x) * t**n / math.factorial(n) for n, q in enumerate(qs))
            assert s == pytest.approx(shiftpoly.g_generating(x, t), rel=1e-12)


@settings(max_examples=30)
@given(st.floats(-3, 3), st.floats(-0.95, 0.95))
def test_arctan_identity(z, t):
    lhs, rhs = shiftpoly.arctan_identity(z, t)
    assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(rhs))


def test_json_dump():
    fam = shiftpoly.gamma1_family()
    payload = json.loads(shiftpoly.family_to_json(fam, fam.polys(3)))
    back = [RationalPoly.from_json(p) for p in payload["polys"]]
    assert back == fam.polys(3)
    assert payload["family"] == "gamma=1"
