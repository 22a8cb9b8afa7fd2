import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from spt_nlcs import hankel
from spt_nlcs.errors import DomainError, MomentPositivityError, OutOfScopeError
from spt_nlcs.moments import Convention, SequenceSpec, custom_moments, moments_for
from spt_nlcs.poly import poly_from_dict
from spt_nlcs.reference_tables import P_TABLE, Q_TABLE, V_TABLE, XI_TABLE


def _functional(even, p):
    # L[p] from explicit even moments, odd moments zero
    return sum(c * even[k // 2] for k, c in enumerate(p.coeffs) if k % 2 == 0)


def _discrete_measure(atoms):
    # symmetric atoms +-a with weight w each; returns mu_0, mu_2, ...
    def even(n):
        return sum(2 * w * a ** (2 * n) for a, w in atoms)
    return even


# ----------------------------------------------------------------
# published tables


def test_p_table_exact():
    sys = hankel.build_system(Convention.FACTORIAL_SQUARED, 6)
    assert list(sys.polys) == [poly_from_dict(t) for t in P_TABLE]


def test_q_table_exact_to_degree_5():
    sys = hankel.build_system(Convention.SHIFTED_FACTORIAL_SQUARED, 6)
    assert list(sys.polys[:6]) == [poly_from_dict(t) for t in Q_TABLE[:6]]
    assert sys.polys[6] != poly_from_dict(Q_TABLE[6])


def test_norm_constants():
    sys = hankel.build_system(Convention.FACTORIAL_SQUARED, 6)
    for n, v in XI_TABLE.items():
        assert hankel.norm_xi(sys, n) == v


def test_half_line_polys():
    sys = hankel.build_system(Convention.FACTORIAL_SQUARED, 6)
    for n, (rad, terms) in enumerate(V_TABLE, start=1):
        assert hankel.half_line_poly(sys, n).matches_scaled(rad, poly_from_dict(terms))
    assert not hankel.half_line_poly(sys, 1).matches_scaled(F(1, 2), poly_from_dict(V_TABLE[0][1]))


def test_kernel_identity():
    assert all(r.holds for r in hankel.kernel_identity_check(5))


# ----------------------------------------------------------------
# construction


@pytest.mark.parametrize("spec", [
    SequenceSpec(Convention.FACTORIAL_SQUARED),
    SequenceSpec(Convention.SHIFTED_FACTORIAL_SQUARED),
    SequenceSpec(Convention.GENERALIZED, F(5, 2)),
])
def test_orthogonality_brute_force(spec):
    n_max = 8
    mu = moments_for(spec, n_max)
    even = [mu.moment(2 * k) for k in range(n_max + 1)]
    sys = hankel.monic_ops(mu, n_max)
    for n, p in enumerate(sys.polys):
        assert p.is_monic() and p.degree == n
        for m in range(n):
            assert _functional(even, (p * sys.polys[m])) == 0
        assert _functional(even, p * p) == sys.xi[n]


def test_determinant_route_agrees():
    mu = moments_for(SequenceSpec(Convention.GENERALIZED, 3), 6)
    sys = hankel.monic_ops(mu, 6, certify=False)
    for n in range(7):
        assert hankel.monic_by_determinant(mu, n) == sys.polys[n]
    assert hankel.hankel_determinant(mu, 0) == 1


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.fractions(F(1, 4), 5, max_denominator=8),
                          st.fractions(F(1, 10), 3, max_denominator=10)),
                min_size=3, max_size=5, unique_by=lambda t: t[0]))
def test_discrete_measure_orthogonality(atoms):
    # 2m support points carry OPs up to degree 2m - 1
    n_max = 2 * len(atoms) - 1
    even = _discrete_measure(atoms)
    mu = custom_moments([even(k) for k in range(n_max + 1)])
    sys = hankel.monic_ops(mu, n_max, certify=False)
    for n in range(n_max + 1):
        for m in range(n):
            s = sum(w * (sys.polys[n](a) * sys.polys[m](a) + sys.polys[n](-a) * sys.polys[m](-a))
                    for a, w in atoms)
            assert s == 0


@settings(max_examples=30, deadline=None)
@given(st.fractions(F(1, 50), 1000, max_denominator=50), st.integers(1, 7))
def test_scale_invariance(c, n_max):
    mu = moments_for(SequenceSpec(Convention.GENERALIZED, F(3, 2)), n_max)
    a = hankel.monic_ops(mu, n_max, certify=False)
    b = hankel.monic_ops(mu.scaled(c), n_max, certify=False)
    assert a.polys == b.polys
    assert all(y == c * x for x, y in zip(a.xi, b.xi))


def test_positivity_failure():
    with pytest.raises(MomentPositivityError) as exc:
        hankel.monic_ops(custom_moments([1, 1, 1]), 2)
    assert exc.value.n == 2


def test_domain_errors():
    mu = custom_moments([1, 1, 2])
    with pytest.raises(DomainError):
        hankel.monic_ops(mu, 5)
    with pytest.raises(DomainError):
        hankel.monic_ops(mu, -1)
    sys = hankel.monic_ops(mu, 2)
    with pytest.raises(IndexError):
        hankel.norm_xi(sys, 3)


def test_json_round_trip():
    sys = hankel.build_system(Convention.SHIFTED_FACTORIAL_SQUARED, 5)
    back = hankel.system_from_dict(sys.to_dict())
    assert back["polys"] == list(sys.polys)
    assert back["xi"] == list(sys.xi)
    assert back["convention"] == "shifted-factorial-squared"


# ----------------------------------------------------------------
# recurrence coefficients


def test_recurrence_A_first_values():
    sys = hankel.build_system(Convention.FACTORIAL_SQUARED, 4)
    assert hankel.recurrence_A(sys, 1)[0] == 1
    assert hankel.recurrence_A(sys, 2)[0] == 3
    assert hankel.recurrence_A(sys, 3)[0] == F(20, 3)
    with pytest.raises(IndexError):
        hankel.recurrence_A(sys, 0)


def test_recurrence_trend_window():
    rows = hankel.recurrence_trend(48)
    window = [r for r in rows if r.n >= 8]
    assert all(0.70 <= r.ratio <= 0.90 for r in window)
    means = hankel.pair_means([r.deviation for r in window])
    assert all(b < a for a, b in zip(means, means[1:]))
    assert abs(rows[-1].ratio - math.pi / 4) < abs(rows[-1].ratio - math.pi / 16)


def test_pair_means():
    assert hankel.pair_means([1.0, 3.0, 5.0]) == [2.0, 4.0]


def test_dp_weight():
    assert hankel.dp_weight(1.0, 1) == pytest.approx(math.exp(-1))
    assert hankel.dp_weight(0.25, 2) == pytest.approx(2 * 0.42102443824070833334, rel=1e-14)
    with pytest.raises(OutOfScopeError):
        hankel.dp_weight(1.0, 3)
    with pytest.raises(DomainError):
        hankel.dp_weight(0.0, 2)
