from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from oracles import bivariate_product, delta_series, multiplicative_sequence_low, negate_variables
from quadra.series import (
    FormalSeries,
    PontryaginPolynomial,
    SeriesError,
    change_of_spin_identity,
    delta_cocycle_defect,
    delta_g,
    delta_symmetry_defect,
    exp_series,
    l_genus,
    l_series,
    log_series,
    mod4_square_check,
    multiplicative_sequence,
    series_sqrt,
    spin_wu_class,
    spin_wu_inverse_bundle,
    spin_wu_series,
    wu_line_series,
)

# frozen exact values of g and of the spin Wu classes
G_COEFFS = {0: 1, 2: Fraction(-1, 2), 4: Fraction(-9, 8), 6: Fraction(-17, 16)}
NU_SPIN = {
    1: {(1,): Fraction(-1, 2)},
    2: {(0, 1): Fraction(20, 8), (2, 0): Fraction(-9, 8)},
    3: {(0, 0, 1): Fraction(-80, 16), (1, 1, 0): Fraction(60, 16), (3, 0, 0): Fraction(-17, 16)},
}
NU_SPIN_MINUS_T = {
    1: {(1,): Fraction(1, 2)},
    2: {(0, 1): Fraction(-20, 8), (2, 0): Fraction(11, 8)},
    3: {(0, 0, 1): Fraction(80, 16), (1, 1, 0): Fraction(-100, 16), (3, 0, 0): Fraction(37, 16)},
}


def test_spin_wu_series_leading_coefficients():
    g = spin_wu_series(6)
    for n in range(7):
        assert g[n] == G_COEFFS.get(n, 0)


def test_spin_wu_series_against_sympy():
    x = sympy.Symbol("x")
    f = sum(x ** (2 ** n - 1) for n in range(5))
    ref = sympy.series(sympy.sqrt(f * f.subs(x, -x)), x, 0, 13).removeO()
    g = spin_wu_series(12)
    for n in range(13):
        assert g[n] == Fraction(str(ref.coeff(x, n)))


def test_printed_form_of_g():
    assert str(spin_wu_series(6)) == "1 - 1/2*x^2 - 9/8*x^4 - 17/16*x^6"


@pytest.mark.parametrize("k", [1, 2, 3])
def test_spin_wu_classes_match_tables(k):
    assert spin_wu_class(k) == PontryaginPolynomial(NU_SPIN[k])
    assert spin_wu_inverse_bundle(k) == PontryaginPolynomial(NU_SPIN_MINUS_T[k])


def test_printed_pontryagin_polynomials():
    assert str(spin_wu_class(1)) == "-p1/2"
    assert str(spin_wu_class(2)) == "(20*p2 - 9*p1^2)/8"
    assert str(spin_wu_class(3)) == "(-80*p3 + 60*p1*p2 - 17*p1^3)/16"
    assert str(l_genus(1)) == "p1/3"


def test_l_genus_classical_values():
    assert l_genus(1) == PontryaginPolynomial({(1,): Fraction(1, 3)})
    assert l_genus(2) == PontryaginPolynomial({(0, 1): Fraction(7, 45), (2, 0): Fraction(-1, 45)})
    assert l_genus(3) == PontryaginPolynomial(
        {(0, 0, 1): Fraction(62, 945), (1, 1, 0): Fraction(-13, 945), (3, 0, 0): Fraction(2, 945)})


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=3, max_size=3))
def test_multiplicative_sequence_against_power_sum_formula(h):
    coeffs = [1, 0, h[0], 0, h[1], 0, h[2]]
    s = FormalSeries(coeffs, 6)
    oracle = multiplicative_sequence_low(h)
    for k in (1, 2, 3):
        assert multiplicative_sequence(s, k) == PontryaginPolynomial(oracle[k - 1])


def test_inverse_bundle_is_multiplicative_inverse():
    g = spin_wu_series(6)
    inv = g.inverse()
    assert (g * inv) == FormalSeries.one(6)
    for k in (1, 2, 3):
        assert multiplicative_sequence(inv, k) == spin_wu_inverse_bundle(k)


def test_delta_g_is_integral_through_order_20():
    d = delta_g(20)
    assert d.is_integral()
    assert d.order == 20


def test_delta_g_matches_oracle_at_low_order():
    g = spin_wu_series(10)
    oracle = delta_series(list(g.coeffs), 10)
    got = {m: Fraction(c) for m, c in delta_g(10).terms.items() if c}
    assert got == oracle


def test_mod4_square_check_through_order_12():
    assert mod4_square_check(12)
    f = [1 if (n + 1) & n == 0 else 0 for n in range(9)]
    d = delta_series(f, 8)
    dn = negate_variables(d)
    lhs, rhs = bivariate_product(d, dn, 8), bivariate_product(d, d, 8)
    keys = set(lhs) | set(rhs)
    assert all((lhs.get(m, 0) - rhs.get(m, 0)) % 4 == 0 for m in keys)


@pytest.mark.parametrize("builder", [spin_wu_series, l_series, lambda n: wu_line_series(n)])
def test_delta_is_symmetric_cocycle(builder):
    s = builder(8)
    assert all(c == 0 for c in delta_symmetry_defect(s).terms.values())
    assert all(c == 0 for c in delta_cocycle_defect(s).terms.values())


def test_change_of_spin_identity():
    assert change_of_spin_identity(8)


def test_sqrt_log_exp_roundtrip():
    s = FormalSeries([1, 2, Fraction(1, 3), -1, 4], 8)
    r = series_sqrt(s)
    assert r * r == s
    assert exp_series(8).compose(log_series(s)) == s
    with pytest.raises(SeriesError):
        series_sqrt(FormalSeries([2, 1], 4))


def test_wu_line_series_mod_two():
    f = wu_line_series(16, modulus=2)
    assert [n for n in range(17) if f[n]] == [0, 1, 3, 7, 15]
