from fractions import Fraction
from math import gcd

import pytest
from hypothesis import assume, given, settings, strategies as st

from oracles import eighth_root_index, finite_gauss_sum
from quadra.finite_quadratic import (
    DegenerateFormError,
    FiniteQuadraticForm,
    NotIsotropicError,
    gauss_sum,
    isotropic_reduce,
    primary_parts,
)


@st.composite
def forms(draw, max_gens=3, max_order=12):
    """Well-defined forms: Q_ii in (1/2n)Z with n^2 Q_ii integral, Q_ij in (1/2gcd)Z."""
    k = draw(st.integers(1, max_gens))
    orders = [draw(st.integers(2, max_order)) for _ in range(k)]
    Q = [[Fraction(0)] * k for _ in range(k)]
    for i, n in enumerate(orders):
        a = draw(st.integers(0, 2 * n - 1))
        if n % 2:
            a = 2 * (a // 2)
        Q[i][i] = Fraction(a, 2 * n)
        for j in range(i + 1, k):
            g = gcd(n, orders[j])
            Q[i][j] = Q[j][i] = Fraction(draw(st.integers(0, 2 * g - 1)), 2 * g)
    return FiniteQuadraticForm(orders, Q)


def test_well_definedness_is_enforced():
    with pytest.raises(ValueError):
        FiniteQuadraticForm([2], [[Fraction(1, 8)]])
    FiniteQuadraticForm([2], [[Fraction(1, 4)]])


def test_evaluation_and_bilinear():
    qf = FiniteQuadraticForm([4, 4], [[0, Fraction(1, 8)], [Fraction(1, 8), 0]])
    assert qf((1, 1)) == Fraction(1, 4)
    assert qf.bilinear((1, 0), (0, 1)) == Fraction(1, 4)
    assert qf.is_nondegenerate()
    # doubling the off-diagonal makes (2, 0) radical
    assert not FiniteQuadraticForm([4, 4], [[0, Fraction(1, 4)], [Fraction(1, 4), 0]]).is_nondegenerate()


@settings(max_examples=120, deadline=None)
@given(forms())
def test_gauss_sum_primary_and_direct_agree_with_oracle(qf):
    assume(qf.is_nondegenerate())
    oracle = finite_gauss_sum(qf.orders, qf.Q.tolist())
    k = eighth_root_index(oracle)
    assert gauss_sum(qf, "primary").k == k
    direct = gauss_sum(qf, "direct")
    assert direct.k == k
    assert direct.residual < 1e-6
    assert abs(direct.value - oracle) < 1e-9


@settings(max_examples=60, deadline=None)
@given(forms())
def test_degenerate_forms_are_rejected(qf):
    assume(not qf.is_nondegenerate())
    with pytest.raises(DegenerateFormError):
        gauss_sum(qf)


def test_primary_parts_split_orders():
    qf = FiniteQuadraticForm([6], [[Fraction(1, 12)]])
    parts = primary_parts(qf)
    assert sorted(parts) == [2, 3]
    assert parts[2].orders == (2,) and parts[3].orders == (3,)
    assert gauss_sum(qf).k == eighth_root_index(finite_gauss_sum([6], [[Fraction(1, 12)]]))


def test_isotropic_reduction_preserves_gauss_sum():
    # Z/4 with q(x) = x^2/8 has isotropic subgroup {0, 2}? q(2) = 1/2, not isotropic
    qf = FiniteQuadraticForm([4], [[Fraction(1, 8)]])
    with pytest.raises(NotIsotropicError):
        isotropic_reduce(qf, [(2,)])
    # Z/9 with q(x) = x^2/9: q(3) = 0, reduction to the trivial group
    qf = FiniteQuadraticForm([9], [[Fraction(1, 9)]])
    red = isotropic_reduce(qf, [(3,)])
    assert red.order == 1
    assert gauss_sum(qf).k == gauss_sum(red).k
    # hyperbolic plane on Z/4 + Z/4
    H = FiniteQuadraticForm([4, 4], [[0, Fraction(1, 8)], [Fraction(1, 8), 0]])
    red = isotropic_reduce(H, [(2, 0)])
    assert red.order == 4
    assert gauss_sum(H).k == gauss_sum(red).k == 0
