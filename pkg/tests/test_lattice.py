from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import eighth_root_index, is_characteristic as oracle_characteristic, lattice_gauss_sum, numpy_signature
from quadra.lattice import (
    E8_GRAM,
    CharacteristicError,
    IntegralLattice,
    characteristic_difference,
    characteristic_vector,
    discriminant_data,
    discriminant_form,
    gauss_sum,
    is_characteristic,
    kappa_4k_lattice,
    milgram_check,
    quadratic_refinement,
    refinement_defect,
    van_der_blij_check,
)


@st.composite
def lattices(draw, max_rank=3, max_entry=4, max_det=40):
    n = draw(st.integers(1, max_rank))
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = draw(st.integers(-max_entry, max_entry))
    import numpy as np

    d = abs(round(np.linalg.det(np.array(rows, dtype=float))))
    if d == 0 or d > max_det:
        from hypothesis import reject

        reject()
    return rows


def test_rejects_bad_gram():
    with pytest.raises(ValueError):
        IntegralLattice([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        IntegralLattice([[1, 1], [1, 1]])


def test_e8_basics():
    L = IntegralLattice.e8()
    assert L.det == 1 and L.signature == 8 and L.is_even
    lam = characteristic_vector(L)
    assert lam.coords == (0,) * 8
    assert kappa_4k_lattice(L, lam) == -1
    assert discriminant_form(L, lam).orders == ()
    assert gauss_sum(discriminant_form(L, lam)).k == 0


@pytest.mark.parametrize(
    "gram, lam, k, q",
    [
        ([[2]], (0,), 7, (Fraction(1, 4),)),
        ([[3]], (1,), 2, (Fraction(2, 3),)),
        ([[1]], (1,), 0, ()),
        ([[-2]], (0,), 1, (Fraction(3, 4),)),
    ],
)
def test_rank_one_golden_values(gram, lam, k, q):
    L = IntegralLattice(gram)
    data = discriminant_data(L, lam)
    assert data.q_values == q
    assert gauss_sum(data.form).k == k
    assert eighth_root_index(lattice_gauss_sum(gram, lam)) == k


def test_characteristic_vector_is_smallest_binary_solution():
    L = IntegralLattice([[1, 0], [0, 1]])
    assert characteristic_vector(L).coords == (1, 1)
    U = IntegralLattice([[0, 1], [1, 0]])
    assert characteristic_vector(U).coords == (0, 0)
    with pytest.raises(CharacteristicError):
        kappa_4k_lattice(L, (1, 0))


@settings(max_examples=80, deadline=None)
@given(lattices())
def test_milgram_against_brute_force_oracle(rows):
    L = IntegralLattice(rows)
    lam = characteristic_vector(L).coords
    assert oracle_characteristic(rows, lam)
    assert L.signature == numpy_signature(rows)
    oracle = eighth_root_index(lattice_gauss_sum(rows, lam))
    assert gauss_sum(discriminant_form(L, lam)).k == oracle
    assert oracle == (L.pair(lam, lam) - numpy_signature(rows)) % 8
    assert milgram_check(L, lam)


@settings(max_examples=60, deadline=None)
@given(lattices(), st.lists(st.integers(-5, 5), min_size=3, max_size=3),
       st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_refinement_defect_is_bilinear_form(rows, x, y):
    L = IntegralLattice(rows)
    n = L.rank
    x, y = x[:n], y[:n]
    lam = characteristic_vector(L)
    qx = quadratic_refinement(L, lam, x)
    assert Fraction(qx).denominator == 1
    assert refinement_defect(L, lam, x, y) == L.pair(x, y)


@settings(max_examples=60, deadline=None)
@given(lattices(), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_characteristic_shift_and_difference(rows, shift):
    L = IntegralLattice(rows)
    lam = characteristic_vector(L).coords
    other = tuple(a + 2 * b for a, b in zip(lam, shift))
    assert is_characteristic(L, other)
    w = characteristic_difference(L, other, lam)
    assert tuple(w) == tuple(Fraction(b) for b in shift[: L.rank])
    assert milgram_check(L, other)


def test_van_der_blij_on_unimodular():
    for rows in ([[1, 0], [0, -1]], E8_GRAM, [[1]], [[2, 1], [1, 1]]):
        L = IntegralLattice(rows)
        r = van_der_blij_check(L, characteristic_vector(L))
        assert r.unimodular and r.holds


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2 ** 40))
def test_random_unimodular_lattices_are_unimodular(seed):
    from quadra.rng import SplitMix64
    from quadra.selftest import random_unimodular_lattice

    L = random_unimodular_lattice(SplitMix64(seed))
    assert abs(round(np.linalg.det(np.array(L.gram.tolist(), dtype=float)))) == 1
    lam = characteristic_vector(L)
    assert (L.pair(lam.coords, lam.coords) - numpy_signature(L.gram.tolist())) % 8 == 0
