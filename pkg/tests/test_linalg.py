from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix as SymMatrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from quadra.linalg import (
    Matrix,
    cokernel_invariants,
    det,
    hermite_column_basis,
    integer_kernel,
    invariant_factors,
    inverse,
    nullspace,
    present_subquotient,
    rank,
    signature_of_symmetric,
    smith_normal_form,
    solve_integer,
    solve_rational,
)


def int_matrices(max_rows=5, max_cols=5, max_entry=20):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(
                st.lists(st.integers(-max_entry, max_entry), min_size=n, max_size=n),
                min_size=m, max_size=m,
            )
        )
    )


def sympy_divisors(rows):
    D = sympy_snf(SymMatrix(rows), domain=ZZ)
    out = [abs(int(D[i, i])) for i in range(min(D.shape))]
    return tuple(d for d in out if d)


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_smith_form_matches_sympy_and_transforms(rows):
    A = Matrix.from_rows(rows)
    snf = smith_normal_form(A)
    assert snf.U @ A @ snf.V == snf.D
    assert snf.U @ snf.U_inv == Matrix.identity(A.rows)
    assert snf.V @ snf.V_inv == Matrix.identity(A.cols)
    assert abs(det(snf.U)) == 1 and abs(det(snf.V)) == 1
    diag = snf.elementary_divisors
    assert all(d > 0 for d in diag)
    assert all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1))
    assert diag == sympy_divisors(rows)


@settings(max_examples=100, deadline=None)
@given(int_matrices(), st.lists(st.integers(-30, 30), min_size=5, max_size=5))
def test_solve_integer_sound_and_complete(rows, rhs):
    A = Matrix.from_rows(rows)
    b = rhs[: A.rows]
    x = solve_integer(A, b)
    # solvable iff U b is divisible by the diagonal and zero past the rank
    snf = smith_normal_form(A)
    c = snf.U.apply(b)
    diag = snf.diagonal
    solvable = all(
        (c[i] % diag[i] == 0) if i < len(diag) and diag[i] else c[i] == 0
        for i in range(A.rows)
    )
    if x is None:
        assert not solvable
    else:
        assert tuple(A.apply(x)) == tuple(b)
        assert solvable


@settings(max_examples=100, deadline=None)
@given(int_matrices())
def test_integer_kernel_is_saturated_basis(rows):
    A = Matrix.from_rows(rows)
    K = integer_kernel(A)
    assert len(K) == A.cols - rank(A)
    for v in K:
        assert all(x == 0 for x in A.apply(v))
    if K:
        # a saturated sublattice has trivial cokernel torsion
        inv = cokernel_invariants(Matrix.from_columns(K, rows=A.cols))
        assert inv.torsion == ()


def test_small_smith_examples():
    assert invariant_factors(Matrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])) == (2, 6, 12)
    assert invariant_factors(Matrix.from_rows([[0, 0], [0, 0]])) == ()
    inv = cokernel_invariants(Matrix.from_rows([[2, 0], [0, 3], [0, 0]]))
    assert inv.torsion == (6,) and inv.free_rank == 1


def test_rational_routines():
    A = Matrix.from_rows([[1, 2], [3, 4]])
    assert det(A) == -2
    assert inverse(A) @ A == Matrix.identity(2)
    assert inverse(A)[0, 0] == -2 and inverse(A)[1, 0] == Fraction(3, 2)
    x = solve_rational(A, [1, 1])
    assert tuple(A.apply(x)) == (1, 1)
    N = nullspace(Matrix.from_rows([[1, 1, 1]]))
    assert len(N) == 2
    assert solve_rational(Matrix.from_rows([[1, 1], [1, 1]]), [0, 1]) is None


def test_signature_of_symmetric():
    assert signature_of_symmetric(Matrix.from_rows([[0, 1], [1, 0]])) == (1, 1, 0)
    assert signature_of_symmetric(Matrix.from_rows([[2, -1], [-1, 2]])) == (2, 0, 0)
    assert signature_of_symmetric(Matrix.from_rows([[1, 1], [1, 1]])) == (1, 0, 1)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=1, max_size=5))
def test_hermite_basis_spans_same_lattice(gens):
    B = hermite_column_basis(gens, 3)
    for g in gens:
        assert solve_integer(Matrix.from_columns(B, rows=3), g) is not None if B else not any(g)
    for b in B:
        assert solve_integer(Matrix.from_columns(gens, rows=3), b) is not None


def test_present_subquotient_z_mod_2z():
    P = present_subquotient([(1,)], [(2,)], 1)
    assert P.orders == (2,)
    assert P.coordinates((3,)) == (1,)
    assert P.coordinates((4,)) == (0,)


def test_present_subquotient_rejects_outside_span():
    P = present_subquotient([(2, 0)], [(4, 0)], 2)
    assert P.invariants.torsion == (2,)
    assert P.coordinates((1, 0)) is None
    assert P.coordinates((0, 2)) is None


@pytest.mark.parametrize("rows", [[[1, 2], [3, 4]], [[0, 1], [1, 0]], [[2, 1], [1, 1]]])
def test_det_matches_numpy(rows):
    import numpy as np

    assert det(Matrix.from_rows(rows)) == round(np.linalg.det(np.array(rows, dtype=float)))
