"""Linear algebra over Q with ``Fraction`` entries."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .matrix import Matrix


def rref(A: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = [[Fraction(x) for x in A.row(i)] for i in range(A.rows)]
    pivots = []
    r = 0
    for c in range(A.cols):
        p = next((i for i in range(r, A.rows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(A.rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == A.rows:
            break
    return M, pivots


def rank(A: Matrix) -> int:
    return len(rref(A)[1])


def nullspace(A: Matrix) -> list[tuple[Fraction, ...]]:
    """Basis of {x : A x = 0} over Q."""
    M, pivots = rref(A)
    free = [c for c in range(A.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * A.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -M[r][f]
        basis.append(tuple(v))
    return basis


def solve_rational(A: Matrix, b: Sequence) -> tuple[Fraction, ...] | None:
    """One rational solution of A x = b, or None if inconsistent."""
    if len(b) != A.rows:
        raise ValueError("dimension mismatch")
    aug = A.hstack(Matrix(A.rows, 1, [[x] for x in b]))
    M, pivots = rref(aug)
    if A.cols in pivots:
        return None
    x = [Fraction(0)] * A.cols
    for r, p in enumerate(pivots):
        x[p] = M[r][A.cols]
    return tuple(x)


def inverse(A: Matrix) -> Matrix:
    if not A.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = A.rows
    M, pivots = rref(A.hstack(Matrix.identity(n)))
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return Matrix(n, n, [row[n:] for row in M])


def signature_of_symmetric(G: Matrix) -> tuple[int, int, int]:
    """Sylvester inertia ``(n_plus, n_minus, n_zero)`` of a symmetric matrix.

    Lagrange reduction by congruence: a nonzero diagonal pivot is split off
    as a rank-one square; when the remaining diagonal vanishes but an
    off-diagonal entry b_ij does not, the hyperbolic pair is split off as
    one positive and one negative square.
    """
    if not G.is_symmetric():
        raise ValueError("signature requires a symmetric matrix")
    M = [[Fraction(x) for x in G.row(i)] for i in range(G.rows)]
    idx = list(range(G.rows))
    pos = neg = 0
    while idx:
        k = next((i for i in idx if M[i][i] != 0), None)
        if k is not None:
            a = M[k][k]
            pos, neg = (pos + 1, neg) if a > 0 else (pos, neg + 1)
            rest = [i for i in idx if i != k]
            for i in rest:
                for j in rest:
                    M[i][j] -= M[i][k] * M[k][j] / a
            idx = rest
            continue
        pair = next(((i, j) for i in idx for j in idx if i < j and M[i][j] != 0), None)
        if pair is None:
            break  # remaining block is zero: radical
        i, j = pair
        # q restricted to span(e_i, e_j) is 2b xy = hyperbolic: one +, one -
        pos += 1
        neg += 1
        b = M[i][j]
        rest = [r for r in idx if r not in (i, j)]
        # Schur complement of the 2x2 block [[0, b], [b, 0]], inverse [[0, 1/b], [1/b, 0]]
        for r in rest:
            for s in rest:
                M[r][s] -= (M[r][i] * M[j][s] + M[r][j] * M[i][s]) / b
        idx = rest
    return pos, neg, G.rows - pos - neg
