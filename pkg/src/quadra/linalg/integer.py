"""Integer linear algebra: Smith and Hermite forms, Diophantine solves, lattices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .matrix import Matrix


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with U, V unimodular and D in Smith form.

    ``U_inv`` and ``V_inv`` are the exact inverses, tracked during the
    reduction so that kernel coordinates can be read off without a solve.
    """

    U: Matrix
    D: Matrix
    V: Matrix
    U_inv: Matrix
    V_inv: Matrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return self.D.diagonal_entries()

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def elementary_divisors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d != 0)


def smith_normal_form(A: Matrix) -> SmithDecomposition:
    """Smith normal form by classical elimination.

    Pivot rule: the nonzero entry of smallest absolute value in the active
    submatrix, ties broken by first occurrence in row-major order.
    """
    m, n = A.shape
    D = A.tolist()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for r in Ui:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        if not k:
            return
        rd, rs = D[dst], D[src]
        for c in range(n):
            if rs[c]:
                rd[c] += k * rs[c]
        ud, us = U[dst], U[src]
        for c in range(m):
            if us[c]:
                ud[c] += k * us[c]
        for r in Ui:
            if r[dst]:
                r[src] -= k * r[dst]

    def add_col(dst, src, k):
        # col_dst += k * col_src
        if not k:
            return
        for r in D:
            if r[src]:
                r[dst] += k * r[src]
        for r in V:
            if r[src]:
                r[dst] += k * r[src]
        vd, vs = Vi[dst], Vi[src]
        for c in range(n):
            if vd[c]:
                vs[c] -= k * vd[c]

    def negate_row(i):
        D[i] = [-x for x in D[i]]
        U[i] = [-x for x in U[i]]
        for r in Ui:
            r[i] = -r[i]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = D[i]
                for j in range(t, n):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    dirty = dirty or D[t][j] != 0
            if dirty:
                continue
            bad = None if abs(p) == 1 else next(
                (i for i in range(t + 1, m) if any(D[i][j] % p for j in range(t + 1, n))), None)
            if bad is not None:
                add_row(t, bad, 1)
                continue
            if p < 0:
                negate_row(t)
            break
        if best is None:
            break

    return SmithDecomposition(Matrix(m, m, U), Matrix(m, n, D), Matrix(n, n, V),
                              Matrix(m, m, Ui), Matrix(n, n, Vi))


def invariant_factors(A: Matrix) -> tuple[int, ...]:
    return smith_normal_form(A).elementary_divisors


def hermite_column_basis(generators: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Basis of the lattice spanned by ``generators`` in Z^dim, in column Hermite form.

    The returned vectors are in echelon form: vector k has its leading
    nonzero (positive) entry at a strictly later coordinate than vector k-1.
    """
    rows = [list(g) for g in generators if any(g)]
    basis = []
    col = 0
    while rows and col < dim:
        nz = [r for r in rows if r[col]]
        zero = [r for r in rows if not r[col]]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            nxt = [piv]
            for r in nz[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                (nxt if r[col] else zero).append(r)
            nz = nxt
        if nz:
            piv = nz[0]
            if piv[col] < 0:
                piv = [-a for a in piv]
            basis.append(piv)
        rows = [r for r in zero if any(r)]
        col += 1
    # reduce entries above pivots
    for k in range(len(basis)):
        lead = next(i for i, a in enumerate(basis[k]) if a)
        for j in range(k):
            q = basis[j][lead] // basis[k][lead]
            if q:
                basis[j] = [a - q * b for a, b in zip(basis[j], basis[k])]
    return [tuple(b) for b in basis]


def integer_kernel(A: Matrix) -> list[tuple[int, ...]]:
    """Z-basis of {x in Z^n : A x = 0}."""
    snf = smith_normal_form(A)
    r = snf.rank
    return [snf.V.column(j) for j in range(r, A.cols)]


def solve_integer(A: Matrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """Return an integer x with A x = b, or None when no integer solution exists."""
    if len(b) != A.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {A.rows}")
    snf = smith_normal_form(A)
    c = snf.U.apply(b)
    y = [0] * A.cols
    for i, d in enumerate(snf.diagonal):
        if d == 0:
            break
        if c[i] % d:
            return None
        y[i] = c[i] // d
    if any(c[i] for i in range(snf.rank, A.rows)):
        return None
    x = snf.V.apply(y)
    assert A.apply(x) == tuple(b)
    return x


def solve_mixed(K: Matrix, v: Sequence) -> tuple[Fraction, ...] | None:
    """Find rational t with ``v + K t`` integral, or None.

    ``K`` is an integer matrix; ``v`` a rational vector. This is the
    membership test v in Z^m + im_Q(K).
    """
    if len(v) != K.rows:
        raise ValueError("dimension mismatch")
    snf = smith_normal_form(K)
    w = snf.U.apply([Fraction(x) for x in v])
    s = [Fraction(0)] * K.cols
    for i, d in enumerate(snf.diagonal):
        if d == 0:
            break
        s[i] = -Fraction(w[i]) / d
    for i in range(snf.rank, K.rows):
        if Fraction(w[i]).denominator != 1:
            return None
    t = snf.V.apply(s)
    t = tuple(Fraction(x) for x in t)
    out = [Fraction(a) + b for a, b in zip(v, K.apply(t))]
    assert all(x.denominator == 1 for x in out)
    return t


def lattice_index(basis: Sequence[Sequence[int]], dim: int) -> int:
    """Index of a full-rank sublattice of Z^dim given by a basis (0 if not full rank)."""
    from .matrix import det

    if len(basis) != dim:
        return 0
    return abs(det(Matrix.from_columns(basis, rows=dim))) if dim else 1


def common_denominator(values) -> int:
    d = 1
    for x in values:
        d = lcm(d, Fraction(x).denominator)
    return d


def vector_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g
