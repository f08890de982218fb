"""Quadratic functions on finite abelian groups and their Gauss sums."""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .linalg import FiniteAbelianGroup, Matrix, hermite_column_basis, integer_kernel, smith_normal_form
from .linalg.abelian import invariants_from_orders, relation_vectors
from .linalg.integer import common_denominator, solve_integer

RESIDUAL_TOLERANCE = 1e-6


class DegenerateFormError(ValueError):
    """The bilinear form of a finite quadratic form has a nonzero radical."""


class NotIsotropicError(ValueError):
    """q does not vanish on the proposed subgroup."""


def frac_mod1(x) -> Fraction:
    x = Fraction(x)
    return x - math.floor(x)


@dataclass(frozen=True)
class EighthRootValue:
    """A Gauss sum classified as exp(2 pi i k / 8)."""

    k: int
    residual: float
    value: complex
    error_bound: float = 0.0

    def __post_init__(self):
        if self.residual >= RESIDUAL_TOLERANCE:
            raise ValueError(f"value {self.value} is not within {RESIDUAL_TOLERANCE} "
                             f"of an eighth root of unity (residual {self.residual:.3g})")


class FiniteQuadraticForm:
    """q(x) = x^T Q x mod 1 on Z/n_1 + ... + Z/n_k.

    ``orders`` need not form a divisibility chain; ``group`` reports the
    invariant-factor normal form.
    """

    def __init__(self, orders: Sequence[int], coeffs: Sequence[Sequence]):
        orders = tuple(int(n) for n in orders)
        if any(n < 1 for n in orders):
            raise ValueError(f"generator orders must be positive, got {orders}")
        Q = Matrix(len(orders), len(orders), coeffs) if orders else Matrix.zeros(0, 0)
        if not Q.is_symmetric():
            raise ValueError("coefficient matrix must be symmetric")
        for i, n in enumerate(orders):
            if Fraction(n * n * Q[i, i]).denominator != 1:
                raise ValueError(f"q is not well defined: {n}^2 * Q[{i},{i}] = {n * n * Q[i, i]} is not integral")
            for j in range(len(orders)):
                if Fraction(2 * n * Q[i, j]).denominator != 1:
                    raise ValueError(f"q is not well defined: 2*{n}*Q[{i},{j}] = {2 * n * Q[i, j]} is not integral")
        # canonical coefficients: diagonal mod 1, off-diagonal mod 1/2
        k = len(orders)
        canon = [[frac_mod1(Q[i, i]) if i == j else frac_mod1(2 * Q[i, j]) / 2 for j in range(k)]
                 for i in range(k)]
        self.orders = orders
        self.Q = Matrix(k, k, canon) if k else Q

    @property
    def group(self) -> FiniteAbelianGroup:
        return FiniteAbelianGroup(invariants_from_orders(self.orders).torsion)

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    def __repr__(self) -> str:
        return f"FiniteQuadraticForm(orders={self.orders}, coeffs={[[str(x) for x in r] for r in self.Q.tolist()]})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteQuadraticForm) and (self.orders, self.Q) == (other.orders, other.Q)

    def __hash__(self):
        return hash((self.orders, self.Q))

    def elements(self):
        return itertools.product(*(range(n) for n in self.orders))

    def __call__(self, x: Sequence[int]) -> Fraction:
        k = len(self.orders)
        total = Fraction(0)
        for i in range(k):
            if x[i]:
                total += self.Q[i, i] * x[i] * x[i]
                for j in range(i + 1, k):
                    if x[j]:
                        total += 2 * self.Q[i, j] * x[i] * x[j]
        return frac_mod1(total)

    def bilinear(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        """B(x, y) = q(x+y) - q(x) - q(y) mod 1."""
        s = [a + b for a, b in zip(x, y)]
        return frac_mod1(self(s) - self(x) - self(y))

    def radical_lattice(self) -> list[tuple[int, ...]]:
        """Basis of {x in Z^k : B(x, e_j) = 0 for all j}; contains the relation lattice."""
        k = len(self.orders)
        return _annihilator_lattice(self.Q, [tuple(int(i == j) for i in range(k)) for j in range(k)], k)

    def is_nondegenerate(self) -> bool:
        k = len(self.orders)
        if k == 0:
            return True
        rad = self.radical_lattice()
        rel = relation_vectors(self.orders)
        return hermite_column_basis(rad, k) == hermite_column_basis(rel, k)


def bilinear(qf: FiniteQuadraticForm, x, y) -> Fraction:
    return qf.bilinear(x, y)


def is_nondegenerate(qf: FiniteQuadraticForm) -> bool:
    return qf.is_nondegenerate()


def _annihilator_lattice(Q: Matrix, gens: Sequence[Sequence[int]], k: int) -> list[tuple[int, ...]]:
    """Integer basis of {x : 2 x^T Q g in Z for every g in gens}."""
    rows = []
    for g in gens:
        w = Q.apply(g)
        rows.append([2 * Fraction(a) for a in w])
    if not rows:
        return hermite_column_basis([tuple(int(i == j) for i in range(k)) for j in range(k)], k)
    D = common_denominator(x for r in rows for x in r)
    W = Matrix(len(rows), k, [[int(x * D) for x in r] for r in rows])
    big = W.hstack(Matrix.identity(len(rows)).scale(D))
    gens_x = [v[:k] for v in integer_kernel(big)]
    return hermite_column_basis(gens_x, k)


# -- Gauss sums ---------------------------------------------------------------

def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def primary_parts(qf: FiniteQuadraticForm) -> dict[int, FiniteQuadraticForm]:
    """Orthogonal splitting A = sum_p A_p into p-primary components."""
    primes = sorted({p for n in qf.orders for p in _prime_factors(n)})
    parts = {}
    for p in primes:
        idx, scale, orders = [], [], []
        for i, n in enumerate(qf.orders):
            a = 0
            while n % p == 0:
                n //= p
                a += 1
            if a:
                idx.append(i)
                scale.append(n)
                orders.append(p ** a)
        Qp = [[qf.Q[i, j] * si * sj for j, sj in zip(idx, scale)] for i, si in zip(idx, scale)]
        parts[p] = FiniteQuadraticForm(orders, Qp)
    return parts


_CHUNK = 1 << 20


def _raw_sum(qf: FiniteQuadraticForm) -> complex:
    """Sum of exp(-2 pi i q(x)) over all x, by vectorized enumeration."""
    k = len(qf.orders)
    if k == 0:
        return complex(1.0)
    D = common_denominator(x for r in qf.Q.tolist() for x in r)
    coef = {}
    for i in range(k):
        for j in range(i, k):
            c = qf.Q[i, j] * D * (1 if i == j else 2)
            c = int(c) % D
            if c:
                coef[(i, j)] = c
    total = 0j
    N = qf.order
    big = D > 3 * 10 ** 9 or max(qf.orders) > 3 * 10 ** 9
    strides = [math.prod(qf.orders[i + 1:]) for i in range(k)]
    for start in range(0, N, _CHUNK):
        idx = np.arange(start, min(N, start + _CHUNK), dtype=np.int64)
        xs = [(idx // s) % n for s, n in zip(strides, qf.orders)]
        if big:
            xs = [x.astype(object) for x in xs]
        acc = np.zeros(len(idx), dtype=object if big else np.int64)
        for (i, j), c in coef.items():
            acc = (acc + ((xs[i] * xs[j]) % D) * c) % D
        phase = acc.astype(np.float64) / D if not big else np.array([float(Fraction(int(a), D)) for a in acc])
        total += np.exp(-2j * np.pi * phase).sum()
    return complex(total)


def gauss_sum(qf: FiniteQuadraticForm, method: str = "primary") -> EighthRootValue:
    """Normalized Gauss sum (1/sqrt|A|) sum_x exp(-2 pi i q(x)), snapped to an eighth root.

    ``method="primary"`` multiplies the sums of the p-primary components
    (an orthogonal splitting, so the product is exact); ``"direct"``
    enumerates the whole group.
    """
    if not qf.is_nondegenerate():
        raise DegenerateFormError("Gauss sum of a degenerate form")
    if method == "direct":
        parts = [qf]
    elif method == "primary":
        parts = list(primary_parts(qf).values())
    else:
        raise ValueError(f"unknown method {method!r}")
    value = complex(1.0)
    bound = 0.0
    for part in parts:
        n = part.order
        value *= _raw_sum(part) / math.sqrt(n)
        # per-term rounding of exp and the phase, pairwise summation
        bound += 8 * n * np.finfo(float).eps / math.sqrt(n)
    if abs(abs(value) - 1) >= RESIDUAL_TOLERANCE:
        raise DegenerateFormError(f"|Gauss sum| = {abs(value)} is not 1")
    k = round(cmath.phase(value) * 4 / math.pi) % 8
    residual = abs(value - cmath.exp(2j * math.pi * k / 8))
    return EighthRootValue(k, residual, value, bound)


# -- isotropic reduction ------------------------------------------------------

def isotropic_reduce(qf: FiniteQuadraticForm, subgroup: Sequence[Sequence[int]]) -> FiniteQuadraticForm:
    """The induced form on A0*/A0 for an isotropic subgroup A0 given by generators."""
    gens = [tuple(int(a) for a in g) for g in subgroup]
    for g in gens:
        if qf(g) != 0:
            raise NotIsotropicError(f"q({list(g)}) = {qf(g)} is not 0")
    for g, h in itertools.combinations(gens, 2):
        if qf.bilinear(g, h) != 0:
            raise NotIsotropicError(f"B({list(g)}, {list(h)}) = {qf.bilinear(g, h)} is not 0")
    k = len(qf.orders)
    if k == 0:
        return qf
    rel = relation_vectors(qf.orders)
    dual = _annihilator_lattice(qf.Q, gens, k) if gens else hermite_column_basis(
        [tuple(int(i == j) for i in range(k)) for j in range(k)], k)
    BH = Matrix.from_columns(dual, rows=k)
    L0 = hermite_column_basis(list(gens) + rel, k)
    coords = [solve_integer(BH, v) for v in L0]
    if any(c is None for c in coords):
        raise NotIsotropicError("subgroup is not contained in its annihilator")
    M = Matrix.from_columns(coords, rows=k)
    snf = smith_normal_form(M)
    F = BH @ snf.U_inv
    keep = [i for i, s in enumerate(snf.diagonal) if s > 1]
    cols = [F.column(i) for i in keep]
    orders = [snf.diagonal[i] for i in keep]
    Qn = [[sum(Fraction(a) * qf.Q[r, c] * b for r, a in enumerate(u) for c, b in enumerate(v))
           for v in cols] for u in cols]
    return FiniteQuadraticForm(orders, Qn)


def subgroup_elements(qf: FiniteQuadraticForm, subgroup: Sequence[Sequence[int]]) -> set[tuple[int, ...]]:
    """All elements of the subgroup generated by ``subgroup`` (by closure)."""
    zero = tuple(0 for _ in qf.orders)
    seen = {zero}
    frontier = [zero]
    gens = [tuple(a % n for a, n in zip(g, qf.orders)) for g in subgroup]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple((a + b) % n for a, b, n in zip(x, g, qf.orders))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen
