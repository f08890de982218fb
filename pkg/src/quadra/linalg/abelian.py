"""Finitely generated abelian groups given by cyclic decompositions.

A group is described by generator orders ``(n_1, ..., n_k)`` with
``n_i = 0`` meaning an infinite cyclic factor. Elements are integer
tuples; subgroups are represented by generating sets of integer vectors,
always read modulo the relation lattice spanned by ``n_i e_i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod
from typing import Iterator, Sequence

from .integer import hermite_column_basis, integer_kernel, smith_normal_form, solve_integer
from .matrix import Matrix


@dataclass(frozen=True)
class AbelianInvariants:
    """Isomorphism type: torsion invariant factors d_1 | d_2 | ... plus free rank."""

    torsion: tuple[int, ...] = ()
    free_rank: int = 0

    @property
    def torsion_order(self) -> int:
        return prod(self.torsion)

    def is_trivial(self) -> bool:
        return not self.torsion and self.free_rank == 0

    def __add__(self, other: "AbelianInvariants") -> "AbelianInvariants":
        return invariants_from_orders(self.orders() + other.orders())

    def orders(self) -> tuple[int, ...]:
        return self.torsion + (0,) * self.free_rank

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z/n_1 + ... + Z/n_k with n_1 | n_2 | ... | n_k, each n_i >= 2."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        inv = tuple(int(n) for n in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", inv)
        if any(n < 2 for n in inv):
            raise ValueError(f"invariant factors must be >= 2, got {inv}")
        if any(b % a for a, b in zip(inv, inv[1:])):
            raise ValueError(f"invariant factors must form a divisibility chain, got {inv}")

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def normalize(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(a % n for a, n in zip(x, self.invariant_factors))

    def add(self, x, y) -> tuple[int, ...]:
        return self.normalize([a + b for a, b in zip(x, y)])

    def elements(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(n) for n in self.invariant_factors))

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank


def invariants_from_orders(orders: Sequence[int]) -> AbelianInvariants:
    """Normal form of Z/n_1 + ... (n_i = 0 for Z, n_i = 1 trivial)."""
    k = len(orders)
    snf = smith_normal_form(Matrix.diagonal(list(orders)) if k else Matrix.zeros(0, 0))
    diag = snf.diagonal
    torsion = tuple(d for d in diag if d > 1)
    free = sum(1 for d in diag if d == 0)
    return AbelianInvariants(torsion, free)


def cokernel_presentation(A: Matrix) -> tuple[FiniteAbelianGroup, int]:
    """Z^rows / im(A): torsion part from the Smith form, free rank rows - rank."""
    snf = smith_normal_form(A)
    torsion = tuple(d for d in snf.elementary_divisors if d > 1)
    return FiniteAbelianGroup(torsion), A.rows - snf.rank


def cokernel_invariants(A: Matrix) -> AbelianInvariants:
    group, free = cokernel_presentation(A)
    return AbelianInvariants(group.invariant_factors, free)


# -- subgroup lattices -------------------------------------------------------

def relation_vectors(orders: Sequence[int]) -> list[tuple[int, ...]]:
    k = len(orders)
    return [tuple(n if i == j else 0 for i in range(k)) for j, n in enumerate(orders) if n > 0]


def subquotient(H: Sequence[Sequence[int]], K: Sequence[Sequence[int]], dim: int) -> AbelianInvariants:
    """Invariants of span(H) / span(K) in Z^dim; requires span(K) inside span(H)."""
    basis = hermite_column_basis(H, dim)
    if not basis:
        return AbelianInvariants()
    B = Matrix.from_columns(basis, rows=dim)
    coords = []
    for v in K:
        c = solve_integer(B, v)
        if c is None:
            raise ValueError("K is not contained in H")
        coords.append(c)
    r = len(basis)
    C = Matrix.from_columns(coords, rows=r) if coords else Matrix.zeros(r, 0)
    return cokernel_invariants(C)


def same_lattice(H: Sequence[Sequence[int]], K: Sequence[Sequence[int]], dim: int) -> bool:
    return hermite_column_basis(H, dim) == hermite_column_basis(K, dim)


def hom_kernel(F: Matrix, source: Sequence[int], target: Sequence[int]) -> list[tuple[int, ...]]:
    """Generators of ker(F: source -> target), relation lattice of the source included."""
    rel_t = relation_vectors(target)
    m = F.cols
    big = F.hstack(Matrix.from_columns(rel_t, rows=F.rows).scale(-1)) if rel_t else F
    gens = [v[:m] for v in integer_kernel(big)]
    return [g for g in gens if any(g)] + relation_vectors(source)


def hom_image(F: Matrix, target: Sequence[int]) -> list[tuple[int, ...]]:
    return [F.column(j) for j in range(F.cols)] + relation_vectors(target)


def is_well_defined_hom(F: Matrix, source: Sequence[int], target: Sequence[int]) -> bool:
    """F maps the relation lattice of ``source`` into that of ``target``."""
    rel_t = relation_vectors(target)
    T = Matrix.from_columns(rel_t, rows=F.rows) if rel_t else Matrix.zeros(F.rows, 0)
    for r in relation_vectors(source):
        img = F.apply(r)
        if any(img) and solve_integer(T, img) is None:
            return False
    return True


def homs_equal(F: Matrix, G: Matrix, target: Sequence[int]) -> bool:
    """Equality of two homomorphisms as maps into the group with ``target`` orders."""
    if F.shape != G.shape:
        return False
    for j in range(F.cols):
        for a, b, n in zip(F.column(j), G.column(j), target):
            if (a - b) % n if n else a != b:
                return False
    return True


@dataclass(frozen=True)
class Presentation:
    """span(H)/span(K) written as Z/n_1 + ... with explicit generator vectors in Z^dim.

    ``orders`` uses 0 for Z; trivial factors are dropped. ``coordinates`` maps a
    vector of span(H) to its coordinates (reduced mod the orders).
    """

    orders: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]
    basis: tuple[tuple[int, ...], ...]
    change: Matrix  # coordinates in ``basis`` -> coordinates in all SNF generators
    keep: tuple[int, ...]
    dim: int

    @property
    def invariants(self) -> AbelianInvariants:
        return invariants_from_orders(self.orders)

    def coordinates(self, v: Sequence[int]) -> tuple[int, ...] | None:
        if not self.basis:
            return () if not any(v) else None
        c = solve_integer(Matrix.from_columns(self.basis, rows=self.dim), list(v))
        if c is None:
            return None
        full = self.change.apply(c)
        return tuple(full[i] % n if n else full[i] for i, n in zip(self.keep, self.orders))

    def vector(self, coords: Sequence[int]) -> tuple[int, ...]:
        out = [0] * self.dim
        for c, g in zip(coords, self.generators):
            for i, a in enumerate(g):
                out[i] += c * a
        return tuple(out)


def present_subquotient(H: Sequence[Sequence[int]], K: Sequence[Sequence[int]], dim: int) -> Presentation:
    """Smith-form presentation of span(H)/span(K); span(K) must lie in span(H)."""
    basis = hermite_column_basis(list(H) + list(K), dim)
    r = len(basis)
    if not r:
        return Presentation((), (), (), Matrix.zeros(0, 0), (), dim)
    B = Matrix.from_columns(basis, rows=dim)
    coords = []
    for v in K:
        if not any(v):
            continue
        c = solve_integer(B, v)
        if c is None:
            raise ValueError("K is not contained in H")
        coords.append(c)
    C = Matrix.from_columns(coords, rows=r) if coords else Matrix.zeros(r, 0)
    snf = smith_normal_form(C)
    diag = [abs(d) for d in snf.diagonal] + [0] * (r - len(snf.diagonal))
    gens_full = B @ snf.U_inv
    keep = tuple(i for i, d in enumerate(diag) if d != 1)
    orders = tuple(diag[i] for i in keep)
    gens = tuple(gens_full.column(i) for i in keep)
    return Presentation(orders, gens, tuple(basis), snf.U, keep, dim)
