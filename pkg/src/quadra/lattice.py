"""Integral lattices, characteristic vectors and their quadratic refinements."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .finite_quadratic import FiniteQuadraticForm, gauss_sum
from .linalg import Matrix, det, signature_of_symmetric, smith_normal_form
from .linalg import gf2


class CharacteristicError(ValueError):
    """A vector fails the congruence G lambda = diag(G) mod 2."""


class IntegralLattice:
    """Z^n with a nondegenerate symmetric integer Gram matrix."""

    def __init__(self, gram, label: str | None = None):
        G = gram if isinstance(gram, Matrix) else Matrix.from_rows(gram)
        if not G.is_square():
            raise ValueError("Gram matrix must be square")
        if not G.is_integral():
            raise ValueError("Gram matrix must be integral")
        if not G.is_symmetric():
            raise ValueError("Gram matrix must be symmetric")
        if G.rows and det(G) == 0:
            raise ValueError("Gram matrix is degenerate (det = 0)")
        self.gram = G
        self.label = label

    @property
    def rank(self) -> int:
        return self.gram.rows

    @cached_property
    def det(self) -> int:
        return det(self.gram) if self.rank else 1

    @cached_property
    def signature(self) -> int:
        pos, neg, _ = signature_of_symmetric(self.gram)
        return pos - neg

    @property
    def is_unimodular(self) -> bool:
        return abs(self.det) == 1

    @property
    def is_even(self) -> bool:
        return all(d % 2 == 0 for d in self.gram.diagonal_entries())

    def pair(self, x: Sequence, y: Sequence):
        """B(x, y) = x^T G y; exact for integer or rational vectors."""
        Gy = self.gram.apply(y)
        return sum(Fraction(a) * b for a, b in zip(x, Gy)) if _has_fraction(x, Gy) else sum(
            a * b for a, b in zip(x, Gy))

    def __repr__(self) -> str:
        tag = f", label={self.label!r}" if self.label else ""
        return f"IntegralLattice({self.gram.tolist()}{tag})"

    # named examples
    @classmethod
    def e8(cls) -> "IntegralLattice":
        return cls(E8_GRAM, label="E8")

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "IntegralLattice":
        return cls(Matrix.diagonal(list(entries)))


def _has_fraction(*vecs) -> bool:
    return any(isinstance(a, Fraction) for v in vecs for a in v)


# Cartan matrix of E8 (Bourbaki labelling, node 2 attached to node 4)
E8_GRAM = [
    [2, 0, -1, 0, 0, 0, 0, 0],
    [0, 2, 0, -1, 0, 0, 0, 0],
    [-1, 0, 2, -1, 0, 0, 0, 0],
    [0, -1, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, 0, 0, -1, 2],
]


@dataclass(frozen=True)
class CharacteristicVector:
    lattice: IntegralLattice = field(repr=False)
    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(a) for a in self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) != self.lattice.rank:
            raise ValueError(f"expected {self.lattice.rank} coordinates, got {len(coords)}")
        if not is_characteristic(self.lattice, coords):
            raise CharacteristicError(f"{list(coords)} is not characteristic")


def is_characteristic(L: IntegralLattice, lam: Sequence[int]) -> bool:
    Gl = L.gram.apply(lam)
    return all((a - d) % 2 == 0 for a, d in zip(Gl, L.gram.diagonal_entries()))


def characteristic_vector(L: IntegralLattice) -> CharacteristicVector:
    """Lexicographically smallest 0/1 solution of G lambda = diag(G) mod 2."""
    n = L.rank
    # bit (n-1-i) carries coordinate i, so numeric order is lexicographic order
    def flip(bits: int) -> int:
        return sum(1 << (n - 1 - i) for i in range(n) if bits >> i & 1)

    cols = [gf2.pack([a % 2 for a in L.gram.column(j)]) for j in range(n)]
    rhs = gf2.pack([d % 2 for d in L.gram.diagonal_entries()])
    sol = gf2.solve(cols, rhs)
    if sol is None:  # impossible for symmetric G
        raise ArithmeticError("no characteristic vector found")
    ech = gf2.Echelon()
    for k in gf2.nullspace(cols, n):
        ech.add(flip(k))
    best, _ = ech.reduce(flip(sol))
    coords = tuple((best >> (n - 1 - i)) & 1 for i in range(n))
    return CharacteristicVector(L, coords)


def _coords(L: IntegralLattice, lam) -> tuple[int, ...]:
    if isinstance(lam, CharacteristicVector):
        return lam.coords
    return CharacteristicVector(L, tuple(lam)).coords


def quadratic_refinement(L: IntegralLattice, lam, x: Sequence) -> int | Fraction:
    """q(x) = (B(x,x) - B(x,lambda)) / 2; an integer for integral x."""
    lam = _coords(L, lam)
    val = Fraction(L.pair(x, x) - L.pair(x, lam), 2)
    return int(val) if val.denominator == 1 else val


def refinement_defect(L: IntegralLattice, lam, x: Sequence[int], y: Sequence[int]) -> int:
    """q(x+y) - q(x) - q(y) + q(0), which equals B(x, y)."""
    s = [a + b for a, b in zip(x, y)]
    z = [0] * L.rank
    q = lambda v: quadratic_refinement(L, lam, v)
    return q(s) - q(x) - q(y) + q(z)


@dataclass(frozen=True)
class VanDerBlijResult:
    residue: int
    unimodular: bool

    @property
    def holds(self) -> bool:
        return self.residue == 0 or not self.unimodular


def van_der_blij_check(L: IntegralLattice, lam) -> VanDerBlijResult:
    """Residue of B(lambda,lambda) - sigma mod 8.

    The congruence is asserted only for unimodular lattices; otherwise the
    residue is reported as data.
    """
    lam = _coords(L, lam)
    residue = (L.pair(lam, lam) - L.signature) % 8
    if L.is_unimodular and residue != 0:
        raise AssertionError(f"B(l,l) - sigma = {residue} mod 8 for a unimodular lattice")
    return VanDerBlijResult(residue, L.is_unimodular)


def kappa_4k_lattice(L: IntegralLattice, lam) -> Fraction:
    """(B(lambda,lambda) - sigma) / 8."""
    lam = _coords(L, lam)
    return Fraction(L.pair(lam, lam) - L.signature, 8)


@dataclass(frozen=True)
class DiscriminantData:
    """L*/L with chosen generators (rational lifts in L*) and the induced form."""

    form: FiniteQuadraticForm
    lifts: tuple[tuple[Fraction, ...], ...]

    @property
    def group(self):
        return self.form.group

    @property
    def q_values(self) -> tuple[Fraction, ...]:
        return tuple(self.form.Q[i, i] for i in range(len(self.lifts)))


def discriminant_data(L: IntegralLattice, lam) -> DiscriminantData:
    """Generators of L*/L from the Smith form U G V = D: lifts V e_i / d_i."""
    lam = _coords(L, lam)
    snf = smith_normal_form(L.gram)
    lifts, orders = [], []
    for i, d in enumerate(snf.diagonal):
        if d > 1:
            lifts.append(tuple(Fraction(a, d) for a in snf.V.column(i)))
            orders.append(d)
    k = len(lifts)
    Q = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            if i == j:
                # B(g, lambda) is an integer for g in L*, so the linear term is absorbed
                Q[i][i] = (L.pair(lifts[i], lifts[i]) - L.pair(lifts[i], lam)) / 2
            else:
                Q[i][j] = Fraction(L.pair(lifts[i], lifts[j])) / 2
    return DiscriminantData(FiniteQuadraticForm(orders, Q), tuple(lifts))


def discriminant_form(L: IntegralLattice, lam) -> FiniteQuadraticForm:
    return discriminant_data(L, lam).form


def milgram_check(L: IntegralLattice, lam) -> bool:
    """Gauss-sum argument of the discriminant form equals B(lambda,lambda) - sigma mod 8."""
    lam = _coords(L, lam)
    k = gauss_sum(discriminant_form(L, lam)).k
    return k == (L.pair(lam, lam) - L.signature) % 8


def characteristic_difference(L: IntegralLattice, lam1, lam2) -> tuple[Fraction, ...]:
    """w = (lambda1 - lambda2)/2, checked to lie in L* (G w integral)."""
    a, b = _coords(L, lam1), _coords(L, lam2)
    w = tuple(Fraction(x - y, 2) for x, y in zip(a, b))
    if any(Fraction(v).denominator != 1 for v in L.gram.apply(w)):
        raise CharacteristicError("difference of characteristic vectors is not in 2L*")
    return w
