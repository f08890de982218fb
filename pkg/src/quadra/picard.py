"""Two-term complexes d: A -> B and their invariant pairs valued in (Q -> Q/Z).

A pair (h0, h1) has h1: B -> Q/Z and h0: A -> Q with h0(a) = h1(d a) mod 1.
Pairs differing by (h o d, h mod 1) for h: B -> Q are identified. The
resulting group is an extension of Hom(ker d, Z) by Ext(coker d, Z).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .doldkan import ChainComplexZ, Orders
from .linalg import AbelianInvariants, Matrix, Presentation, det, integer_kernel, present_subquotient
from .linalg.abelian import hom_kernel, is_well_defined_hom, relation_vectors
from .rng import SplitMix64


class PicardError(ValueError):
    pass


@dataclass(frozen=True)
class TwoTermComplex:
    """d: A -> B; pi_0 = coker d, pi_1 = ker d.

    ``epsilon`` optionally records a homomorphism pi_0 (x) Z/2 -> pi_1 for
    non-strict bookkeeping; it does not enter any computation.
    """

    source: Orders
    target: Orders
    d: Matrix
    epsilon: Matrix | None = None

    def __post_init__(self):
        object.__setattr__(self, "source", tuple(int(n) for n in self.source))
        object.__setattr__(self, "target", tuple(int(n) for n in self.target))
        if self.d.shape != (len(self.target), len(self.source)):
            raise PicardError(f"d has shape {self.d.shape}, expected {(len(self.target), len(self.source))}")
        if not is_well_defined_hom(self.d, self.source, self.target):
            raise PicardError("d does not respect the relations of A")

    @classmethod
    def cyclic(cls, a: int, b: int, m: int) -> "TwoTermComplex":
        """Z/a -> Z/b by multiplication with m (0 means Z)."""
        return cls((a,), (b,), Matrix(1, 1, [[m]]))

    def as_chain_complex(self) -> ChainComplexZ:
        return ChainComplexZ((self.target, self.source), (self.d,))

    def pi0(self) -> AbelianInvariants:
        return self.as_chain_complex().homology(0)

    def pi1(self) -> AbelianInvariants:
        return self.as_chain_complex().homology(1)

    def direct_sum(self, other: "TwoTermComplex") -> "TwoTermComplex":
        a, b = len(self.source), len(self.target)
        c, e = len(other.source), len(other.target)
        rows = [list(self.d.row(i)) + [0] * c for i in range(b)]
        rows += [[0] * a + list(other.d.row(i)) for i in range(e)]
        return TwoTermComplex(self.source + other.source, self.target + other.target, Matrix(b + e, a + c, rows))

    def to_json(self) -> dict:
        return {"source": list(self.source), "target": list(self.target), "d": self.d.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "TwoTermComplex":
        A, B = tuple(data["source"]), tuple(data["target"])
        rows = data.get("d") or [[0] * len(A) for _ in B]
        return cls(A, B, Matrix(len(B), len(A), rows))


@dataclass(frozen=True)
class FunctorPair:
    """h0: A -> Q and h1: B -> Q/Z on generators; h1 is stored reduced into [0, 1)."""

    h0: tuple[Fraction, ...]
    h1: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "h0", tuple(Fraction(x) for x in self.h0))
        object.__setattr__(self, "h1", tuple(Fraction(x) % 1 for x in self.h1))

    def validate(self, T: TwoTermComplex) -> None:
        if len(self.h0) != len(T.source) or len(self.h1) != len(T.target):
            raise PicardError("pair does not match the complex")
        for x, n in zip(self.h0, T.source):
            if n and x != 0:
                raise PicardError("h0 must vanish on torsion generators of A")
        for x, n in zip(self.h1, T.target):
            if n and (x * n).denominator != 1:
                raise PicardError(f"h1 value {x} is not killed by the order {n}")
        for j in range(len(T.source)):
            dh = sum(self.h1[i] * T.d[i, j] for i in range(len(T.target)))
            if (self.h0[j] - dh).denominator != 1:
                raise PicardError(f"h0(a_{j}) != h1(d a_{j}) mod 1")

    def __add__(self, other: "FunctorPair") -> "FunctorPair":
        return FunctorPair(tuple(a + b for a, b in zip(self.h0, other.h0)),
                           tuple(a + b for a, b in zip(self.h1, other.h1)))

    def scale(self, k: int) -> "FunctorPair":
        return FunctorPair(tuple(k * a for a in self.h0), tuple(k * a for a in self.h1))


@dataclass(frozen=True)
class FunctorClassGroup:
    """Equivalence classes of functor pairs, written as Z/n_1 + ... with explicit generators.

    Internally a pair is encoded by y_i = h1(b_i) n_i on torsion generators of B
    and w = h0 - h1 o d in Z^a, after shifting h1 to vanish on free generators.
    """

    complex: TwoTermComplex
    presentation: Presentation

    @property
    def invariants(self) -> AbelianInvariants:
        return self.presentation.invariants

    @property
    def orders(self) -> tuple[int, ...]:
        return self.presentation.orders

    def generators(self) -> list[FunctorPair]:
        return [self._decode(g) for g in self.presentation.generators]

    def _decode(self, vec: Sequence[int]) -> FunctorPair:
        T = self.complex
        tors = [i for i, n in enumerate(T.target) if n]
        u = [Fraction(0)] * len(T.target)
        for y, i in zip(vec, tors):
            u[i] = Fraction(y, T.target[i])
        w = vec[len(tors):]
        h0 = [sum(u[i] * T.d[i, j] for i in range(len(T.target))) + w[j] for j in range(len(T.source))]
        return FunctorPair(tuple(h0), tuple(u))

    def encode(self, pair: FunctorPair) -> tuple[int, ...]:
        T = self.complex
        pair.validate(T)
        u = list(pair.h1)
        # shift by h = h1 on free generators of B (a homomorphism B -> Q)
        h = [x if n == 0 else Fraction(0) for x, n in zip(u, T.target)]
        u = [a - b for a, b in zip(u, h)]
        h0 = [pair.h0[j] - sum(h[i] * T.d[i, j] for i in range(len(T.target))) for j in range(len(T.source))]
        y = [int(u[i] * n) for i, n in enumerate(T.target) if n]
        w = [h0[j] - sum(u[i] * T.d[i, j] for i in range(len(T.target))) for j in range(len(T.source))]
        assert all(x.denominator == 1 for x in w)
        return tuple(y) + tuple(int(x) for x in w)

    def classify(self, pair: FunctorPair) -> tuple[int, ...]:
        c = self.presentation.coordinates(self.encode(pair))
        if c is None:
            raise PicardError("pair is not in the lattice of admissible pairs")
        return c

    def equivalent(self, p: FunctorPair, q: FunctorPair) -> bool:
        return self.classify(p) == self.classify(q)


def functor_class_group(T: TwoTermComplex) -> FunctorClassGroup:
    """Pairs (y, w) in Z^{r_B} x Z^a with y X + w R_A = 0, modulo (n R_B, -n d).

    Here R_A, R_B are the torsion relations and d R_A = R_B X.
    """
    A, B, d = T.source, T.target, T.d
    tors_b = [i for i, n in enumerate(B) if n]
    tors_a = [j for j, n in enumerate(A) if n]
    rb, a = len(tors_b), len(A)
    dim = rb + a
    # one equation per torsion generator of A: sum_i y_i X_ij + a_j w_j = 0
    eqs = []
    for j in tors_a:
        row = [0] * dim
        for k, i in enumerate(tors_b):
            val = A[j] * d[i, j]
            row[k] = val // B[i]
        for i, n in enumerate(B):
            if n == 0 and d[i, j] * A[j] != 0:
                raise PicardError("d is not well defined on a torsion generator")
        row[rb + j] = A[j]
        eqs.append(row)
    if eqs:
        lattice = integer_kernel(Matrix.from_rows(eqs, cols=dim))
    else:
        lattice = [tuple(int(i == j) for i in range(dim)) for j in range(dim)]
    shifts = []
    for l in range(len(B)):
        vec = [0] * dim
        if B[l]:
            vec[tors_b.index(l)] = B[l]
        for j in range(a):
            vec[rb + j] = -d[l, j]
        shifts.append(tuple(vec))
    pres = present_subquotient(lattice, shifts, dim)
    return FunctorClassGroup(T, pres)


@dataclass(frozen=True)
class AndersonCheck:
    group: AbelianInvariants
    ext_part: AbelianInvariants
    hom_part: AbelianInvariants
    restriction_unimodular: bool

    @property
    def holds(self) -> bool:
        return (self.restriction_unimodular and self.group.torsion == self.ext_part.torsion
                and self.group.free_rank == self.hom_part.free_rank)


def anderson_sequence_check(T: TwoTermComplex) -> AndersonCheck:
    """Compare the class group with Ext(coker d, Z) -> G -> Hom(ker d, Z).

    Besides matching invariants, the restriction of h0 to ker d is computed
    on the free generators and must be a unimodular map onto Hom(ker d, Z).
    """
    G = functor_class_group(T)
    coker = T.pi0()
    ext = AbelianInvariants(coker.torsion, 0)
    kerp = present_subquotient(hom_kernel(T.d, T.source, T.target), relation_vectors(T.source), len(T.source))
    hom = AbelianInvariants((), kerp.invariants.free_rank)
    free_k = [g for g, n in zip(kerp.generators, kerp.orders) if n == 0]
    gens = G.generators()
    free_g = [p for p, n in zip(gens, G.orders) if n == 0]
    ok = len(free_g) == len(free_k)
    if ok and free_k:
        rows = []
        for p in free_g:
            vals = [sum(x * c for x, c in zip(p.h0, k)) for k in free_k]
            if any(Fraction(v).denominator != 1 for v in vals):
                ok = False
                break
            rows.append([int(v) for v in vals])
        ok = ok and abs(det(Matrix.from_rows(rows))) == 1
    # torsion classes restrict to zero on ker d since Hom(ker d, Z) is torsion-free
    for p, n in zip(gens, G.orders):
        if n:
            for k in kerp.generators:
                if sum(x * c for x, c in zip(p.h0, k)) != 0:
                    ok = False
    return AndersonCheck(G.invariants, ext, hom, ok)


def random_two_term(rng: SplitMix64, max_order: int = 100, max_gens: int = 3) -> TwoTermComplex:
    """Random d: A -> B with A, B finite of order <= max_order or free of small rank."""

    def group():
        if rng.below(3) == 0:
            return (0,) * rng.randint(0, 2)
        out, total = [], 1
        for _ in range(rng.randint(1, max_gens)):
            n = rng.randint(2, 12)
            if total * n > max_order:
                break
            out.append(n)
            total *= n
        return tuple(out)

    A, B = group(), group()
    cols = []
    for n in A:
        col = []
        for m in B:
            if m == 0:
                col.append(rng.randint(-4, 4) if n == 0 else 0)
            else:
                # need n * c = 0 mod m when n > 0
                step = m // gcd(n, m) if n else 1
                col.append(step * rng.randint(0, m) % m)
        cols.append(col)
    d = Matrix.from_columns(cols, rows=len(B)) if cols else Matrix.zeros(len(B), 0)
    return TwoTermComplex(A, B, d)

