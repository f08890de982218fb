"""Simplicial cohomology with Z, Z/2 and Q coefficients.

Over Z the cocycles are read off a Smith form of the coboundary
delta_k = U^-1 D V^-1: the last columns of V span ker delta_k, and a second
Smith form of delta_{k-1} expressed in those coordinates splits the
quotient into cyclic summands with explicit representative cocycles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..linalg import AbelianInvariants, Matrix, smith_normal_form
from ..linalg import gf2
from ..linalg.integer import SmithDecomposition
from .cochain import Cochain
from .complex import SimplicialComplex


class NotACocycleError(ValueError):
    pass


def _rows_times(rows: Sequence[Sequence], M: Matrix) -> list[list]:
    """Product of a list of rows with M, skipping zeros."""
    cols = M.cols
    Mrows = [M.row(i) for i in range(M.rows)]
    out = []
    for r in rows:
        acc = [0] * cols
        for i, x in enumerate(r):
            if x:
                for j, y in enumerate(Mrows[i]):
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out


def _apply_rows(rows: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(r, v) if x and y) for r in rows]


def _cache(K: SimplicialComplex) -> dict:
    c = K.__dict__.get("_cohomology_cache")
    if c is None:
        c = K.__dict__["_cohomology_cache"] = {}
    return c


def coboundary_snf(K: SimplicialComplex, k: int) -> SmithDecomposition:
    """Cached Smith form of delta_k : C^k -> C^{k+1}."""
    cache = _cache(K)
    key = ("snf", k)
    if key not in cache:
        cache[key] = smith_normal_form(K.coboundary_matrix(k))
    return cache[key]


@dataclass(frozen=True)
class CohomologyClass:
    group: "CohomologyGroup"
    coords: tuple
    representative: Cochain

    @property
    def degree(self) -> int:
        return self.group.degree

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __eq__(self, other) -> bool:
        return isinstance(other, CohomologyClass) and other.group is self.group and other.coords == self.coords

    def __hash__(self):
        return hash((id(self.group), self.coords))

    def __repr__(self) -> str:
        return f"CohomologyClass(H^{self.degree}({self.group.ring}), coords={list(self.coords)})"


class CohomologyGroup:
    """H^k(K; R) with representative cocycles for a cyclic decomposition.

    ``orders[i]`` is the order of generator i (0 for infinite order, 2 for
    every Z/2 generator, 0 for every Q generator).
    """

    def __init__(self, K: SimplicialComplex, k: int, ring: str = "Z"):
        if ring not in ("Z", "Z/2", "Q"):
            raise ValueError(f"cohomology ring must be Z, Z/2 or Q, got {ring!r}")
        self.complex = K
        self.degree = k
        self.ring = ring
        if not 0 <= k <= K.dim:
            self.orders: tuple[int, ...] = ()
            self.generators: list[Cochain] = []
            self._mode = "empty"
            return
        if ring == "Z/2":
            self._init_mod2()
        else:
            self._init_integral(free_only=(ring == "Q"))

    # -- construction ----------------------------------------------------------
    def _init_integral(self, free_only: bool):
        K, k = self.complex, self.degree
        snf = coboundary_snf(K, k)
        r = snf.rank
        Vi_rows = [snf.V_inv.row(i) for i in range(r, K.count(k))]
        if k >= 1:
            A_rows = _rows_times(Vi_rows, K.coboundary_matrix(k - 1))
            A = Matrix(len(A_rows), K.count(k - 1), A_rows)
        else:
            A = Matrix.zeros(len(Vi_rows), 0)
        snf2 = smith_normal_form(A)
        diag = snf2.diagonal
        z = len(Vi_rows)
        orders = [diag[i] if i < len(diag) else 0 for i in range(z)]
        keep = [i for i in range(z) if orders[i] != 1 and not (free_only and orders[i] != 0)]
        keep.sort(key=lambda i: (orders[i] == 0, i))  # torsion first
        kernel = [snf.V.column(j) for j in range(r, K.count(k))]
        Ui = snf2.U_inv
        gens = []
        for i in keep:
            coeffs = Ui.column(i)
            vals = [0] * K.count(k)
            for c, vec in zip(coeffs, kernel):
                if c:
                    for t, x in enumerate(vec):
                        if x:
                            vals[t] += c * x
            gens.append(Cochain(K, k, vals, "Q" if free_only else "Z"))
        self._snf, self._r, self._Vi_rows = snf, r, Vi_rows
        self._U2_rows = [snf2.U.row(i) for i in keep]
        self.orders = tuple(orders[i] for i in keep)
        self.generators = gens
        self._mode = "Q" if free_only else "Z"

    def _init_mod2(self):
        K, k = self.complex, self.degree
        n = K.count(k)
        dk = K.coboundary_matrix(k)
        cols = [gf2.pack([x % 2 for x in dk.column(j)]) for j in range(n)]
        cocycles = gf2.nullspace(cols, dk.rows)
        images = []
        if k >= 1:
            dkm = K.coboundary_matrix(k - 1)
            images = [gf2.pack([x % 2 for x in dkm.column(j)]) for j in range(dkm.cols)]
        ech = gf2.Echelon()
        for v in images:
            ech.add(v)
        reps, tags = [], []
        for v in cocycles:
            tag = ech.count
            if ech.add(v):
                reps.append(v)
                tags.append(tag)
        self._ech, self._tags = ech, tags
        self.orders = (2,) * len(reps)
        self.generators = [Cochain(K, k, gf2.unpack(v, n), "Z/2") for v in reps]
        self._mode = "Z/2"

    # -- queries -----------------------------------------------------------------
    @property
    def rank(self) -> int:
        """Number of cyclic summands."""
        return len(self.orders)

    @property
    def invariants(self) -> AbelianInvariants:
        if self._mode == "Z":
            return AbelianInvariants(tuple(o for o in self.orders if o), sum(1 for o in self.orders if o == 0))
        if self._mode == "Z/2":
            return AbelianInvariants((2,) * self.rank, 0)
        return AbelianInvariants((), self.rank)

    @property
    def free_rank(self) -> int:
        return sum(1 for o in self.orders if o == 0)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(o for o in self.orders if o)

    def describe(self) -> str:
        if self._mode == "Z/2":
            return f"(Z/2)^{self.rank}" if self.rank else "0"
        if self._mode == "Q":
            return f"Q^{self.rank}" if self.rank else "0"
        return str(self.invariants)

    def __repr__(self) -> str:
        return f"H^{self.degree}({self.complex.name or 'K'}; {self.ring}) = {self.describe()}"

    def coordinates(self, c: Cochain) -> tuple:
        """Coordinates of the class of a cocycle in the generator basis."""
        if c.degree != self.degree or c.complex is not self.complex:
            raise ValueError("cochain does not belong to this group")
        if self._mode == "empty":
            return ()
        if self._mode == "Z/2":
            residue, combo = self._ech.reduce(gf2.pack(c.values))
            if residue:
                raise NotACocycleError(f"degree-{self.degree} cochain is not a mod-2 cocycle")
            return tuple((combo >> t) & 1 for t in self._tags)
        vals = c.values
        if self._mode == "Z" and not c.is_integral():
            raise ValueError("integral cohomology needs an integral cochain")
        Vi = self._snf.V_inv
        head = [sum(x * y for x, y in zip(Vi.row(i), vals) if x and y) for i in range(self._r)]
        if any(head):
            raise NotACocycleError(f"degree-{self.degree} cochain is not a cocycle")
        y = _apply_rows(self._Vi_rows, vals)
        y2 = _apply_rows(self._U2_rows, y)
        if self._mode == "Q":
            return tuple(Fraction(v) for v in y2)
        return tuple(v % o if o else v for v, o in zip(y2, self.orders))

    def class_of(self, c: Cochain) -> CohomologyClass:
        return CohomologyClass(self, self.coordinates(c), c)

    def element(self, coords: Sequence) -> Cochain:
        """Representative cocycle sum_i coords[i] * generator_i."""
        K, k = self.complex, self.degree
        ring = {"Z": "Z", "Z/2": "Z/2", "Q": "Q"}.get(self._mode, self.ring)
        out = Cochain.zero(K, k, ring)
        for c, g in zip(coords, self.generators):
            if c:
                out = out + g.scale(c)
        return out

    def is_trivial_class(self, c: Cochain) -> bool:
        return not any(self.coordinates(c))


def cohomology(K: SimplicialComplex, k: int, ring: str = "Z") -> CohomologyGroup:
    cache = _cache(K)
    key = ("H", k, ring)
    if key not in cache:
        cache[key] = CohomologyGroup(K, k, ring)
    return cache[key]


def homology_invariants(K: SimplicialComplex, k: int) -> AbelianInvariants:
    """H_k(K; Z) from the Smith forms of the coboundary maps."""
    if not 0 <= k <= K.dim:
        return AbelianInvariants()
    r_k = coboundary_snf(K, k).rank
    r_prev = coboundary_snf(K, k - 1).rank if k >= 1 else 0
    torsion = tuple(d for d in coboundary_snf(K, k).elementary_divisors if d > 1)
    return AbelianInvariants(torsion, K.count(k) - r_k - r_prev)


def betti_numbers(K: SimplicialComplex) -> tuple[int, ...]:
    return tuple(homology_invariants(K, k).free_rank for k in range(K.dim + 1))


def trivialize(c: Cochain) -> Cochain | None:
    """A cochain b with delta b = c, or None if c is not a coboundary.

    Integer, rational and mod-2 coefficients are supported.
    """
    K, k = c.complex, c.degree
    if k == 0:
        return Cochain.zero(K, -1, c.ring) if c.is_zero() else None
    if c.ring == "Z/2":
        dkm = K.coboundary_matrix(k - 1)
        cols = [gf2.pack([x % 2 for x in dkm.column(j)]) for j in range(dkm.cols)]
        x = gf2.solve(cols, gf2.pack(c.values))
        return None if x is None else Cochain(K, k - 1, gf2.unpack(x, dkm.cols), "Z/2")
    snf = coboundary_snf(K, k - 1)
    w = snf.U.apply([Fraction(v) for v in c.values])
    y = [Fraction(0)] * K.count(k - 1)
    for i, d in enumerate(snf.diagonal):
        if d == 0:
            break
        y[i] = Fraction(w[i]) / d
    if any(w[i] for i in range(snf.rank, len(w))):
        return None
    if c.ring == "Z" and any(v.denominator != 1 for v in y):
        return None
    x = snf.V.apply(y)
    b = Cochain(K, k - 1, x, c.ring)
    assert b.coboundary() == c
    return b
