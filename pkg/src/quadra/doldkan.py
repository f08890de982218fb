"""Simplicial abelian groups, normalized chain complexes and the Dold-Kan inverse.

Every group is a direct sum of cyclic groups given by its orders
(0 for Z). Homomorphisms are integer matrices acting on generator
coordinates; equalities are tested modulo the target's relations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .linalg import AbelianInvariants, Matrix, Presentation, present_subquotient
from .linalg.abelian import hom_image, hom_kernel, homs_equal, is_well_defined_hom, relation_vectors
from .rng import SplitMix64

Orders = tuple[int, ...]


class SimplicialIdentityError(ValueError):
    pass


class ChainComplexError(ValueError):
    pass


def _zero_map(rows: int, cols: int) -> Matrix:
    return Matrix.zeros(rows, cols)


def _identity_gens(dim: int) -> list[tuple[int, ...]]:
    return [tuple(int(i == j) for i in range(dim)) for j in range(dim)]


@dataclass(frozen=True)
class ChainComplexZ:
    """C_0 <- C_1 <- ... <- C_N; ``boundaries[n - 1]`` is d_n: C_n -> C_{n-1}."""

    groups: tuple[Orders, ...]
    boundaries: tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(tuple(int(n) for n in g) for g in self.groups))
        object.__setattr__(self, "boundaries", tuple(self.boundaries))
        if len(self.boundaries) != max(len(self.groups) - 1, 0):
            raise ChainComplexError("need one boundary map per positive degree")
        for n, d in enumerate(self.boundaries, start=1):
            if d.shape != (len(self.groups[n - 1]), len(self.groups[n])):
                raise ChainComplexError(f"d_{n} has shape {d.shape}")
            if not is_well_defined_hom(d, self.groups[n], self.groups[n - 1]):
                raise ChainComplexError(f"d_{n} does not respect the relations of C_{n}")
        for n in range(2, len(self.groups)):
            dd = self.boundaries[n - 2] @ self.boundaries[n - 1]
            if not homs_equal(dd, _zero_map(*dd.shape), self.groups[n - 2]):
                raise ChainComplexError(f"d_{n - 1} d_{n} != 0")

    @property
    def top(self) -> int:
        return len(self.groups) - 1

    def boundary(self, n: int) -> Matrix:
        """d_n, including the zero maps outside 1..top."""
        if 1 <= n <= self.top:
            return self.boundaries[n - 1]
        src = len(self.groups[n]) if 0 <= n <= self.top else 0
        tgt = len(self.groups[n - 1]) if 0 <= n - 1 <= self.top else 0
        return _zero_map(tgt, src)

    def group(self, n: int) -> Orders:
        return self.groups[n] if 0 <= n <= self.top else ()

    def cycles(self, n: int) -> list[tuple[int, ...]]:
        G = self.group(n)
        if n == 0 or n > self.top:
            return _identity_gens(len(G)) + relation_vectors(G)
        return hom_kernel(self.boundary(n), G, self.group(n - 1))

    def boundaries_in(self, n: int) -> list[tuple[int, ...]]:
        G = self.group(n)
        if n + 1 > self.top:
            return relation_vectors(G)
        return hom_image(self.boundary(n + 1), G)

    def homology_presentation(self, n: int) -> Presentation:
        return present_subquotient(self.cycles(n), self.boundaries_in(n), len(self.group(n)))

    def homology(self, n: int) -> AbelianInvariants:
        return self.homology_presentation(n).invariants

    def to_json(self) -> dict:
        return {"groups": [list(g) for g in self.groups],
                "boundaries": [d.tolist() for d in self.boundaries]}

    @classmethod
    def from_json(cls, data: dict) -> "ChainComplexZ":
        groups = [tuple(g) for g in data["groups"]]
        mats = []
        for n, rows in enumerate(data.get("boundaries", []), start=1):
            mats.append(Matrix(len(groups[n - 1]), len(groups[n]), rows) if rows else
                        _zero_map(len(groups[n - 1]), len(groups[n])))
        return cls(tuple(groups), tuple(mats))


def chain_maps_equal(F: Sequence[Matrix], G: Sequence[Matrix], target: ChainComplexZ) -> bool:
    return all(homs_equal(f, g, target.group(n)) for n, (f, g) in enumerate(zip(F, G)))


def is_chain_map(F: Sequence[Matrix], source: ChainComplexZ, target: ChainComplexZ) -> bool:
    for n in range(1, min(source.top, target.top) + 1):
        if not homs_equal(target.boundary(n) @ F[n], F[n - 1] @ source.boundary(n), target.group(n - 1)):
            return False
    return True


def is_isomorphism(F: Matrix, source: Orders, target: Orders) -> bool:
    """A well-defined homomorphism with trivial kernel and cokernel."""
    if not is_well_defined_hom(F, source, target):
        return False
    ker = present_subquotient(hom_kernel(F, source, target), relation_vectors(source), len(source))
    coker = present_subquotient(_identity_gens(len(target)), hom_image(F, target), len(target))
    return ker.invariants.is_trivial() and coker.invariants.is_trivial()


# -- simplicial abelian groups ---------------------------------------------------------

@dataclass(frozen=True)
class SimplicialAbelianGroup:
    """Levels A_0..A_N with faces d_i: A_n -> A_{n-1} and degeneracies s_i: A_n -> A_{n+1}.

    ``faces[n][i]`` is defined for 1 <= n <= N, ``degeneracies[n][i]`` for
    0 <= n < N. Construction checks the simplicial identities.
    """

    groups: tuple[Orders, ...]
    faces: tuple[tuple[Matrix, ...], ...]
    degeneracies: tuple[tuple[Matrix, ...], ...]
    check: bool = field(default=True, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(tuple(int(n) for n in g) for g in self.groups))
        N = self.top
        if len(self.faces) != N + 1 or len(self.degeneracies) != N:
            raise SimplicialIdentityError("faces[0..N] and degeneracies[0..N-1] expected (faces[0] empty)")
        if self.check:
            verify_simplicial_identities(self)

    @property
    def top(self) -> int:
        return len(self.groups) - 1

    def d(self, n: int, i: int) -> Matrix:
        return self.faces[n][i]

    def s(self, n: int, i: int) -> Matrix:
        return self.degeneracies[n][i]

    def to_json(self) -> dict:
        return {"groups": [list(g) for g in self.groups],
                "faces": [[m.tolist() for m in level] for level in self.faces],
                "degeneracies": [[m.tolist() for m in level] for level in self.degeneracies]}

    @classmethod
    def from_json(cls, data: dict) -> "SimplicialAbelianGroup":
        groups = [tuple(g) for g in data["groups"]]

        def mat(rows, r, c):
            return Matrix(r, c, rows) if r and c else _zero_map(r, c)

        faces = [()]
        for n in range(1, len(groups)):
            faces.append(tuple(mat(m, len(groups[n - 1]), len(groups[n])) for m in data["faces"][n]))
        degs = []
        for n in range(len(groups) - 1):
            degs.append(tuple(mat(m, len(groups[n + 1]), len(groups[n])) for m in data["degeneracies"][n]))
        return cls(tuple(groups), tuple(faces), tuple(degs))


def verify_simplicial_identities(A: SimplicialAbelianGroup) -> None:
    G, N = A.groups, A.top

    def fail(what):
        raise SimplicialIdentityError(what)

    for n in range(N + 1):
        if n >= 1:
            if len(A.faces[n]) != n + 1:
                fail(f"level {n} needs {n + 1} face maps")
            for i, m in enumerate(A.faces[n]):
                if m.shape != (len(G[n - 1]), len(G[n])) or not is_well_defined_hom(m, G[n], G[n - 1]):
                    fail(f"d_{i} on level {n} is not a homomorphism A_{n} -> A_{n - 1}")
        if n < N:
            if len(A.degeneracies[n]) != n + 1:
                fail(f"level {n} needs {n + 1} degeneracies")
            for i, m in enumerate(A.degeneracies[n]):
                if m.shape != (len(G[n + 1]), len(G[n])) or not is_well_defined_hom(m, G[n], G[n + 1]):
                    fail(f"s_{i} on level {n} is not a homomorphism A_{n} -> A_{n + 1}")
    d, s = A.d, A.s
    for n in range(2, N + 1):
        for i in range(n):
            for j in range(i + 1, n + 1):
                if not homs_equal(d(n - 1, i) @ d(n, j), d(n - 1, j - 1) @ d(n, i), G[n - 2]):
                    fail(f"d_{i} d_{j} != d_{j - 1} d_{i} on level {n}")
    for n in range(N):
        ident = Matrix.identity(len(G[n]))
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = d(n + 1, i) @ s(n, j)
                if i < j:
                    rhs = s(n - 1, j - 1) @ d(n, i)
                elif i in (j, j + 1):
                    rhs = ident
                else:
                    rhs = s(n - 1, j) @ d(n, i - 1)
                if not homs_equal(lhs, rhs, G[n]):
                    fail(f"d_{i} s_{j} identity fails on level {n}")
    for n in range(N - 1):
        for i in range(n + 1):
            for j in range(i, n + 1):
                if not homs_equal(s(n + 1, i) @ s(n, j), s(n + 1, j + 1) @ s(n, i), G[n + 2]):
                    fail(f"s_{i} s_{j} != s_{j + 1} s_{i} on level {n}")


@dataclass(frozen=True)
class NormalizedComplex:
    """N A with N_n = intersection of ker d_i for i >= 1 and differential d_0.

    ``presentations[n]`` writes N_n as a subgroup of A_n with its own generators.
    """

    complex: ChainComplexZ
    presentations: tuple[Presentation, ...]


def _subgroup_presentation(gens: list[tuple[int, ...]], G: Orders) -> Presentation:
    return present_subquotient(gens, relation_vectors(G), len(G))


def normalize(A: SimplicialAbelianGroup) -> NormalizedComplex:
    pres = []
    for n in range(A.top + 1):
        G = A.groups[n]
        if n == 0:
            gens = _identity_gens(len(G)) + relation_vectors(G)
        else:
            faces = [A.d(n, i) for i in range(1, n + 1)]
            stacked = faces[0]
            for f in faces[1:]:
                stacked = stacked.vstack(f)
            gens = hom_kernel(stacked, G, A.groups[n - 1] * n)
        pres.append(_subgroup_presentation(gens, G))
    maps = []
    for n in range(1, A.top + 1):
        cols = []
        for g in pres[n].generators:
            img = A.d(n, 0).apply(g)
            c = pres[n - 1].coordinates(img)
            if c is None:
                raise SimplicialIdentityError(f"d_0 does not map N_{n} into N_{n - 1}")
            cols.append(c)
        maps.append(Matrix.from_columns(cols, rows=len(pres[n - 1].orders)) if cols
                    else _zero_map(len(pres[n - 1].orders), 0))
    C = ChainComplexZ(tuple(p.orders for p in pres), tuple(maps))
    return NormalizedComplex(C, tuple(pres))


def unnormalized_complex(A: SimplicialAbelianGroup) -> ChainComplexZ:
    """A_n with the alternating sum of faces."""
    maps = []
    for n in range(1, A.top + 1):
        total = _zero_map(len(A.groups[n - 1]), len(A.groups[n]))
        for i in range(n + 1):
            total = total + A.d(n, i).scale((-1) ** i)
        maps.append(total)
    return ChainComplexZ(A.groups, tuple(maps))


def homotopy_groups(A: SimplicialAbelianGroup) -> list[AbelianInvariants]:
    """pi_n = H_n(N A) for n < N (the top level has no boundaries from above)."""
    C = normalize(A).complex
    return [C.homology(n) for n in range(A.top)]


# -- Dold-Kan inverse ------------------------------------------------------------------

@lru_cache(maxsize=None)
def surjections(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Monotone surjections [n] -> [k] as value tuples."""
    out = []
    for jumps in itertools.combinations(range(1, n + 1), k):
        js = set(jumps)
        v, vals = 0, []
        for i in range(n + 1):
            if i in js:
                v += 1
            vals.append(v)
        out.append(tuple(vals))
    return tuple(out)


def _coface(n: int, i: int) -> tuple[int, ...]:
    """delta^i: [n-1] -> [n] skipping i."""
    return tuple(j if j < i else j + 1 for j in range(n))


def _codegeneracy(n: int, i: int) -> tuple[int, ...]:
    """sigma^i: [n+1] -> [n] hitting i twice."""
    return tuple(j if j <= i else j - 1 for j in range(n + 2))


@dataclass(frozen=True)
class GammaComplex:
    """Gamma(C) with its summand index: level n is the sum over surjections f: [n] ->> [k] of C_k."""

    simplicial: SimplicialAbelianGroup
    summands: tuple[tuple[tuple[tuple[int, ...], int, int], ...], ...]  # (f, k, offset)
    source: ChainComplexZ


def gamma(C: ChainComplexZ, top: int | None = None) -> GammaComplex:
    """Dold-Kan inverse truncated at level ``top`` (default C.top + 1)."""
    N = C.top + 1 if top is None else top
    summands, groups = [], []
    for n in range(N + 1):
        entries, orders = [], []
        for k in range(min(n, C.top) + 1):
            for f in surjections(n, k):
                entries.append((f, k, len(orders)))
                orders.extend(C.group(k))
        summands.append(tuple(entries))
        groups.append(tuple(orders))
    lookup = [{(f, k): off for f, k, off in level} for level in summands]

    def operator(theta: tuple[int, ...], m: int, n: int) -> Matrix:
        """theta^*: Gamma_n -> Gamma_m for monotone theta: [m] -> [n]."""
        M = [[0] * len(groups[n]) for _ in range(len(groups[m]))]
        for f, k, off in summands[n]:
            comp = tuple(f[t] for t in theta)
            image = sorted(set(comp))
            j = len(image) - 1
            g = tuple(image.index(v) for v in comp)
            size = len(C.group(k))
            if image == list(range(k + 1)):
                block = Matrix.identity(size)
            elif image == list(range(1, k + 1)):
                block = C.boundary(k)
            else:
                continue
            dst = lookup[m][(g, j)]
            for r in range(block.rows):
                for c in range(block.cols):
                    M[dst + r][off + c] += block[r, c]
        return Matrix(len(groups[m]), len(groups[n]), M) if groups[m] and groups[n] else \
            _zero_map(len(groups[m]), len(groups[n]))

    faces = [()]
    for n in range(1, N + 1):
        faces.append(tuple(operator(_coface(n, i), n - 1, n) for i in range(n + 1)))
    degs = []
    for n in range(N):
        degs.append(tuple(operator(_codegeneracy(n, i), n + 1, n) for i in range(n + 1)))
    A = SimplicialAbelianGroup(tuple(groups), tuple(faces), tuple(degs))
    return GammaComplex(A, tuple(summands), C)


@dataclass(frozen=True)
class DoldKanIsomorphism:
    """phi_n: C_n -> N Gamma(C)_n, the inclusion onto the identity summand."""

    maps: tuple[Matrix, ...]
    normalized: ChainComplexZ

    def verify(self, C: ChainComplexZ) -> bool:
        top = min(C.top, self.normalized.top)
        if not is_chain_map(self.maps, C, self.normalized):
            return False
        return all(is_isomorphism(self.maps[n], C.group(n), self.normalized.group(n)) for n in range(top + 1))


def dold_kan_isomorphism(C: ChainComplexZ, G: GammaComplex | None = None) -> DoldKanIsomorphism:
    G = G or gamma(C)
    NG = normalize(G.simplicial)
    maps = []
    for n in range(C.top + 1):
        size = len(C.group(n))
        ident = (tuple(range(n + 1)), n)
        off = next(o for f, k, o in G.summands[n] if (f, k) == ident)
        cols = []
        for j in range(size):
            v = [0] * len(G.simplicial.groups[n])
            v[off + j] = 1
            c = NG.presentations[n].coordinates(v)
            if c is None:
                raise ChainComplexError(f"C_{n} does not land in the normalized complex")
            cols.append(c)
        rows = len(NG.presentations[n].orders)
        maps.append(Matrix.from_columns(cols, rows=rows) if cols else _zero_map(rows, 0))
    return DoldKanIsomorphism(tuple(maps), NG.complex)


# -- examples and random models --------------------------------------------------------

def constant_simplicial(G: Orders, top: int) -> SimplicialAbelianGroup:
    ident = Matrix.identity(len(G))
    faces = [()] + [tuple(ident for _ in range(n + 1)) for n in range(1, top + 1)]
    degs = [tuple(ident for _ in range(n + 1)) for n in range(top)]
    return SimplicialAbelianGroup(tuple([tuple(G)] * (top + 1)), tuple(faces), tuple(degs))


def free_on_simplex(k: int, top: int) -> SimplicialAbelianGroup:
    """Z[Delta^k] truncated at level ``top``: level n is free on monotone maps [n] -> [k]."""
    simplices = [list(itertools.combinations_with_replacement(range(k + 1), n + 1)) for n in range(top + 1)]
    index = [{s: i for i, s in enumerate(level)} for level in simplices]

    def pull(theta, m, n):
        M = [[0] * len(simplices[n]) for _ in range(len(simplices[m]))]
        for c, s in enumerate(simplices[n]):
            M[index[m][tuple(s[t] for t in theta)]][c] = 1
        return Matrix(len(simplices[m]), len(simplices[n]), M)

    faces = [()] + [tuple(pull(_coface(n, i), n - 1, n) for i in range(n + 1)) for n in range(1, top + 1)]
    degs = [tuple(pull(_codegeneracy(n, i), n + 1, n) for i in range(n + 1)) for n in range(top)]
    return SimplicialAbelianGroup(tuple((0,) * len(l) for l in simplices), tuple(faces), tuple(degs))


def concentrated(G: Orders, degree: int) -> ChainComplexZ:
    """G placed in a single degree."""
    groups = [()] * degree + [tuple(G)]
    maps = [_zero_map(len(groups[n - 1]), len(groups[n])) for n in range(1, degree + 1)]
    return ChainComplexZ(tuple(groups), tuple(maps))


def _random_group(rng: SplitMix64, max_rank: int, max_order: int) -> Orders:
    if rng.below(2):
        return (0,) * rng.randint(0, max_rank)
    orders, total = [], 1
    for _ in range(rng.randint(0, 3)):
        n = rng.randint(2, 8)
        if total * n > max_order:
            break
        orders.append(n)
        total *= n
    return tuple(orders)


def random_chain_complex(rng: SplitMix64, length: int = 3, max_rank: int = 3, max_order: int = 64,
                         max_entry: int = 3) -> ChainComplexZ:
    """Random complex C_0..C_length; each group free of rank <= max_rank or finite of order <= max_order."""
    groups = [_random_group(rng, max_rank, max_order) for _ in range(length + 1)]
    maps: list[Matrix] = []
    for n in range(1, length + 1):
        src, tgt = groups[n], groups[n - 1]
        prev = maps[n - 2] if n >= 2 else None
        cols = []
        for a in src:
            # admissible columns: d_{n-1} v = 0 in C_{n-2} and a v = 0 in C_{n-1}
            rows, target = [], []
            if prev is not None:
                rows.extend(prev.row(i) for i in range(prev.rows))
                target.extend(groups[n - 2])
            if a:
                rows.extend(tuple(a * int(i == j) for j in range(len(tgt))) for i in range(len(tgt)))
                target.extend(tgt)
            if rows:
                F = Matrix.from_rows(rows, cols=len(tgt))
                basis = hom_kernel(F, (0,) * len(tgt), tuple(target))
            else:
                basis = _identity_gens(len(tgt))
            v = [0] * len(tgt)
            for b in basis:
                c = rng.randint(-max_entry, max_entry)
                v = [x + c * y for x, y in zip(v, b)]
            v = [x % m if m else x for x, m in zip(v, tgt)]
            cols.append(v)
        maps.append(Matrix.from_columns(cols, rows=len(tgt)) if cols else _zero_map(len(tgt), 0))
    return ChainComplexZ(tuple(groups), tuple(maps))

