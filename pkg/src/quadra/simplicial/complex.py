"""Finite ordered simplicial complexes and integer chains."""

from __future__ import annotations

import itertools
from collections import deque
from functools import cached_property
from typing import Iterable, Sequence

from ..linalg import Matrix


class ComplexError(ValueError):
    pass


class SimplicialComplex:
    """Downward closure of a list of facets on vertices 0..n-1.

    Every simplex is a strictly increasing vertex tuple; the global vertex
    order orients all simplices.
    """

    def __init__(self, vertices: int, facets: Iterable[Sequence[int]], name: str | None = None):
        facets = sorted({tuple(sorted(int(v) for v in f)) for f in facets}, key=lambda f: (len(f), f))
        if any(len(set(f)) != len(f) for f in facets):
            raise ComplexError("facet with repeated vertex")
        if any(v < 0 or v >= vertices for f in facets for v in f):
            raise ComplexError(f"facet vertex outside 0..{vertices - 1}")
        self.n_vertices = int(vertices)
        self.name = name
        faces: set[tuple[int, ...]] = {(v,) for v in range(vertices)}
        for f in facets:
            for r in range(1, len(f) + 1):
                faces.update(itertools.combinations(f, r))
        self.dim = max((len(f) for f in faces), default=0) - 1
        self.simplices: list[list[tuple[int, ...]]] = [[] for _ in range(self.dim + 1)]
        for f in faces:
            self.simplices[len(f) - 1].append(f)
        for lst in self.simplices:
            lst.sort()
        self.index = [{s: i for i, s in enumerate(lst)} for lst in self.simplices]
        self.facets = sorted(_maximal(faces), key=lambda f: (len(f), f))

    def __repr__(self) -> str:
        label = self.name or "SimplicialComplex"
        return f"<{label}: {self.n_vertices} vertices, f-vector {self.f_vector}>"

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.simplices)

    def count(self, k: int) -> int:
        return len(self.simplices[k]) if 0 <= k <= self.dim else 0

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector))

    def is_pure(self) -> bool:
        return all(len(f) == self.dim + 1 for f in self.facets)

    @cached_property
    def faces_of(self) -> list[list[tuple[tuple[int, int], ...]]]:
        """faces_of[k][j] = ((face index, sign), ...) listing d_i of simplex j, sign (-1)^i."""
        out: list[list[tuple[tuple[int, int], ...]]] = [[]]
        out[0] = [() for _ in self.simplices[0]]
        for k in range(1, self.dim + 1):
            idx = self.index[k - 1]
            out.append([tuple((idx[s[:i] + s[i + 1:]], -1 if i % 2 else 1) for i in range(k + 1))
                        for s in self.simplices[k]])
        return out

    def boundary_matrix(self, k: int) -> Matrix:
        """d_k : C_k -> C_{k-1} (zero for k = 0 or k > dim)."""
        rows, cols = self.count(k - 1), self.count(k)
        data = [[0] * cols for _ in range(rows)]
        if 1 <= k <= self.dim:
            for j, faces in enumerate(self.faces_of[k]):
                for i, s in faces:
                    data[i][j] = s
        return Matrix(rows, cols, data)

    def coboundary_matrix(self, k: int) -> Matrix:
        """delta_k : C^k -> C^{k+1}, the transpose of d_{k+1}."""
        return self.boundary_matrix(k + 1).T

    def ridge_facets(self) -> dict[tuple[int, ...], list[tuple[int, ...]]]:
        """Top simplices containing each codimension-one face."""
        top = self.dim
        out: dict[tuple[int, ...], list[tuple[int, ...]]] = {r: [] for r in self.simplices[top - 1]} if top else {}
        for f in self.simplices[top]:
            for i in range(top + 1):
                out[f[:i] + f[i + 1:]].append(f)
        return out

    def is_pseudomanifold(self) -> bool:
        """Pure, every ridge in exactly two facets, facet graph connected."""
        if self.dim < 1 or not self.is_pure():
            return False
        ridges = self.ridge_facets()
        if any(len(v) != 2 for v in ridges.values()):
            return False
        adj: dict[tuple[int, ...], list[tuple[int, ...]]] = {f: [] for f in self.simplices[self.dim]}
        for a, b in ridges.values():
            adj[a].append(b)
            adj[b].append(a)
        start = self.simplices[self.dim][0]
        seen = {start}
        queue = deque([start])
        while queue:
            for g in adj[queue.popleft()]:
                if g not in seen:
                    seen.add(g)
                    queue.append(g)
        return len(seen) == len(adj)

    def link(self, simplex: Sequence[int]) -> list[tuple[int, ...]]:
        s = set(simplex)
        return sorted({tuple(v for v in f if v not in s) for f in self.facets if s <= set(f)})

    def to_json(self) -> dict:
        return {"vertices": self.n_vertices, "facets": [list(f) for f in self.facets]}

    @classmethod
    def from_json(cls, data: dict, name: str | None = None) -> "SimplicialComplex":
        try:
            return cls(int(data["vertices"]), data["facets"], name=name or data.get("name"))
        except (KeyError, TypeError) as exc:
            raise ComplexError(f"malformed complex description: {exc}") from exc


def _maximal(faces: set[tuple[int, ...]]) -> list[tuple[int, ...]]:
    covered: set[tuple[int, ...]] = set()
    for f in faces:
        if len(f) > 1:
            for i in range(len(f)):
                covered.add(f[:i] + f[i + 1:])
    return [f for f in faces if f not in covered]


def boundary_of_simplex(n: int) -> SimplicialComplex:
    """The boundary of the (n+1)-simplex, an n-sphere on n+2 vertices."""
    verts = range(n + 2)
    return SimplicialComplex(n + 2, itertools.combinations(verts, n + 1), name=f"S{n}")


class Chain:
    """Integer or mod-2 chain: a coefficient per k-simplex."""

    __slots__ = ("complex", "degree", "ring", "values")

    def __init__(self, K: SimplicialComplex, degree: int, values: Sequence[int], ring: str = "Z"):
        if len(values) != K.count(degree):
            raise ValueError(f"expected {K.count(degree)} coefficients, got {len(values)}")
        if ring not in ("Z", "Z/2"):
            raise ValueError(f"unsupported chain ring {ring!r}")
        self.complex = K
        self.degree = degree
        self.ring = ring
        self.values = tuple(v % 2 for v in values) if ring == "Z/2" else tuple(int(v) for v in values)

    @classmethod
    def from_dict(cls, K: SimplicialComplex, degree: int, coeffs: dict, ring: str = "Z") -> "Chain":
        vals = [0] * K.count(degree)
        for s, c in coeffs.items():
            vals[K.index[degree][tuple(s)]] += c
        return cls(K, degree, vals, ring)

    @classmethod
    def simplex(cls, K: SimplicialComplex, s: Sequence[int], coeff: int = 1) -> "Chain":
        return cls.from_dict(K, len(s) - 1, {tuple(s): coeff})

    def boundary(self) -> "Chain":
        k = self.degree
        out = [0] * self.complex.count(k - 1)
        if k >= 1:
            for j, c in enumerate(self.values):
                if c:
                    for i, s in self.complex.faces_of[k][j]:
                        out[i] += s * c
        return Chain(self.complex, k - 1, out, self.ring)

    def __add__(self, other: "Chain") -> "Chain":
        return Chain(self.complex, self.degree, [a + b for a, b in zip(self.values, other.values)], self.ring)

    def __sub__(self, other: "Chain") -> "Chain":
        return Chain(self.complex, self.degree, [a - b for a, b in zip(self.values, other.values)], self.ring)

    def __neg__(self) -> "Chain":
        return Chain(self.complex, self.degree, [-a for a in self.values], self.ring)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Chain) and self.complex is other.complex
                and self.degree == other.degree and self.values == other.values)

    def __hash__(self):
        return hash((id(self.complex), self.degree, self.values))

    def is_zero(self) -> bool:
        return not any(self.values)

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        return [(self.complex.simplices[self.degree][j], c) for j, c in enumerate(self.values) if c]

    def __repr__(self) -> str:
        return f"Chain(deg={self.degree}, {self.terms()})"


def fundamental_cycle(K: SimplicialComplex, ring: str = "Z", orientation: int = 1) -> Chain:
    """Generator of top homology of a closed pseudomanifold.

    Over Z the facet signs are propagated across ridges; a sign conflict
    means the complex is not orientable. ``orientation`` flips the sign.
    """
    if not K.is_pseudomanifold():
        raise ComplexError("complex is not a closed connected pseudomanifold")
    n = K.dim
    if ring == "Z/2":
        return Chain(K, n, [1] * K.count(n), "Z/2")
    if ring != "Z":
        raise ValueError(f"unsupported ring {ring!r}")
    sign: dict[int, int] = {0: orientation}
    # ridge -> [(facet index, incidence sign)]
    inc: dict[int, list[tuple[int, int]]] = {}
    for j, faces in enumerate(K.faces_of[n]):
        for i, s in faces:
            inc.setdefault(i, []).append((j, s))
    by_facet: dict[int, list[tuple[int, int]]] = {}
    for i, pair in inc.items():
        for j, s in pair:
            by_facet.setdefault(j, []).append((i, s))
    queue = deque([0])
    while queue:
        j = queue.popleft()
        for i, s in by_facet[j]:
            (a, sa), (b, sb) = inc[i]
            other, so = (b, sb) if a == j else (a, sa)
            want = -sign[j] * s * so  # sign[j] s + sign[other] so = 0
            if other in sign:
                if sign[other] != want:
                    raise ComplexError("complex is not orientable")
            else:
                sign[other] = want
                queue.append(other)
    return Chain(K, n, [sign[j] for j in range(K.count(n))], "Z")
