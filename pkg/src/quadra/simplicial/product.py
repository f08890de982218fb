"""Staircase products, Eilenberg-Zilber cross products of chains, slant products."""

from __future__ import annotations

import itertools
from functools import lru_cache

from .cochain import Cochain
from .complex import Chain, SimplicialComplex


class ProductComplex(SimplicialComplex):
    """M x N triangulated by monotone lattice paths; vertex (i, j) is i * |V(N)| + j."""

    def __init__(self, M: SimplicialComplex, N: SimplicialComplex, name: str | None = None):
        self.left, self.right = M, N
        w = N.n_vertices
        facets = []
        for s in M.facets:
            for t in N.facets:
                for path, _ in _paths(len(s) - 1, len(t) - 1):
                    facets.append([s[i] * w + t[j] for i, j in path])
        super().__init__(M.n_vertices * w, facets, name=name or f"{M.name or 'M'}x{N.name or 'N'}")

    def vertex(self, i: int, j: int) -> int:
        return i * self.right.n_vertices + j


@lru_cache(maxsize=None)
def _paths(p: int, q: int) -> tuple[tuple[tuple[tuple[int, int], ...], int], ...]:
    """Monotone lattice paths (0,0) -> (p,q) with their shuffle signs.

    A path is a word in p horizontal and q vertical steps; its sign is
    (-1)^(number of (vertical, horizontal) step pairs in that order).
    """
    out = []
    for vert in itertools.combinations(range(p + q), q):
        vset = set(vert)
        i = j = 0
        path = [(0, 0)]
        inversions = 0
        for step in range(p + q):
            if step in vset:
                j += 1
            else:
                i += 1
                inversions += j
            path.append((i, j))
        out.append((tuple(path), -1 if inversions % 2 else 1))
    return tuple(out)


def simplex_cross(P: ProductComplex, s: tuple[int, ...], t: tuple[int, ...]) -> list[tuple[int, int]]:
    """(index of path simplex in P, sign) terms of s x t."""
    idx = P.index[len(s) + len(t) - 2]
    w = P.right.n_vertices
    return [(idx[tuple(s[i] * w + t[j] for i, j in path)], sign) for path, sign in _paths(len(s) - 1, len(t) - 1)]


def cross(P: ProductComplex, x: Chain, z: Chain) -> Chain:
    """Eilenberg-Zilber cross product; satisfies d(x z) = dx z + (-1)^|x| x dz."""
    if x.complex is not P.left or z.complex is not P.right:
        raise ValueError("chains must live on the factors of the product")
    deg = x.degree + z.degree
    out = [0] * P.count(deg)
    for s, a in x.terms():
        for t, b in z.terms():
            for j, sign in simplex_cross(P, s, t):
                out[j] += sign * a * b
    return Chain(P, deg, out, "Z/2" if "Z/2" in (x.ring, z.ring) else "Z")


def slant(a: Cochain, z: Chain) -> Cochain:
    """a / z on the left factor: <a / z, x> = <a, x cross z>.

    Obeys delta(a/z) = (delta a)/z + (-1)^(|a|+|z|) a/(dz).
    """
    P = a.complex
    if not isinstance(P, ProductComplex):
        raise ValueError("slant needs a cochain on a product complex")
    if z.complex is not P.right:
        raise ValueError("slant chain must live on the right factor")
    M = P.left
    deg = a.degree - z.degree
    if deg < 0:
        return Cochain.zero(M, deg, a.ring)
    out = []
    terms = z.terms()
    vals = a.values
    for s in M.simplices[deg] if deg <= M.dim else []:
        acc = 0
        for t, c in terms:
            for j, sign in simplex_cross(P, s, t):
                v = vals[j]
                if v:
                    acc += sign * c * v
        out.append(acc)
    return Cochain(M, deg, out, a.ring)


def interval() -> SimplicialComplex:
    return SimplicialComplex(2, [[0, 1]], name="I")


def prism(M: SimplicialComplex) -> ProductComplex:
    """M x I with I = [0, 1]."""
    return ProductComplex(M, interval(), name=f"{M.name or 'M'}xI")


def interval_chain(P: ProductComplex) -> Chain:
    """The fundamental chain [0,1] of the interval factor."""
    return Chain.simplex(P.right, (0, 1))


def point_chain(P: ProductComplex, t: int) -> Chain:
    return Chain.simplex(P.right, (t,))


def integrate_interval(s: Cochain) -> Cochain:
    """Fibre integral over I: s / [0,1]."""
    return slant(s, interval_chain(s.complex))


def restrict_end(s: Cochain, t: int) -> Cochain:
    """Restriction to the end M x {t}: slant by the point chain."""
    return slant(s, point_chain(s.complex, t))


def stokes_defect(s: Cochain) -> Cochain:
    """delta(int s) - int(delta s) + (-1)^|s| (s|_1 - s|_0); zero by Stokes."""
    lhs = integrate_interval(s).coboundary()
    rhs = integrate_interval(s.coboundary())
    ends = restrict_end(s, 1) - restrict_end(s, 0)
    return lhs - rhs + ends.scale((-1) ** s.degree)

