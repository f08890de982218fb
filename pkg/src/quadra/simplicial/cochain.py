"""Cochains on ordered simplicial complexes: coboundary, cup and cup-i products."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence

from .complex import Chain, SimplicialComplex

RINGS = ("Z", "Z/2", "Q", "Q/Z")


class RingMismatchError(ValueError):
    pass


def _normalize(x, ring: str):
    if ring == "Z":
        if Fraction(x).denominator != 1:
            raise ValueError(f"non-integral value {x} for a Z cochain")
        return int(x)
    if ring == "Z/2":
        if Fraction(x).denominator != 1:
            raise ValueError(f"non-integral value {x} for a Z/2 cochain")
        return int(x) % 2
    if ring == "Q":
        x = Fraction(x)
        return int(x) if x.denominator == 1 else x
    if ring == "Q/Z":
        x = Fraction(x)
        x -= math.floor(x)
        return int(x) if x.denominator == 1 else x
    raise ValueError(f"unknown coefficient ring {ring!r}")


class Cochain:
    """A function on the k-simplices of a complex, valued in Z, Z/2, Q or Q/Z."""

    __slots__ = ("complex", "degree", "ring", "values")

    def __init__(self, K: SimplicialComplex, degree: int, values: Sequence, ring: str = "Z"):
        if len(values) != K.count(degree):
            raise ValueError(f"degree-{degree} cochain needs {K.count(degree)} values, got {len(values)}")
        self.complex = K
        self.degree = degree
        self.ring = ring
        self.values = tuple(_normalize(v, ring) for v in values)

    # -- constructors --------------------------------------------------------
    @classmethod
    def zero(cls, K: SimplicialComplex, degree: int, ring: str = "Z") -> "Cochain":
        return cls(K, degree, [0] * K.count(degree), ring)

    @classmethod
    def unit(cls, K: SimplicialComplex, ring: str = "Z") -> "Cochain":
        return cls(K, 0, [1] * K.count(0), ring)

    @classmethod
    def from_dict(cls, K: SimplicialComplex, degree: int, values: dict, ring: str = "Z") -> "Cochain":
        vals = [0] * K.count(degree)
        for s, v in values.items():
            vals[K.index[degree][tuple(s)]] = v
        return cls(K, degree, vals, ring)

    # -- basic arithmetic ------------------------------------------------------
    def _check(self, other: "Cochain"):
        if other.complex is not self.complex:
            raise ValueError("cochains live on different complexes")
        if other.ring != self.ring:
            raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Cochain(self.complex, self.degree, [a + b for a, b in zip(self.values, other.values)], self.ring)

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Cochain(self.complex, self.degree, [a - b for a, b in zip(self.values, other.values)], self.ring)

    def __neg__(self) -> "Cochain":
        return Cochain(self.complex, self.degree, [-a for a in self.values], self.ring)

    def scale(self, k) -> "Cochain":
        return Cochain(self.complex, self.degree, [k * a for a in self.values], self.ring)

    def __rmul__(self, k) -> "Cochain":
        return self.scale(k)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Cochain) and other.complex is self.complex and other.ring == self.ring
                and other.degree == self.degree and other.values == self.values)

    def __hash__(self):
        return hash((id(self.complex), self.degree, self.ring, self.values))

    def __repr__(self) -> str:
        nz = {self.complex.simplices[self.degree][j]: v for j, v in enumerate(self.values) if v}
        return f"Cochain(deg={self.degree}, ring={self.ring}, {nz})"

    def is_zero(self) -> bool:
        return not any(self.values)

    def __getitem__(self, simplex: Sequence[int]):
        return self.values[self.complex.index[self.degree][tuple(simplex)]]

    # -- ring changes ----------------------------------------------------------
    def to_ring(self, ring: str) -> "Cochain":
        """Reduction (Z -> Z/2, Q -> Q/Z) or inclusion (Z -> Q)."""
        return Cochain(self.complex, self.degree, self.values, ring)

    def lift(self) -> "Cochain":
        """Canonical integer lift of a Z/2 cochain (values 0, 1) or rational lift of Q/Z (values in [0,1))."""
        if self.ring == "Z/2":
            return Cochain(self.complex, self.degree, self.values, "Z")
        if self.ring == "Q/Z":
            return Cochain(self.complex, self.degree, self.values, "Q")
        raise ValueError(f"no canonical lift from {self.ring}")

    def is_integral(self) -> bool:
        return all(Fraction(v).denominator == 1 for v in self.values)

    # -- structure maps --------------------------------------------------------
    def coboundary(self) -> "Cochain":
        K, k = self.complex, self.degree
        out = [0] * K.count(k + 1)
        if k + 1 <= K.dim:
            vals = self.values
            for j, faces in enumerate(K.faces_of[k + 1]):
                acc = 0
                for i, s in faces:
                    v = vals[i]
                    if v:
                        acc += s * v
                out[j] = acc
        return Cochain(K, k + 1, out, self.ring)

    def is_cocycle(self) -> bool:
        return self.coboundary().is_zero()

    def evaluate(self, chain: Chain):
        if chain.degree != self.degree:
            raise ValueError("degree mismatch in evaluation")
        total = sum(c * v for c, v in zip(chain.values, self.values) if c and v)
        return _normalize(total, self.ring)

    def cup(self, other: "Cochain") -> "Cochain":
        return cup(self, other)

    def __or__(self, other: "Cochain") -> "Cochain":
        return cup(self, other)


def coboundary(a: Cochain) -> Cochain:
    return a.coboundary()


def cup(a: Cochain, b: Cochain) -> Cochain:
    """Alexander-Whitney cup: (a u b)(v0..v_{p+q}) = a(v0..vp) b(vp..v_{p+q})."""
    a._check(b)
    K = a.complex
    p, q = a.degree, b.degree
    n = p + q
    out = [0] * K.count(n)
    if p >= 0 and q >= 0 and n <= K.dim:
        ia, ib = K.index[p], K.index[q]
        av, bv = a.values, b.values
        for j, s in enumerate(K.simplices[n]):
            x = av[ia[s[:p + 1]]]
            if x:
                y = bv[ib[s[p:]]]
                if y:
                    out[j] = x * y
    return Cochain(K, n, out, a.ring)


def cup_i(a: Cochain, b: Cochain, i: int) -> Cochain:
    """Steenrod's cup-i product with Z/2 coefficients.

    On a simplex with vertices 0..n (n = p + q - i) the value is the sum over
    0 <= u_0 < ... < u_i <= n of a on the union of the intervals
    [0,u_0], [u_1,u_2], ... times b on [u_0,u_1], [u_2,u_3], ..., keeping
    only terms where the faces have the right dimensions.
    """
    a._check(b)
    if a.ring != "Z/2":
        raise RingMismatchError("cup_i is implemented for Z/2 cochains")
    p, q = a.degree, b.degree
    if i < 0 or i > p + q:
        raise ValueError(f"cup_{i} needs 0 <= i <= |a| + |b| = {p + q}")
    K = a.complex
    n = p + q - i
    out = [0] * K.count(n)
    if n > K.dim or i > min(p, q):  # no face of the right size fits
        return Cochain(K, n, out, "Z/2")
    patterns = _cup_i_patterns(n, p, i)
    ia, ib = K.index[p], K.index[q]
    av, bv = a.values, b.values
    for j, s in enumerate(K.simplices[n]):
        acc = 0
        for fa, fb in patterns:
            x = av[ia[tuple(s[t] for t in fa)]]
            if x and bv[ib[tuple(s[t] for t in fb)]]:
                acc ^= 1
        out[j] = acc
    return Cochain(K, n, out, "Z/2")


_PATTERN_CACHE: dict[tuple[int, int, int], list[tuple[tuple[int, ...], tuple[int, ...]]]] = {}


def _cup_i_patterns(n: int, p: int, i: int):
    key = (n, p, i)
    if key not in _PATTERN_CACHE:
        pats = []
        for u in itertools.combinations(range(n + 1), i + 1):
            cuts = (0,) + u + (n,)
            fa: list[int] = []
            fb: list[int] = []
            for t in range(len(cuts) - 1):
                seg = range(cuts[t], cuts[t + 1] + 1)
                (fa if t % 2 == 0 else fb).extend(seg)
            if len(fa) == p + 1:
                pats.append((tuple(fa), tuple(fb)))
        _PATTERN_CACHE[key] = pats
    return _PATTERN_CACHE[key]


def cup_power(a: Cochain, m: int) -> Cochain:
    """a u a u ... (m factors); m = 0 gives the unit."""
    out = Cochain.unit(a.complex, a.ring)
    for _ in range(m):
        out = cup(out, a)
    return out
