"""Linear algebra over the two-element field.

Vectors are packed into Python ints (bit i = coordinate i), which keeps
elimination on a few hundred coordinates fast.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def pack(v: Sequence[int]) -> int:
    out = 0
    for i, x in enumerate(v):
        if x & 1:
            out |= 1 << i
    return out


def unpack(x: int, n: int) -> tuple[int, ...]:
    return tuple((x >> i) & 1 for i in range(n))


class Echelon:
    """Incremental echelon basis; remembers how each basis row was formed.

    ``add`` returns True if the vector was independent. ``reduce`` returns
    the residue together with the combination (bitmask over inserted
    vectors) that was subtracted.
    """

    def __init__(self):
        self.rows: dict[int, tuple[int, int]] = {}  # pivot bit -> (row, combination)
        self.count = 0

    def reduce(self, v: int) -> tuple[int, int]:
        combo = 0
        residue, w = 0, v
        while w:
            p = w.bit_length() - 1
            hit = self.rows.get(p)
            if hit is None:
                residue |= 1 << p
                w ^= 1 << p
            else:
                w ^= hit[0]
                combo ^= hit[1]
        return residue, combo

    def add(self, v: int) -> bool:
        tag = 1 << self.count
        self.count += 1
        residue, combo = self.reduce(v)
        if not residue:
            return False
        self.rows[residue.bit_length() - 1] = (residue, combo ^ tag)
        return True


def rank(vectors: Iterable[int]) -> int:
    e = Echelon()
    return sum(e.add(v) for v in vectors)


def nullspace(columns: Sequence[int], nrows: int) -> list[int]:
    """Kernel basis of the matrix whose columns are ``columns``.

    Each kernel vector is returned packed over column indices.
    """
    e = Echelon()
    kernel = []
    for j, c in enumerate(columns):
        residue, combo = e.reduce(c)
        if residue == 0:
            kernel.append(combo | (1 << j))
            e.count += 1
        else:
            e.rows[residue.bit_length() - 1] = (residue, combo | (1 << j))
            e.count += 1
    return kernel


def solve(columns: Sequence[int], b: int) -> int | None:
    """Packed x (over column indices) with sum_j x_j columns[j] = b, or None."""
    e = Echelon()
    for j, c in enumerate(columns):
        residue, combo = e.reduce(c)
        e.count += 1
        if residue:
            e.rows[residue.bit_length() - 1] = (residue, combo | (1 << j))
    residue, combo = e.reduce(b)
    if residue:
        return None
    return combo


def matvec(columns: Sequence[int], x: int) -> int:
    out = 0
    j = 0
    while x:
        if x & 1:
            out ^= columns[j]
        x >>= 1
        j += 1
    return out
