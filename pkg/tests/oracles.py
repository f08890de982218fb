"""Independent reference computations used by the tests.

Nothing here imports quadra; each routine recomputes a quantity by the most
direct method available (brute-force enumeration, floating eigenvalues).
"""

import cmath
import itertools
import math
from fractions import Fraction

import numpy as np
from sympy import Matrix as SymMatrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf


def numpy_signature(gram):
    ev = np.linalg.eigvalsh(np.array(gram, dtype=float))
    return int(np.sum(ev > 1e-9) - np.sum(ev < -1e-9))


def dual_cosets(gram):
    """Representatives y in [0,1)^n of L*/L: all y in (1/d)Z^n with G y integral."""
    n = len(gram)
    d = abs(round(np.linalg.det(np.array(gram, dtype=float))))
    out = []
    for v in itertools.product(range(d), repeat=n):
        y = [Fraction(a, d) for a in v]
        if all(sum(g * x for g, x in zip(row, y)).denominator == 1 for row in gram):
            out.append(y)
    return out


def pair(gram, x, y):
    return sum(x[i] * gram[i][j] * y[j] for i in range(len(gram)) for j in range(len(gram)))


def lattice_gauss_sum(gram, lam):
    """(1/sqrt|L*/L|) sum exp(-2 pi i q(y)) with q(y) = (B(y,y) - B(y,lam))/2 mod 1."""
    cosets = dual_cosets(gram)
    total = sum(cmath.exp(-2j * math.pi * float((pair(gram, y, y) - pair(gram, y, lam)) / 2 % 1))
                for y in cosets)
    return total / math.sqrt(len(cosets))


def finite_gauss_sum(orders, Q):
    """Direct sum over the group for q(x) = x^T Q x mod 1."""
    total = 0j
    for x in itertools.product(*(range(n) for n in orders)):
        val = sum(Fraction(Q[i][j]) * x[i] * x[j] for i in range(len(x)) for j in range(len(x)))
        total += cmath.exp(-2j * math.pi * float(val % 1))
    return total / math.sqrt(math.prod(orders) if orders else 1)


def eighth_root_index(z):
    return round(cmath.phase(z) * 4 / math.pi) % 8


def is_characteristic(gram, lam):
    n = len(gram)
    return all((gram[i][i] - sum(gram[i][j] * lam[j] for j in range(n))) % 2 == 0 for i in range(n))


def homology_from_boundaries(dk, dk1, n_k):
    """(free rank, sorted torsion) of ker dk / im dk1 from numpy ranks and sympy Smith forms."""
    def rank(rows):
        return int(np.linalg.matrix_rank(np.array(rows, dtype=float))) if rows and rows[0] else 0

    free = n_k - rank(dk) - rank(dk1)
    tors = []
    if dk1 and dk1[0]:
        D = sympy_snf(SymMatrix(dk1), domain=ZZ)
        tors = sorted(abs(int(D[i, i])) for i in range(min(D.shape)) if abs(int(D[i, i])) > 1)
    return free, tuple(tors)


def bivariate_product(a, b, order):
    out = {}
    for (i, j), u in a.items():
        for (k, l), v in b.items():
            if i + j + k + l <= order:
                out[(i + k, j + l)] = out.get((i + k, j + l), 0) + u * v
    return {m: c for m, c in out.items() if c}


def _biv_inverse(a, order):
    """Inverse of a bivariate series with constant term 1, by the geometric series."""
    rest = {m: -c for m, c in a.items() if m != (0, 0)}
    out, power = {(0, 0): Fraction(1)}, {(0, 0): Fraction(1)}
    for _ in range(order):
        power = bivariate_product(power, rest, order)
        for m, c in power.items():
            out[m] = out.get(m, 0) + c
    return {m: c for m, c in out.items() if c}


def delta_series(coeffs, order):
    """Coefficients of s(x+y) / (s(x) s(y)) through total degree ``order``, s given by coeffs."""
    s_sum = {}
    for n, c in enumerate(coeffs[: order + 1]):
        for i in range(n + 1):
            if c:
                s_sum[(i, n - i)] = s_sum.get((i, n - i), 0) + Fraction(c) * math.comb(n, i)
    sx = {(n, 0): Fraction(c) for n, c in enumerate(coeffs[: order + 1]) if c}
    sy = {(0, n): Fraction(c) for n, c in enumerate(coeffs[: order + 1]) if c}
    return bivariate_product(s_sum, _biv_inverse(bivariate_product(sx, sy, order), order), order)


def negate_variables(poly):
    return {(i, j): c * (-1) ** (i + j) for (i, j), c in poly.items()}


def multiplicative_sequence_low(h):
    """K_1..K_3 for prod h(t_i), h(t) = 1 + h1 t + h2 t^2 + h3 t^3, in p_j = e_j(t).

    Keys are exponent tuples (a1, a2, a3) of p1^a1 p2^a2 p3^a3.
    """
    h1, h2, h3 = (Fraction(v) for v in h)
    K1 = {(1,): h1}
    K2 = {(2, 0): h2, (0, 1): h1 * h1 - 2 * h2}
    K3 = {(3, 0, 0): h3, (1, 1, 0): -3 * h3 + h1 * h2, (0, 0, 1): 3 * h3 - 3 * h1 * h2 + h1 ** 3}
    return [{m: c for m, c in K.items() if c} for K in (K1, K2, K3)]


def order_profile(orders):
    """Multiset of element orders of Z/n_1 + ... + Z/n_k; determines a finite abelian group."""
    prof = {}
    for x in itertools.product(*(range(n) for n in orders)):
        o = math.lcm(*(n // math.gcd(a, n) for a, n in zip(x, orders))) if orders else 1
        prof[o] = prof.get(o, 0) + 1
    return prof


def finite_functor_pairs(source, target, d):
    """Element-order profile of {h1 in Hom(B, Q/Z) : h1 o d = 0} for finite A, B.

    With A and B finite every h0: A -> Q vanishes and every h: B -> Q is zero,
    so pairs are exactly these h1 and no identifications occur.
    """
    found = []
    for y in itertools.product(*(range(n) for n in target)):
        h1 = [Fraction(a, n) for a, n in zip(y, target)]
        if all(sum(h1[i] * d[i][j] for i in range(len(target))).denominator == 1 for j in range(len(source))):
            found.append(h1)
    prof = {}
    for h in found:
        o = math.lcm(*(x.denominator for x in h)) if h else 1
        prof[o] = prof.get(o, 0) + 1
    return prof


def cokernel_profile(target, d):
    """Element-order profile of B / d(A) by enumerating B and the image."""
    image = {tuple(0 for _ in target)}
    cols = [tuple(d[i][j] % n for i, n in enumerate(target)) for j in range(len(d[0]) if d else 0)]
    frontier = list(image)
    while frontier:
        nxt = []
        for x in frontier:
            for c in cols:
                y = tuple((a + b) % n for a, b, n in zip(x, c, target))
                if y not in image:
                    image.add(y)
                    nxt.append(y)
        frontier = nxt
    elements = list(itertools.product(*(range(n) for n in target)))
    size = len(elements) // len(image)
    prof = {}
    for x in elements:
        o = 1
        while tuple(a * o % n for a, n in zip(x, target)) not in image:
            o += 1
        prof[o] = prof.get(o, 0) + 1
    return {o: c // len(image) for o, c in prof.items()}, size
