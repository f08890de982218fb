"""Truncated power series, multiplicative sequences and the spin Wu series."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Sequence


class SeriesError(ValueError):
    pass


def _reduce(x, modulus: int | None):
    if modulus is None:
        x = Fraction(x)
        return int(x) if x.denominator == 1 else x
    x = Fraction(x)
    if x.denominator != 1:
        raise SeriesError(f"non-integral coefficient {x} in a series mod {modulus}")
    return int(x) % modulus


class FormalSeries:
    """a_0 + a_1 x + ... + a_D x^D, exact through order D.

    Coefficients are rationals, or integers mod ``modulus`` when given.
    """

    __slots__ = ("coeffs", "order", "modulus")

    def __init__(self, coeffs: Iterable, order: int, modulus: int | None = None):
        c = list(coeffs)[: order + 1]
        c += [0] * (order + 1 - len(c))
        self.order = order
        self.modulus = modulus
        self.coeffs = tuple(_reduce(a, modulus) for a in c)

    @classmethod
    def one(cls, order: int, modulus: int | None = None) -> "FormalSeries":
        return cls([1], order, modulus)

    @classmethod
    def x(cls, order: int, modulus: int | None = None) -> "FormalSeries":
        return cls([0, 1], order, modulus)

    def __getitem__(self, n: int):
        return self.coeffs[n] if 0 <= n <= self.order else 0

    def __repr__(self) -> str:
        return f"FormalSeries({[str(a) for a in self.coeffs]}, order={self.order})"

    def __str__(self) -> str:
        terms = []
        for n, a in enumerate(self.coeffs):
            if a:
                mono = "" if n == 0 else ("x" if n == 1 else f"x^{n}")
                coef = str(a) if (mono == "" or a not in (1, -1)) else ("-" if a == -1 else "")
                terms.append(f"{coef}{'*' if coef not in ('', '-') and mono else ''}{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def _like(self, coeffs) -> "FormalSeries":
        return FormalSeries(coeffs, self.order, self.modulus)

    def _match(self, other) -> "FormalSeries":
        if not isinstance(other, FormalSeries):
            return FormalSeries([other], self.order, self.modulus)
        if other.order != self.order or other.modulus != self.modulus:
            raise SeriesError("series have different truncation orders or coefficient rings")
        return other

    def __eq__(self, other) -> bool:
        return (isinstance(other, FormalSeries) and (self.order, self.modulus, self.coeffs)
                == (other.order, other.modulus, other.coeffs))

    def __hash__(self):
        return hash((self.order, self.modulus, self.coeffs))

    def __add__(self, other) -> "FormalSeries":
        other = self._match(other)
        return self._like(a + b for a, b in zip(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self) -> "FormalSeries":
        return self._like(-a for a in self.coeffs)

    def __sub__(self, other) -> "FormalSeries":
        return self + (-self._match(other))

    def __mul__(self, other) -> "FormalSeries":
        if not isinstance(other, FormalSeries):
            return self._like(a * other for a in self.coeffs)
        other = self._match(other)
        D = self.order
        out = [0] * (D + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(D + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return self._like(out)

    __rmul__ = __mul__

    def inverse(self) -> "FormalSeries":
        a0 = self.coeffs[0]
        if self.modulus is None:
            if a0 == 0:
                raise SeriesError("series with zero constant term is not invertible")
            inv0 = 1 / Fraction(a0)
        else:
            if math.gcd(a0, self.modulus) != 1:
                raise SeriesError(f"constant term {a0} is not a unit mod {self.modulus}")
            inv0 = pow(a0, -1, self.modulus)
        D = self.order
        b = [0] * (D + 1)
        b[0] = inv0
        for n in range(1, D + 1):
            s = sum(self.coeffs[i] * b[n - i] for i in range(1, n + 1))
            b[n] = -s * inv0
            if self.modulus is not None:
                b[n] %= self.modulus
        return self._like(b)

    def __truediv__(self, other) -> "FormalSeries":
        if not isinstance(other, FormalSeries):
            return self * (1 / Fraction(other))
        return self * self._match(other).inverse()

    def sqrt(self) -> "FormalSeries":
        return series_sqrt(self)

    def negate_variable(self) -> "FormalSeries":
        """s(-x)."""
        return self._like(a if n % 2 == 0 else -a for n, a in enumerate(self.coeffs))

    def compose(self, inner: "FormalSeries") -> "FormalSeries":
        """s(inner(x)); inner must have zero constant term."""
        inner = self._match(inner)
        if inner.coeffs[0]:
            raise SeriesError("composition needs an inner series with zero constant term")
        out = self._like([0])
        power = self._like([1])
        for a in self.coeffs:
            if a:
                out = out + power * a
            power = power * inner
        return out

    def truncate(self, order: int) -> "FormalSeries":
        return FormalSeries(self.coeffs, order, self.modulus)

    def reduce(self, modulus: int) -> "FormalSeries":
        return FormalSeries(self.coeffs, self.order, modulus)

    def is_even(self) -> bool:
        return all(a == 0 for a in self.coeffs[1::2])


def series_sqrt(s: FormalSeries) -> FormalSeries:
    """Square root with constant term 1 by Newton iteration r <- (r + s/r)/2."""
    if s.modulus is not None:
        raise SeriesError("square root is computed over Q")
    if s[0] != 1:
        raise SeriesError("square root needs constant term 1")
    r = FormalSeries([1], 0)
    prec = 0
    while prec < s.order:
        prec = min(2 * prec + 1, s.order)
        target = s.truncate(prec)
        r = r.truncate(prec)
        r = (r + target / r) * Fraction(1, 2)
    r = r.truncate(s.order)
    assert r * r == s
    return r


def log_series(s: FormalSeries) -> FormalSeries:
    """log s for constant term 1."""
    if s[0] != 1:
        raise SeriesError("log needs constant term 1")
    u = s - 1
    out = FormalSeries([0], s.order)
    power = FormalSeries([1], s.order)
    for m in range(1, s.order + 1):
        power = power * u
        out = out + power * Fraction((-1) ** (m + 1), m)
    return out


def exp_series(order: int) -> FormalSeries:
    return FormalSeries([Fraction(1, math.factorial(n)) for n in range(order + 1)], order)


def wu_line_series(order: int, modulus: int | None = None) -> FormalSeries:
    """1 + x + x^3 + x^7 + ...: coefficient 1 exactly at exponents 2^n - 1."""
    coeffs = [1 if (n + 1) & n == 0 else 0 for n in range(order + 1)]
    return FormalSeries(coeffs, order, modulus)


def spin_wu_series(order: int) -> FormalSeries:
    """g(x) = sqrt(f(x) f(-x)) for the Wu line series f."""
    f = wu_line_series(order)
    return series_sqrt(f * f.negate_variable())


def l_series(order: int) -> FormalSeries:
    """x / tanh(x) = x cosh(x) / sinh(x)."""
    cosh = FormalSeries([Fraction(1, math.factorial(n)) if n % 2 == 0 else 0 for n in range(order + 1)], order)
    sinh_over_x = FormalSeries([Fraction(1, math.factorial(n + 1)) if n % 2 == 0 else 0
                                for n in range(order + 1)], order)
    return cosh / sinh_over_x


# -- multivariate truncated polynomials --------------------------------------------

class GradedPoly:
    """Sparse polynomial in variables of given degrees, truncated above total degree D.

    Optional ``modulus`` reduces coefficients; ``nilpotent`` maps a variable
    index to the exponent at which it vanishes (2 for a square-zero class).
    """

    __slots__ = ("terms", "degrees", "order", "modulus", "nilpotent")

    def __init__(self, terms: dict, degrees: Sequence[int], order: int, modulus: int | None = None,
                 nilpotent: dict[int, int] | None = None):
        self.degrees = tuple(degrees)
        self.order = order
        self.modulus = modulus
        self.nilpotent = dict(nilpotent or {})
        clean = {}
        for mono, c in terms.items():
            if self._keep(mono):
                c = _reduce(c, modulus)
                if c:
                    clean[mono] = c
        self.terms = clean

    def _keep(self, mono) -> bool:
        if sum(e * d for e, d in zip(mono, self.degrees)) > self.order:
            return False
        return all(mono[i] < n for i, n in self.nilpotent.items())

    def _like(self, terms) -> "GradedPoly":
        return GradedPoly(terms, self.degrees, self.order, self.modulus, self.nilpotent)

    def constant(self, c) -> "GradedPoly":
        return self._like({(0,) * len(self.degrees): c})

    def var(self, i: int, coeff=1) -> "GradedPoly":
        mono = tuple(int(j == i) for j in range(len(self.degrees)))
        return self._like({mono: coeff})

    def __add__(self, other) -> "GradedPoly":
        if not isinstance(other, GradedPoly):
            other = self.constant(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return self._like(out)

    __radd__ = __add__

    def __neg__(self) -> "GradedPoly":
        return self._like({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "GradedPoly":
        if not isinstance(other, GradedPoly):
            other = self.constant(other)
        return self + (-other)

    def __mul__(self, other) -> "GradedPoly":
        if not isinstance(other, GradedPoly):
            return self._like({m: c * other for m, c in self.terms.items()})
        out: dict = {}
        degs = self.degrees
        D = self.order
        other_items = [(m, c, sum(e * d for e, d in zip(m, degs))) for m, c in other.terms.items()]
        for m1, c1 in self.terms.items():
            w1 = sum(e * d for e, d in zip(m1, degs))
            for m2, c2, w2 in other_items:
                if w1 + w2 > D:
                    continue
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "GradedPoly":
        out = self.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedPoly):
            return self == self.constant(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def constant_term(self):
        return self.terms.get((0,) * len(self.degrees), 0)

    def inverse(self) -> "GradedPoly":
        """1 / p for a unit constant term, by the geometric series in the nilpotent part."""
        a0 = self.constant_term()
        if self.modulus is None:
            if a0 == 0:
                raise SeriesError("not invertible")
            inv0 = 1 / Fraction(a0)
        else:
            inv0 = pow(int(a0), -1, self.modulus)
        u = self * inv0 - 1  # nilpotent modulo truncation
        out = self.constant(1)
        term = self.constant(1)
        for _ in range(self.order + max(self.nilpotent.values(), default=0) + 1):
            term = term * (-u)
            if not term.terms:
                break
            out = out + term
        return out * inv0

    def homogeneous(self, weight: int) -> "GradedPoly":
        return self._like({m: c for m, c in self.terms.items()
                           if sum(e * d for e, d in zip(m, self.degrees)) == weight})

    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.terms.values())

    def reduce(self, modulus: int) -> "GradedPoly":
        return GradedPoly(self.terms, self.degrees, self.order, modulus, self.nilpotent)

    def __repr__(self) -> str:
        return f"GradedPoly({self.terms})"


def substitute(s: FormalSeries, linear: GradedPoly) -> GradedPoly:
    """s(L) for a polynomial L without constant term."""
    out = linear.constant(0)
    power = linear.constant(1)
    for a in s.coeffs:
        if a:
            out = out + power * a
        power = power * linear
        if not power.terms:
            break
    return out


def _bivariate(order: int, modulus=None) -> tuple[GradedPoly, GradedPoly]:
    base = GradedPoly({}, (1, 1), order, modulus)
    return base.var(0), base.var(1)


def delta_two_variable(s: FormalSeries, x: GradedPoly | None = None, y: GradedPoly | None = None) -> GradedPoly:
    """s(x+y) / (s(x) s(y)) as a truncated series in two (or more) variables."""
    if s[0] != 1:
        raise SeriesError("delta needs constant term 1")
    if x is None or y is None:
        x, y = _bivariate(s.order, s.modulus)
    return substitute(s, x + y) * substitute(s, x).inverse() * substitute(s, y).inverse()


def delta_g(order: int = 20) -> GradedPoly:
    return delta_two_variable(spin_wu_series(order))


def delta_cocycle_defect(s: FormalSeries) -> GradedPoly:
    """delta s(y,z) delta s(x,y+z) - delta s(x+y,z) delta s(x,y) in three variables."""
    base = GradedPoly({}, (1, 1, 1), s.order, s.modulus)
    x, y, z = base.var(0), base.var(1), base.var(2)
    d = lambda a, b: delta_two_variable(s, a, b)
    return d(y, z) * d(x, y + z) - d(x + y, z) * d(x, y)


def delta_symmetry_defect(s: FormalSeries) -> GradedPoly:
    x, y = _bivariate(s.order, s.modulus)
    return delta_two_variable(s, x, y) - delta_two_variable(s, y, x)


def mod4_square_check(order: int) -> bool:
    """delta f(x,y) delta f(-x,-y) = delta f(x,y)^2 mod 4 through total order ``order``."""
    f = wu_line_series(order)
    x, y = _bivariate(order)
    d = delta_two_variable(f, x, y)
    dn = delta_two_variable(f, -x, -y)
    if not (d.is_integral() and dn.is_integral()):
        return False
    return (d * dn).reduce(4) == (d * d).reduce(4)


# -- Pontryagin polynomials ----------------------------------------------------------

class PontryaginPolynomial:
    """Rational polynomial in p_1, p_2, ... (p_i of degree 4i), keyed by exponent tuples."""

    def __init__(self, terms: dict[tuple[int, ...], Fraction]):
        self.terms = {tuple(m): Fraction(c) for m, c in terms.items() if c}

    @property
    def degree(self) -> int:
        """Cohomological degree 4 * (weight)."""
        ws = {sum((i + 1) * e for i, e in enumerate(m)) for m in self.terms}
        if len(ws) > 1:
            raise ValueError("polynomial is not homogeneous")
        return 4 * ws.pop() if ws else 0

    def _canon(self):
        out = {}
        for m, c in self.terms.items():
            m = list(m)
            while m and m[-1] == 0:
                m.pop()
            out[tuple(m)] = c
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, PontryaginPolynomial) and self._canon() == other._canon()

    def __hash__(self):
        return hash(tuple(sorted(self._canon().items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        den = math.lcm(*(c.denominator for c in self.terms.values()))
        parts = []
        for m, c in sorted(self._canon().items(), key=lambda t: (-len(t[0]), [-e for e in reversed(t[0])])):
            n = int(c * den)
            mono = "*".join(f"p{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e)
            if not mono:
                body = str(abs(n))
            elif abs(n) == 1:
                body = mono
            else:
                body = f"{abs(n)}*{mono}"
            parts.append(("-" if n < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        if den == 1:
            return text
        return f"({text})/{den}" if len(parts) > 1 else f"{text}/{den}"

    def __repr__(self) -> str:
        return f"PontryaginPolynomial({self})"


def _power_sums_in_elementary(k: int) -> list[GradedPoly]:
    """P_j = sum_i z_i^j written in e_1..e_k by Newton's identities, j = 1..k."""
    base = GradedPoly({}, tuple(range(1, k + 1)), k)
    e = [None] + [base.var(i) for i in range(k)]
    P: list = [None]
    for j in range(1, k + 1):
        val = e[j] * ((-1) ** (j - 1) * j)
        for i in range(1, j):
            val = val + e[i] * P[j - i] * ((-1) ** (i - 1))
        P.append(val)
    return P[1:]


def multiplicative_sequence(series: FormalSeries, k: int) -> PontryaginPolynomial:
    """Degree-4k part of prod_i Q(x_i) in the Pontryagin classes p_j = e_j(x_i^2).

    ``series`` must be even with constant term 1.
    """
    if not series.is_even():
        raise SeriesError("multiplicative sequences in Pontryagin classes need an even series")
    if series[0] != 1:
        raise SeriesError("characteristic series must have constant term 1")
    if 2 * k > series.order:
        raise SeriesError(f"series known to order {series.order}, need order {2 * k}")
    Gz = FormalSeries([series[2 * j] for j in range(k + 1)], k)
    logG = log_series(Gz)
    P = _power_sums_in_elementary(k)
    L = P[0] * 0
    for j in range(1, k + 1):
        if logG[j]:
            L = L + P[j - 1] * logG[j]
    # exp(L) truncated at weight k
    out = L.constant(1)
    term = L.constant(1)
    for m in range(1, k + 1):
        term = term * L * Fraction(1, m)
        out = out + term
    part = out.homogeneous(k)
    return PontryaginPolynomial(part.terms)


def spin_wu_class(k: int) -> PontryaginPolynomial:
    """Rational degree-4k spin Wu class in Pontryagin classes."""
    return multiplicative_sequence(spin_wu_series(2 * k), k)


def spin_wu_inverse_bundle(k: int) -> PontryaginPolynomial:
    """Degree-4k spin Wu class of -T in the Pontryagin classes of T."""
    return multiplicative_sequence(spin_wu_series(2 * k).inverse(), k)


def l_genus(k: int) -> PontryaginPolynomial:
    return multiplicative_sequence(l_series(2 * k), k)


# -- change of spin structure -------------------------------------------------------

def change_of_spin_identity(order: int) -> bool:
    """Compare nu_t(V) f(a+e) / ((1+e) f(a)) with nu_t(V) (1 + e sum_{n>=1} a^(2^n-1)).

    Computed in Z/2[a, e, nu_1, ..., nu_D]/(e^2), truncated at total degree D.
    """
    lhs, rhs = change_of_spin_sides(order)
    return lhs == rhs


def change_of_spin_sides(order: int) -> tuple[GradedPoly, GradedPoly]:
    D = max(order, 0)
    degrees = (1, 1) + tuple(range(1, D + 1))
    base = GradedPoly({}, degrees, D, modulus=2, nilpotent={1: 2})
    a, e = base.var(0), base.var(1)
    nu_t = base.constant(1)
    for i in range(1, D + 1):
        nu_t = nu_t + base.var(i + 1)
    f = wu_line_series(D, modulus=2)
    lhs = nu_t * substitute(f, a + e) * (base.constant(1) + e).inverse() * substitute(f, a).inverse()
    tail = base.constant(0)
    n = 1
    while 2 ** n - 1 <= D:
        tail = tail + a ** (2 ** n - 1)
        n += 1
    rhs = nu_t * (base.constant(1) + e * tail)
    return lhs, rhs


def epsilon_free_part(p: GradedPoly) -> GradedPoly:
    """Set the square-zero variable (index 1) to zero."""
    return p._like({m: c for m, c in p.terms.items() if m[1] == 0})


SERIES_BUILDERS: dict[str, Callable[[int], FormalSeries]] = {
    "wu-line": wu_line_series,
    "spin-wu": spin_wu_series,
    "l": l_series,
}
