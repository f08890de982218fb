"""Differential cochains (c, h, w) in a rational model.

Real-valued forms are modelled by rational simplicial cochains, wedge by
cup product, and the chain homotopy between them by zero. So R becomes Q
and R/Z becomes Q/Z, while all torsion phenomena stay intact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import AbelianInvariants, Matrix, solve_mixed
from .report import SuiteResult
from .simplicial.cochain import Cochain, cup
from .simplicial.cohomology import cohomology, trivialize
from .simplicial.complex import Chain, SimplicialComplex


class FiltrationError(ValueError):
    """Nonzero form component below the filtration degree."""


class NotClosedError(ValueError):
    pass


def _q(c: Cochain) -> Cochain:
    return c if c.ring == "Q" else c.to_ring("Q")


@dataclass(frozen=True)
class DifferentialCochain:
    """An element (c, h, w) of the degree-k part of the filtration-q complex."""

    q: int
    k: int
    c: Cochain
    h: Cochain
    omega: Cochain

    def __post_init__(self):
        c, h, w = self.c, _q(self.h), _q(self.omega)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "omega", w)
        if c.ring != "Z":
            raise ValueError("c must be an integer cochain")
        if (c.degree, h.degree, w.degree) != (self.k, self.k - 1, self.k):
            raise ValueError(f"degrees ({c.degree}, {h.degree}, {w.degree}) do not fit k = {self.k}")
        if not (c.complex is h.complex is w.complex):
            raise ValueError("components live on different complexes")
        if self.k < self.q and not w.is_zero():
            raise FiltrationError(f"form component must vanish in degree {self.k} < q = {self.q}")

    @property
    def complex(self) -> SimplicialComplex:
        return self.c.complex

    @classmethod
    def zero(cls, K: SimplicialComplex, q: int, k: int) -> "DifferentialCochain":
        return cls(q, k, Cochain.zero(K, k), Cochain.zero(K, k - 1, "Q"), Cochain.zero(K, k, "Q"))

    @classmethod
    def unit(cls, K: SimplicialComplex) -> "DifferentialCochain":
        return cls(0, 0, Cochain.unit(K), Cochain.zero(K, -1, "Q"), Cochain.unit(K, "Q"))

    def _same(self, other: "DifferentialCochain"):
        if (self.q, self.k) != (other.q, other.k) or self.complex is not other.complex:
            raise ValueError("differential cochains differ in filtration, degree or complex")

    def __add__(self, other: "DifferentialCochain") -> "DifferentialCochain":
        self._same(other)
        return DifferentialCochain(self.q, self.k, self.c + other.c, self.h + other.h, self.omega + other.omega)

    def __sub__(self, other: "DifferentialCochain") -> "DifferentialCochain":
        self._same(other)
        return DifferentialCochain(self.q, self.k, self.c - other.c, self.h - other.h, self.omega - other.omega)

    def __neg__(self) -> "DifferentialCochain":
        return DifferentialCochain(self.q, self.k, -self.c, -self.h, -self.omega)

    def is_zero(self) -> bool:
        return self.c.is_zero() and self.h.is_zero() and self.omega.is_zero()

    def is_closed(self) -> bool:
        return differential_d(self).is_zero()

    def __repr__(self) -> str:
        return f"DifferentialCochain(q={self.q}, k={self.k}, c={self.c.values}, h={self.h.values}, w={self.omega.values})"


def differential_d(x: DifferentialCochain) -> DifferentialCochain:
    """d(c, h, w) = (delta c, w - c - delta h, delta w)."""
    h2 = x.omega - _q(x.c) - x.h.coboundary()
    return DifferentialCochain(x.q, x.k + 1, x.c.coboundary(), h2, x.omega.coboundary())


def _require_closed(x: DifferentialCochain):
    if not x.is_closed():
        raise NotClosedError("differential cochain is not closed")


def curvature(x: DifferentialCochain) -> Cochain:
    _require_closed(x)
    return x.omega


def characteristic_class(x: DifferentialCochain):
    _require_closed(x)
    return cohomology(x.complex, x.k, "Z").class_of(x.c)


def differential_character(x: DifferentialCochain, z: Chain) -> Fraction:
    """h(z) mod 1 on a (k-1)-cycle z."""
    _require_closed(x)
    if z.degree != x.k - 1:
        raise ValueError(f"character is evaluated on (k-1)-cycles, got degree {z.degree}")
    if not z.boundary().is_zero():
        raise ValueError("chain is not a cycle")
    v = Fraction(x.h.evaluate(z))
    return v - math.floor(v)


def product(x: DifferentialCochain, y: DifferentialCochain) -> DifferentialCochain:
    """(c1 u c2, (-1)^|c1| c1 u h2 + h1 u w2, w1 u w2), filtration q1 + q2."""
    if x.complex is not y.complex:
        raise ValueError("product of differential cochains on different complexes")
    c1q = _q(x.c)
    h = cup(c1q, y.h).scale((-1) ** x.k) + cup(x.h, y.omega)
    return DifferentialCochain(x.q + y.q, x.k + y.k, cup(x.c, y.c), h, cup(x.omega, y.omega))


# -- witnesses for the exact sequences -------------------------------------------

def from_flat(u: Cochain, q: int) -> DifferentialCochain:
    """(-delta u, u, 0) for a rational (k-1)-cochain u with delta u integral (a Q/Z cocycle)."""
    u = _q(u)
    du = u.coboundary()
    if not du.is_integral():
        raise ValueError("u does not reduce to a Q/Z cocycle")
    K = u.complex
    return DifferentialCochain(q, u.degree + 1, -du.to_ring("Z"), u, Cochain.zero(K, u.degree + 1, "Q"))


def from_form(eta: Cochain, q: int) -> DifferentialCochain:
    """Topologically trivial element (0, eta, delta eta)."""
    eta = _q(eta)
    K = eta.complex
    return DifferentialCochain(q, eta.degree + 1, Cochain.zero(K, eta.degree + 1), eta, eta.coboundary())


def from_integral_cocycle(c: Cochain, q: int) -> DifferentialCochain:
    """A closed element with characteristic class [c].

    For k >= q this is (c, 0, c); below the filtration the class must be
    torsion and the element is (c, h, 0) with delta h = -c.
    """
    if not c.is_cocycle():
        raise NotClosedError("c is not a cocycle")
    K, k = c.complex, c.degree
    if k >= q:
        return DifferentialCochain(q, k, c, Cochain.zero(K, k - 1, "Q"), _q(c))
    h = trivialize(_q(-c))
    if h is None:
        raise ValueError(f"degree {k} < q = {q} needs a torsion class, [c] has infinite order")
    return DifferentialCochain(q, k, c, h, Cochain.zero(K, k, "Q"))


def curvature_lift(omega: Cochain, q: int) -> DifferentialCochain:
    """A closed element with curvature omega, for a closed rational cocycle with integral periods."""
    omega = _q(omega)
    K, k = omega.complex, omega.degree
    if k < q:
        raise FiltrationError("curvature lives in degrees >= q")
    if not omega.is_cocycle():
        raise NotClosedError("omega is not closed")
    HQ = cohomology(K, k, "Q")
    coords = HQ.coordinates(omega)
    if any(Fraction(a).denominator != 1 for a in coords):
        raise ValueError("omega does not have integral periods")
    HZ = cohomology(K, k, "Z")
    free = [g for g, o in zip(HZ.generators, HZ.orders) if o == 0]
    c = Cochain.zero(K, k)
    for a, g in zip(coords, free):
        c = c + g.scale(int(a))
    h = trivialize(omega - _q(c))
    assert h is not None
    x = DifferentialCochain(q, k, c, h, omega)
    assert x.is_closed()
    return x


def flat_preimage(x: DifferentialCochain) -> Cochain:
    """For closed x with zero curvature: u with delta u integral and x = from_flat(u)."""
    _require_closed(x)
    if not x.omega.is_zero():
        raise ValueError("curvature is nonzero, x is not flat")
    u = x.h
    assert from_flat(u, x.q) == x
    return u


def topologically_trivial_preimage(x: DifferentialCochain) -> tuple[Cochain, IsoResult]:
    """For closed x with [c] = 0: eta with x isomorphic to from_form(eta), plus the iso witness."""
    _require_closed(x)
    b = trivialize(x.c)
    if b is None:
        raise ValueError("characteristic class is nonzero")
    eta = x.h + _q(b)
    res = iso_test(x, from_form(eta, x.q))
    assert res.isomorphic
    return eta, res


def compatible_pair_lift(c: Cochain, omega: Cochain, q: int) -> DifferentialCochain | None:
    """Closed (c, h, omega) for an integral cocycle c and closed omega with [c] = [omega] over Q."""
    if not c.is_cocycle() or not _q(omega).is_cocycle():
        raise NotClosedError("c and omega must be cocycles")
    h = trivialize(_q(omega) - _q(c))
    if h is None:
        return None
    x = DifferentialCochain(q, c.degree, c, h, omega)
    assert x.is_closed()
    return x


def real_class_preimage(x: DifferentialCochain) -> tuple[Cochain, IsoResult]:
    """For closed x with [c] = 0 and zero curvature: a closed rational u with x isomorphic to from_flat(u)."""
    _require_closed(x)
    if not x.omega.is_zero():
        raise ValueError("curvature is nonzero")
    b = trivialize(x.c)
    if b is None:
        raise ValueError("characteristic class is nonzero")
    u = x.h + _q(b)
    assert u.is_cocycle()
    res = iso_test(x, from_flat(u, x.q))
    assert res.isomorphic
    return u, res


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    witness: DifferentialCochain | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.isomorphic


def iso_test(x: DifferentialCochain, y: DifferentialCochain) -> IsoResult:
    """Decide whether x - y = d(b, t, w') for some allowed (b, t, w'), returning the witness."""
    _require_closed(x)
    _require_closed(y)
    x._same(y)
    K, q, k = x.complex, x.q, x.k
    diff = x - y
    if k - 1 >= q:
        # w' is unconstrained: only delta b = c(x) - c(y) matters
        b = trivialize(diff.c)
        if b is None:
            return IsoResult(False, None, "characteristic classes differ")
        t = Cochain.zero(K, k - 2, "Q")
        w = diff.h + _q(b)
    else:
        if not diff.omega.is_zero():
            return IsoResult(False, None, "curvatures differ")
        dk = K.coboundary_matrix(k - 2) if k >= 2 else Matrix.zeros(K.count(k - 1), 0)
        sol = solve_mixed(dk, diff.h.values)
        if sol is None:
            return IsoResult(False, None, "characters differ on some (k-1)-cycle")
        t = Cochain(K, k - 2, sol, "Q")
        bq = -(diff.h + t.coboundary())
        b = bq.to_ring("Z")
        w = Cochain.zero(K, k - 1, "Q")
    witness = DifferentialCochain(q, k - 1, b, t, w)
    if differential_d(witness) != diff:
        raise ArithmeticError("internal error: witness does not reproduce the difference")
    return IsoResult(True, witness)


class DifferentialClass:
    """A closed differential cochain with its curvature and characteristic class."""

    def __init__(self, rep: DifferentialCochain):
        _require_closed(rep)
        self.representative = rep
        self.curvature = rep.omega
        self.characteristic_class = cohomology(rep.complex, rep.k, "Z").class_of(rep.c)

    def character(self, z: Chain) -> Fraction:
        return differential_character(self.representative, z)

    def __eq__(self, other) -> bool:
        return isinstance(other, DifferentialClass) and bool(iso_test(self.representative, other.representative))

    __hash__ = None  # type: ignore[assignment]


@dataclass
class GroupDescription:
    """Structure of the degree-k differential cohomology in filtration q."""

    q: int
    k: int
    kind: str
    integral: AbelianInvariants | None = None
    divisible_rank: int = 0
    torsion: tuple[int, ...] = ()
    curvature_rank: int = 0
    witnesses: dict[str, list[DifferentialCochain]] = field(default_factory=dict)

    def summary(self) -> str:
        flat = " + ".join([f"(Q/Z)^{self.divisible_rank}"] * bool(self.divisible_rank)
                          + [f"Z/{d}" for d in self.torsion]) or "0"
        if self.kind == "integral":
            return f"H^{self.k}(M;Z) = {self.integral}"
        if self.kind == "flat":
            return f"H^{self.k - 1}(M;Q/Z) = {flat}"
        return (f"extension: flat part H^{self.k - 1}(M;Q/Z) = {flat}; characteristic classes "
                f"H^{self.k}(M;Z) = {self.integral}; curvatures of rank {self.curvature_rank}")


def group_description(M: SimplicialComplex, q: int, k: int, with_witnesses: bool = True) -> GroupDescription:
    """Integral cohomology above the filtration, Q/Z cohomology below it, extension data at k = q."""
    HZ = homology_free_torsion(M, k)
    if k > q:
        return GroupDescription(q, k, "integral", integral=HZ)
    prev = homology_free_torsion(M, k - 1)
    if k < q:
        return GroupDescription(q, k, "flat", divisible_rank=prev.free_rank, torsion=HZ.torsion)
    desc = GroupDescription(q, k, "extension", integral=HZ, divisible_rank=prev.free_rank,
                            torsion=HZ.torsion, curvature_rank=HZ.free_rank)
    if with_witnesses and 0 <= k <= M.dim:
        H = cohomology(M, k, "Z")
        desc.witnesses["characteristic_class"] = [from_integral_cocycle(g, q) for g in H.generators]
        flat = []
        for g, o in zip(H.generators, H.orders):
            if o:
                u = trivialize(_q(g))
                flat.append(from_flat(u, q))
        desc.witnesses["torsion_from_flat"] = flat
        desc.witnesses["curvature"] = [curvature_lift(_q(g), q) for g, o in zip(H.generators, H.orders) if o == 0]
    return desc


def homology_free_torsion(M: SimplicialComplex, k: int) -> AbelianInvariants:
    """Invariants of H^k(M; Z) (zero outside 0..dim)."""
    if not 0 <= k <= M.dim:
        return AbelianInvariants()
    return cohomology(M, k, "Z").invariants


__all__ = [
    "DifferentialClass",
    "DifferentialCochain",
    "FiltrationError",
    "GroupDescription",
    "IsoResult",
    "NotClosedError",
    "characteristic_class",
    "curvature",
    "curvature_lift",
    "differential_character",
    "differential_d",
    "compatible_pair_lift",
    "exact_sequence_suite",
    "flat_preimage",
    "from_flat",
    "from_form",
    "from_integral_cocycle",
    "group_description",
    "iso_test",
    "product",
    "real_class_preimage",
    "topologically_trivial_preimage",
]


# -- randomized exactness suite ---------------------------------------------------------

def _random_fraction(rng, span: int = 5, den: int = 6) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def _random_cochain(rng, K: SimplicialComplex, degree: int, ring: str) -> Cochain:
    n = K.count(degree)
    if ring == "Z":
        return Cochain(K, degree, [rng.randint(-3, 3) for _ in range(n)], "Z")
    return Cochain(K, degree, [_random_fraction(rng) for _ in range(n)], "Q")


def _random_combination(rng, gens, K, degree, ring, rational=False) -> Cochain:
    out = Cochain.zero(K, degree, ring)
    for g in gens:
        a = _random_fraction(rng) if rational else rng.randint(-3, 3)
        out = out + (_q(g).scale(a) if rational else g.scale(a))
    return out


def _random_flat_cochain(rng, K: SimplicialComplex, j: int) -> Cochain:
    """Rational j-cochain whose coboundary is integral: a random Q/Z cocycle."""
    u = _random_cochain(rng, K, j, "Z").to_ring("Q")
    if 0 <= j <= K.dim:
        u = u + _random_combination(rng, cohomology(K, j, "Q").generators, K, j, "Q", rational=True)
        HZ1 = cohomology(K, j + 1, "Z") if j + 1 <= K.dim else None
        if HZ1 is not None:
            for g, o in zip(HZ1.generators, HZ1.orders):
                if o:
                    u = u + trivialize(_q(g)).scale(rng.randint(0, o - 1))
    if j - 1 >= 0:
        u = u + _random_cochain(rng, K, j - 1, "Q").coboundary()
    return u


def exact_sequence_suite(M: SimplicialComplex, k: int, rng, trials: int = 10) -> list[SuiteResult]:
    """Check the three exact sequences at k = q on random data, each step by an explicit solve.

    1. H^{k-1}(Q/Z) -> H^k_diff -> closed forms with integral periods
    2. forms / integral forms -> H^k_diff -> H^k(Z)
    3. H^{k-1}(Q)/H^{k-1}(Z) -> H^k_diff -> compatible pairs (c, omega)
    """
    q = k
    out = [SuiteResult("curvature"), SuiteResult("characteristic_class"), SuiteResult("compatible_pairs")]
    HZ = cohomology(M, k, "Z")
    HQ = cohomology(M, k, "Q")
    for _ in range(trials):
        # random closed element: integral class + form + flat part
        c = _random_combination(rng, HZ.generators, M, k, "Z") + _random_cochain(rng, M, k - 1, "Z").coboundary()
        base = curvature_lift(_q(c), q)
        x = base + from_form(_random_cochain(rng, M, k - 1, "Q"), q) + from_flat(_random_flat_cochain(rng, M, k - 1), q)
        if not x.is_closed():
            out[0].failures.append("random element not closed")
            continue

        # sequence 1: surjectivity onto integral-period forms, kernel = flat classes
        r = out[0]
        r.trials += 1
        omega = _random_combination(rng, [g for g, o in zip(HZ.generators, HZ.orders) if o == 0], M, k, "Z")
        omega = _q(omega) + _random_cochain(rng, M, k - 1, "Q").coboundary()
        lift = curvature_lift(omega, q)
        if lift.omega != omega:
            r.failures.append("curvature lift does not reproduce omega")
        y = x - curvature_lift(x.omega, q)
        if not y.omega.is_zero() or from_flat(flat_preimage(y), q) != y:
            r.failures.append("kernel of curvature not reached by a flat class")
        if not from_flat(_random_flat_cochain(rng, M, k - 1), q).omega.is_zero():
            r.failures.append("flat class with nonzero curvature")

        # sequence 2: characteristic class surjective, kernel = topologically trivial
        r = out[1]
        r.trials += 1
        cc = _random_combination(rng, HZ.generators, M, k, "Z")
        z = from_integral_cocycle(cc, q)
        if HZ.coordinates(z.c) != HZ.coordinates(cc):
            r.failures.append("characteristic class lift has the wrong class")
        y = x - from_integral_cocycle(x.c, q)
        try:
            topologically_trivial_preimage(y)
        except (ValueError, AssertionError) as exc:
            r.failures.append(f"kernel element not topologically trivial: {exc}")
        eta = _random_cochain(rng, M, k - 1, "Q")
        if not HZ.is_trivial_class(from_form(eta, q).c):
            r.failures.append("form has a nonzero characteristic class")

        # sequence 3: compatible pairs, kernel = real classes mod integral ones
        r = out[2]
        r.trials += 1
        lifted = compatible_pair_lift(x.c, x.omega, q)
        if lifted is None or lifted.c != x.c or lifted.omega != x.omega:
            r.failures.append("compatible pair did not lift")
        else:
            y = x - lifted
            try:
                u, _ = real_class_preimage(y)
            except (ValueError, AssertionError) as exc:
                r.failures.append(f"kernel element not a real class: {exc}")
        # an incompatible pair must not lift
        if HQ.rank:
            bad = _q(x.c) + _q(HQ.generators[0]).scale(Fraction(1, 2))
            if compatible_pair_lift(x.c, bad, q) is not None:
                r.failures.append("incompatible pair lifted")
    return out
