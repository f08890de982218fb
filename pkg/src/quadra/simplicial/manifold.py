"""Steenrod squares, Bocksteins, Wu classes and the kappa invariant of triangulated manifolds."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from ..lattice import IntegralLattice
from ..linalg import Matrix, signature_of_symmetric
from ..linalg import gf2
from .cochain import Cochain, cup, cup_i, cup_power
from .cohomology import CohomologyClass, NotACocycleError, _cache, cohomology, trivialize
from .complex import Chain, ComplexError, SimplicialComplex, fundamental_cycle


class PairingError(ValueError):
    """The mod-2 Poincare pairing is degenerate: not a closed manifold."""


class LiftError(ValueError):
    pass


def _fundamental(M: SimplicialComplex, ring: str, orientation: int | None) -> Chain:
    if orientation is None:
        orientation = getattr(M, "orientation", 1)
    key = ("fundamental", ring, orientation)
    cache = _cache(M)
    if key not in cache:
        cache[key] = fundamental_cycle(M, ring, orientation)
    return cache[key]


def _require_cocycle(c: Cochain, what: str = "cochain"):
    if not c.is_cocycle():
        raise NotACocycleError(f"{what} of degree {c.degree} is not a cocycle")


def steenrod_square(k: int, a: Cochain) -> CohomologyClass:
    """Sq^k of a mod-2 cocycle of degree n, represented by a cup_{n-k} a."""
    if a.ring != "Z/2":
        raise ValueError("Steenrod squares act on Z/2 cochains")
    if k < 0:
        raise ValueError("Sq^k needs k >= 0")
    _require_cocycle(a)
    n = a.degree
    rep = cup_i(a, a, n - k) if k <= n else Cochain.zero(a.complex, n + k, "Z/2")
    return cohomology(a.complex, n + k, "Z/2").class_of(rep)


def bockstein(a: Cochain) -> CohomologyClass:
    """Integral Bockstein of a mod-2 cocycle: the class of delta(lift)/2."""
    if a.ring != "Z/2":
        raise ValueError("Bockstein takes a Z/2 cochain")
    _require_cocycle(a)
    d = a.lift().coboundary()
    half = Cochain(a.complex, a.degree + 1, [v // 2 for v in d.values], "Z")
    return cohomology(a.complex, a.degree + 1, "Z").class_of(half)


def evaluate_top(c: Cochain, orientation: int | None = None):
    """<c, [M]> with the integer fundamental cycle (mod-2 cycle for Z/2)."""
    M = c.complex
    ring = "Z/2" if c.ring == "Z/2" else "Z"
    return c.evaluate(_fundamental(M, ring, orientation))


def wu_class(M: SimplicialComplex, k: int) -> CohomologyClass:
    """nu_k with <nu_k u x, [M]> = <Sq^k x, [M]> for every x of degree n-k."""
    key = ("wu", k)
    cache = _cache(M)
    if key in cache:
        return cache[key]
    n = M.dim
    Hk = cohomology(M, k, "Z/2")
    if not 0 <= k <= n:
        raise ValueError(f"Wu class degree {k} outside 0..{n}")
    Hd = cohomology(M, n - k, "Z/2")
    if Hk.rank != Hd.rank:
        raise PairingError(f"dim H^{k} = {Hk.rank} but dim H^{n - k} = {Hd.rank}")
    z = _fundamental(M, "Z/2", None)
    # P[i][j] = <b_j u x_i, [M]>, rhs[i] = <Sq^k x_i, [M]>
    cols = []
    for b in Hk.generators:
        cols.append(gf2.pack([cup(b, x).evaluate(z) for x in Hd.generators]))
    if gf2.rank(cols) != len(cols):
        raise PairingError("mod-2 Poincare pairing is degenerate")
    rhs = gf2.pack([steenrod_square(k, x).representative.evaluate(z) for x in Hd.generators])
    sol = gf2.solve(cols, rhs)
    coords = gf2.unpack(sol, Hk.rank)
    nu = Hk.class_of(Hk.element(coords))
    cache[key] = nu
    return nu


def verify_wu_class(M: SimplicialComplex, k: int, nu: Cochain) -> bool:
    """Independent re-check of <nu u x, [M]> = <Sq^k x, [M]> over a basis and all pairs of basis sums."""
    z = _fundamental(M, "Z/2", None)
    Hd = cohomology(M, M.dim - k, "Z/2")
    for x in Hd.generators:
        if cup(nu, x).evaluate(z) != steenrod_square(k, x).representative.evaluate(z):
            return False
    return True


def integral_wu_lift(M: SimplicialComplex, nu) -> Cochain:
    """An integer cocycle congruent to the mod-2 cocycle nu, as nu + 2 mu."""
    if isinstance(nu, CohomologyClass):
        nu = nu.representative
    if nu.ring != "Z/2":
        raise ValueError("Wu lift input must be a Z/2 cochain")
    _require_cocycle(nu)
    base = nu.lift()
    d = base.coboundary()
    target = Cochain(M, nu.degree + 1, [-(v // 2) for v in d.values], "Z")
    mu = trivialize(target)
    if mu is None:
        raise LiftError("no integral lift: the Bockstein of nu is nonzero")
    lam = base + mu.scale(2)
    assert lam.is_cocycle()
    return lam


def cup_pairing(M: SimplicialComplex, orientation: int | None = None) -> Matrix:
    """Gram matrix of <x u y, [M]> on the free generators of H^{n/2}(M; Z)."""
    n = M.dim
    if n % 2:
        raise ValueError("cup pairing needs even dimension")
    z = _fundamental(M, "Z", orientation)
    H = cohomology(M, n // 2, "Z")
    gens = [g for g, o in zip(H.generators, H.orders) if o == 0]
    G = [[cup(a, b).evaluate(z) for b in gens] for a in gens]
    return Matrix(len(gens), len(gens), G) if gens else Matrix.zeros(0, 0)


def signature(M: SimplicialComplex, orientation: int | None = None) -> int:
    if M.dim % 4:
        raise ValueError("signature is defined in dimensions divisible by 4")
    G = cup_pairing(M, orientation)
    if not G.rows:
        return 0
    pos, neg, _ = signature_of_symmetric(G)
    return pos - neg


def intersection_lattice(M: SimplicialComplex, orientation: int | None = None) -> IntegralLattice:
    """Free part of H^{2k}(M; Z) with the cup pairing."""
    return IntegralLattice(cup_pairing(M, orientation), label=f"H^{M.dim // 2}({M.name or 'M'})")


def is_wu_lift(M: SimplicialComplex, lam: Cochain) -> bool:
    n = M.dim
    nu = wu_class(M, n // 2)
    H2 = cohomology(M, n // 2, "Z/2")
    return H2.coordinates(lam.to_ring("Z/2")) == nu.coords


def kappa_manifold(M: SimplicialComplex, lam: Cochain, orientation: int | None = None,
                   check: bool = True) -> Fraction:
    """(<lambda u lambda, [M]> - sigma) / 8 for an integral Wu lift lambda."""
    if M.dim % 4:
        raise ValueError("kappa is defined on 4k-manifolds")
    _require_cocycle(lam, "lambda")
    if check and not is_wu_lift(M, lam):
        raise LiftError("lambda does not reduce to the middle Wu class")
    sq = evaluate_top(cup(lam, lam), orientation)
    return Fraction(sq - signature(M, orientation), 8)


def q_lambda(M: SimplicialComplex, lam: Cochain, x: Cochain, orientation: int | None = None) -> int:
    """(<x u x, [M]> - <x u lambda, [M]>) / 2."""
    _require_cocycle(x, "x")
    val = Fraction(evaluate_top(cup(x, x), orientation) - evaluate_top(cup(x, lam), orientation), 2)
    if val.denominator != 1:
        raise LiftError("lambda is not characteristic for the cup pairing")
    return int(val)


def q_lambda_shifted(M: SimplicialComplex, lam: Cochain, x: Cochain, orientation: int | None = None) -> Fraction:
    """kappa(lambda) + q_lambda(x): the refinement normalized so its value at 0 is kappa."""
    return kappa_manifold(M, lam, orientation) + q_lambda(M, lam, x, orientation)


def q_defect(M: SimplicialComplex, lam: Cochain, x: Cochain, y: Cochain, orientation: int | None = None) -> int:
    q = lambda c: q_lambda(M, lam, c, orientation)
    return q(x + y) - q(x) - q(y) + q(Cochain.zero(M, x.degree))


def change_of_spin_shift(M: SimplicialComplex, alpha: Cochain, nu: Mapping[int, Cochain] | Sequence[Cochain],
                         k: int) -> CohomologyClass:
    """beta of the degree-(2k-1) part of sum_{n>=1} alpha^(2^n - 1) nu_t.

    ``nu`` maps t to a mod-2 cocycle representing nu_t (nu_0 is the unit and
    may be omitted).
    """
    if alpha.ring != "Z/2" or alpha.degree != 1:
        raise ValueError("alpha must be a Z/2 1-cochain")
    _require_cocycle(alpha, "alpha")
    get = (lambda t: nu.get(t)) if isinstance(nu, Mapping) else (lambda t: nu[t] if t < len(nu) else None)
    total = Cochain.zero(M, 2 * k - 1, "Z/2")
    n = 1
    while 2 ** n - 1 <= 2 * k - 1:
        e = 2 ** n - 1
        t = 2 * k - 1 - e
        nu_t = Cochain.unit(M, "Z/2") if t == 0 else get(t)
        if nu_t is None:
            raise ValueError(f"missing Wu class nu_{t}")
        if isinstance(nu_t, CohomologyClass):
            nu_t = nu_t.representative
        total = total + cup(cup_power(alpha, e), nu_t)
        n += 1
    return bockstein(total)


__all__ = [
    "ComplexError",
    "LiftError",
    "PairingError",
    "bockstein",
    "change_of_spin_shift",
    "cup_pairing",
    "evaluate_top",
    "integral_wu_lift",
    "intersection_lattice",
    "is_wu_lift",
    "kappa_manifold",
    "q_defect",
    "q_lambda",
    "q_lambda_shifted",
    "signature",
    "steenrod_square",
    "verify_wu_class",
    "wu_class",
]
