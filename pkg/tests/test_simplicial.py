import random
from fractions import Fraction

import pytest

from oracles import homology_from_boundaries

from quadra.simplicial import (
    Chain,
    Cochain,
    ComplexError,
    SimplicialComplex,
    bockstein,
    boundary_of_simplex,
    cohomology,
    cross,
    cup,
    cup_i,
    fundamental_cycle,
    homology_invariants,
    integral_wu_lift,
    integrate_interval,
    kappa_manifold,
    load,
    q_lambda,
    restrict_end,
    signature,
    slant,
    steenrod_square,
    wu_class,
)
from quadra.simplicial.manifold import cup_pairing, intersection_lattice, q_defect

BUILTINS = ["S1", "S2", "S3", "RP2", "T2", "RP3", "CP2", "S2xS2"]

EXPECTED_HOMOLOGY = {
    "S1": ["Z", "Z"],
    "S2": ["Z", "0", "Z"],
    "S3": ["Z", "0", "0", "Z"],
    "RP2": ["Z", "Z/2", "0"],
    "T2": ["Z", "Z + Z", "Z"],
    "RP3": ["Z", "Z/2", "0", "Z"],
    "CP2": ["Z", "0", "Z", "0", "Z"],
    "S2xS2": ["Z", "0", "Z + Z", "0", "Z"],
}


def rand_cochain(rng, K, deg, ring="Z/2", lo=0, hi=1):
    return Cochain(K, deg, [rng.randint(lo, hi) for _ in range(K.count(deg))], ring)


@pytest.mark.parametrize("name", BUILTINS)
def test_builtin_homology_against_oracle(name):
    K = load(name)
    assert [str(homology_invariants(K, k)) for k in range(K.dim + 1)] == EXPECTED_HOMOLOGY[name]
    for k in range(K.dim + 1):
        inv = homology_invariants(K, k)
        assert (inv.free_rank, tuple(sorted(inv.torsion))) == homology_from_boundaries(K.boundary_matrix(k).tolist(), K.boundary_matrix(k + 1).tolist(), K.count(k))


@pytest.mark.parametrize("name", BUILTINS)
def test_boundary_squares_to_zero_and_euler(name):
    K = load(name)
    for k in range(2, K.dim + 1):
        assert (K.boundary_matrix(k - 1) @ K.boundary_matrix(k)).is_zero()
    ranks = [homology_invariants(K, k).free_rank for k in range(K.dim + 1)]
    assert sum((-1) ** k * r for k, r in enumerate(ranks)) == K.euler_characteristic


def test_complex_validation():
    with pytest.raises(ComplexError):
        SimplicialComplex(3, [[0, 1, 5]])
    K = SimplicialComplex(4, [[0, 1, 2], [1, 2], [3]])
    assert K.facets == [(3,), (0, 1, 2)]
    assert boundary_of_simplex(2).f_vector == (4, 6, 4)


def test_cohomology_rings():
    RP2 = load("RP2")
    assert str(cohomology(RP2, 2, "Z").invariants) == "Z/2"
    assert cohomology(RP2, 1, "Z/2").rank == 1
    assert cohomology(RP2, 2, "Z/2").rank == 1
    assert cohomology(load("T2"), 1, "Q").rank == 2


@pytest.mark.parametrize("name", ["T2", "RP2", "CP2", "S3"])
def test_cup_leibniz_rule(name):
    K = load(name)
    rng = random.Random(7)
    for _ in range(40):
        p = rng.randint(0, K.dim)
        q = rng.randint(0, K.dim - p)
        a = rand_cochain(rng, K, p, "Z", -3, 3)
        b = rand_cochain(rng, K, q, "Z", -3, 3)
        lhs = cup(a, b).coboundary()
        rhs = cup(a.coboundary(), b) + cup(a, b.coboundary()).scale((-1) ** p)
        assert lhs == rhs


def oracle_cup1(a, b):
    """(a u_1 b)(0..n) = sum_j a(0..j, j+q..n) b(j..j+q) over Z/2."""
    K = a.complex
    p, q = a.degree, b.degree
    n = p + q - 1
    vals = []
    for s in K.simplices[n]:
        acc = 0
        for j in range(0, n - q + 1):
            fa = s[: j + 1] + s[j + q:]
            fb = s[j: j + q + 1]
            if len(fa) == p + 1:
                acc ^= a[fa] * b[fb] % 2
        vals.append(acc)
    return Cochain(K, n, vals, "Z/2")


@pytest.mark.parametrize("name", ["RP2", "T2", "RP3"])
def test_cup_zero_and_one_against_explicit_formulas(name):
    K = load(name)
    rng = random.Random(11)
    for _ in range(30):
        p = rng.randint(1, K.dim)
        q = rng.randint(1, K.dim + 1 - p)
        a, b = rand_cochain(rng, K, p), rand_cochain(rng, K, q)
        assert cup_i(a, b, 0) == cup(a, b)
        if p + q - 1 <= K.dim:
            assert cup_i(a, b, 1) == oracle_cup1(a, b)


@pytest.mark.parametrize("name", ["RP2", "T2", "S3", "RP3", "CP2"])
def test_cup_i_coboundary_formula(name):
    K = load(name)
    rng = random.Random(5)
    checked = 0
    while checked < 60:
        p, q = rng.randint(0, K.dim), rng.randint(0, K.dim)
        i = rng.randint(0, min(p, q))
        if p + q - i + 1 > K.dim:
            continue
        checked += 1
        a, b = rand_cochain(rng, K, p), rand_cochain(rng, K, q)
        rhs = cup_i(a.coboundary(), b, i) + cup_i(a, b.coboundary(), i)
        if i:
            rhs = rhs + cup_i(a, b, i - 1) + cup_i(b, a, i - 1)
        assert cup_i(a, b, i).coboundary() == rhs


def test_rp2_steenrod_and_wu():
    RP2 = load("RP2")
    a = cohomology(RP2, 1, "Z/2").generators[0]
    assert not steenrod_square(1, a).is_zero()
    assert steenrod_square(0, a) == cohomology(RP2, 1, "Z/2").class_of(a)
    nu1 = wu_class(RP2, 1)
    assert nu1 == cohomology(RP2, 1, "Z/2").class_of(a)
    # Sq^1 a equals the reduction of the integral Bockstein
    beta = bockstein(a)
    assert not beta.is_zero()
    assert cohomology(RP2, 2, "Z/2").class_of(beta.representative.to_ring("Z/2")) == steenrod_square(1, a)


@pytest.mark.parametrize("name", BUILTINS)
def test_wu_classes_vanish_above_half_dimension(name):
    M = load(name)
    for k in range(M.dim + 1):
        if 2 * k > M.dim:
            assert wu_class(M, k).is_zero()


@pytest.mark.parametrize("name", ["RP2", "RP3", "T2"])
def test_bockstein_squares_to_zero(name):
    M = load(name)
    for k in range(M.dim - 1):
        for g in cohomology(M, k, "Z/2").generators:
            b = bockstein(g).representative.to_ring("Z/2")
            assert bockstein(b).is_zero()


def test_cp2_signature_wu_and_kappa():
    M = load("CP2")
    assert signature(M) == 1
    nu = wu_class(M, 2)
    assert not nu.is_zero()
    lam = integral_wu_lift(M, nu)
    assert lam.is_cocycle()
    g = cohomology(M, 2, "Z").generators[0]
    c0 = cohomology(M, 2, "Z").coordinates(lam)[0]
    lattice = intersection_lattice(M)
    assert lattice.gram.tolist() == [[1]]
    for m, expected in ((1, 0), (3, 1), (-1, 0), (-3, 1)):
        lam_m = lam + g.scale(m - c0)
        assert kappa_manifold(M, lam_m) == expected
        assert Fraction(m * m - 1, 8) == expected


@pytest.mark.parametrize("name", ["CP2", "S2xS2"])
def test_q_lambda_is_refinement_of_cup_pairing(name):
    M = load(name)
    lam = integral_wu_lift(M, wu_class(M, 2))
    H = cohomology(M, 2, "Z")
    z = fundamental_cycle(M, "Z", getattr(M, "orientation", 1))
    rng = random.Random(3)
    for _ in range(25):
        x = sum((g.scale(rng.randint(-3, 3)) for g in H.generators), Cochain.zero(M, 2))
        y = sum((g.scale(rng.randint(-3, 3)) for g in H.generators), Cochain.zero(M, 2))
        assert q_defect(M, lam, x, y) == cup(x, y).evaluate(z)
        lhs = 2 * q_lambda(M, lam, x)
        assert lhs == cup(x, x).evaluate(z) - cup(x, lam).evaluate(z)


def test_s2xs2_is_even():
    M = load("S2xS2")
    G = cup_pairing(M)
    assert sorted(abs(v) for row in G.tolist() for v in row) == [0, 0, 1, 1]
    assert wu_class(M, 2).is_zero()
    assert signature(M) == 0


@pytest.mark.parametrize("name", ["S2", "RP2", "T2"])
def test_stokes_on_prisms(name):
    P = load(f"prism:{name}")
    rng = random.Random(13)
    for _ in range(30):
        deg = rng.randint(1, P.dim - 1)
        s = Cochain(P, deg, [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(P.count(deg))], "Q")
        lhs = integrate_interval(s).coboundary()
        rhs = integrate_interval(s.coboundary()) - (restrict_end(s, 1) - restrict_end(s, 0)).scale((-1) ** deg)
        assert lhs == rhs


def test_slant_is_adjoint_to_cross():
    S = load("S2")
    P = load("prism:S2")
    rng = random.Random(17)
    z = Chain.simplex(P.right, (0, 1))
    for _ in range(20):
        s = rand_cochain(rng, P, 2, "Z", -4, 4)
        x = Chain(S, 1, [rng.randint(-2, 2) for _ in range(S.count(1))])
        assert slant(s, z).evaluate(x) == s.evaluate(cross(P, x, z))


@pytest.mark.parametrize("name", ["CP2", "S2xS2"])
def test_orientation_reversal_negates_signature_and_kappa(name):
    M = load(name)
    lam = integral_wu_lift(M, wu_class(M, 2))
    flipped = -getattr(M, "orientation", 1)
    assert signature(M, orientation=flipped) == -signature(M)
    assert kappa_manifold(M, lam, orientation=flipped) == -kappa_manifold(M, lam)
