"""Seeded randomized suites, shared by the ``selftest`` subcommand and the test-suite."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .finite_quadratic import gauss_sum
from .lattice import (
    IntegralLattice,
    characteristic_vector,
    discriminant_form,
    kappa_4k_lattice,
    van_der_blij_check,
)
from .linalg import Matrix, det
from .report import SuiteResult
from .rng import SplitMix64


# -- random models ---------------------------------------------------------------------

def random_lattice(rng: SplitMix64, max_rank: int = 6, max_entry: int = 8) -> IntegralLattice:
    """Symmetric integer Gram matrix with entries in [-max_entry, max_entry] and nonzero determinant."""
    while True:
        n = rng.randint(1, max_rank)
        G = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                G[i][j] = G[j][i] = rng.randint(-max_entry, max_entry)
        M = Matrix(n, n, G)
        if det(M) != 0:
            return IntegralLattice(M)


def random_unimodular_matrix(rng: SplitMix64, n: int, steps: int | None = None) -> Matrix:
    """Product of elementary row operations and a signed permutation."""
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if steps is not None else 2 * n):
        if n < 2:
            break
        i, j = rng.below(n), rng.below(n - 1)
        j += j >= i
        c = rng.choice((-2, -1, 1, 2))
        P[i] = [a + c * b for a, b in zip(P[i], P[j])]
    order = list(range(n))
    rng.shuffle(order)
    signs = [-1 if rng.below(2) else 1 for _ in range(n)]
    P = [[s * x for x in P[k]] for k, s in zip(order, signs)]
    return Matrix(n, n, P)


def random_unimodular_lattice(rng: SplitMix64, max_rank: int = 6) -> IntegralLattice:
    """P^T diag(+-1) P for a random unimodular P."""
    n = rng.randint(1, max_rank)
    D = Matrix.diagonal([rng.choice((-1, 1)) for _ in range(n)])
    P = random_unimodular_matrix(rng, n)
    return IntegralLattice(P.T @ D @ P)


# -- lattice suites --------------------------------------------------------------------

def milgram_suite(seed: int, trials: int = 200, max_rank: int = 6, max_entry: int = 8) -> SuiteResult:
    """Gauss sum phase of the discriminant form equals B(lambda,lambda) - sigma mod 8."""
    res = SuiteResult("milgram")
    hist = [0] * 8
    for t in range(trials):
        L = random_lattice(SplitMix64.for_trial(seed, t), max_rank, max_entry)
        lam = characteristic_vector(L)
        res.trials += 1
        try:
            g = gauss_sum(discriminant_form(L, lam))
        except ValueError as exc:
            res.failures.append(f"trial {t}: {exc}")
            continue
        expected = (L.pair(lam.coords, lam.coords) - L.signature) % 8
        hist[g.k] += 1
        if g.k != expected or g.residual >= 1e-6:
            res.failures.append(f"trial {t}: gram {L.gram.tolist()} gave k={g.k}, expected {expected}")
    res.details["k_histogram"] = hist
    return res


def unimodular_suite(seed: int, trials: int = 100, max_rank: int = 6) -> SuiteResult:
    res = SuiteResult("unimodular")
    for t in range(trials):
        L = random_unimodular_lattice(SplitMix64.for_trial(seed, t), max_rank)
        lam = characteristic_vector(L)
        res.trials += 1
        if abs(det(L.gram)) != 1:
            res.failures.append(f"trial {t}: gram {L.gram.tolist()} is not unimodular")
            continue
        kappa = kappa_4k_lattice(L, lam)
        try:
            check = van_der_blij_check(L, lam)
        except AssertionError as exc:
            res.failures.append(f"trial {t}: {exc}")
            continue
        if kappa.denominator != 1 or check.residue != 0:
            res.failures.append(f"trial {t}: gram {L.gram.tolist()} gave kappa {kappa}")
    return res


def golden_suite() -> SuiteResult:
    res = SuiteResult("golden")
    cases = [
        (IntegralLattice([[2]]), [0], 7, (Fraction(1, 4),)),
        (IntegralLattice([[3]]), [1], 2, (Fraction(2, 3),)),
    ]
    for L, lam, k, qs in cases:
        res.trials += 1
        form = discriminant_form(L, lam)
        got = (gauss_sum(form).k, tuple(form.Q[i, i] for i in range(len(form.orders))))
        if got != (k, qs):
            res.failures.append(f"{L.gram.tolist()}: got {got}, expected {(k, qs)}")
    E8 = IntegralLattice.e8()
    lam = characteristic_vector(E8)
    res.trials += 1
    form = discriminant_form(E8, lam)
    if form.orders or E8.signature != 8 or kappa_4k_lattice(E8, lam) != -1:
        res.failures.append("E8 golden values differ")
    return res


# -- topology suites -------------------------------------------------------------------

def _random_z2_cochain(rng, K, degree):
    from .simplicial import Cochain

    return Cochain(K, degree, [rng.below(2) for _ in range(K.count(degree))], "Z/2")


def cup_i_suite(seed: int, names=("RP2", "T2", "S3", "RP3", "CP2"), trials: int = 1000) -> SuiteResult:
    """delta(a u_i b) = da u_i b + a u_i db + a u_{i-1} b + b u_{i-1} a mod 2 on random cochains."""
    from .simplicial import cup_i, load

    res = SuiteResult("cup_i_coboundary")
    for name in names:
        K = load(name)
        done, t = 0, 0
        while done < trials:
            rng = SplitMix64.for_trial(seed, t)
            t += 1
            p = rng.randint(0, K.dim)
            q = rng.randint(0, K.dim)
            i = rng.randint(0, min(p, q))
            if p + q - i + 1 > K.dim:
                continue
            done += 1
            a, b = _random_z2_cochain(rng, K, p), _random_z2_cochain(rng, K, q)
            lhs = cup_i(a, b, i).coboundary()
            rhs = cup_i(a.coboundary(), b, i) + cup_i(a, b.coboundary(), i)
            if i >= 1:
                rhs = rhs + cup_i(a, b, i - 1) + cup_i(b, a, i - 1)
            res.trials += 1
            if lhs != rhs:
                res.failures.append(f"{name}: p={p} q={q} i={i}")
    return res


def stokes_suite(seed: int, names=("S2", "RP2", "T2"), trials: int = 1000) -> SuiteResult:
    from .simplicial import Cochain, load
    from .simplicial.product import stokes_defect

    res = SuiteResult("stokes")
    prisms = [load(f"prism:{n}") for n in names]
    for t in range(trials):
        rng = SplitMix64.for_trial(seed, t)
        P = prisms[t % len(prisms)]
        deg = rng.randint(1, P.dim - 1)

        def rand(d, ring):
            if ring == "Z":
                return Cochain(P, d, [rng.randint(-3, 3) for _ in range(P.count(d))], "Z")
            return Cochain(P, d, [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(P.count(d))], "Q")

        kind = rng.below(3)
        if kind == 2 and deg >= 2:
            # differential cochain (c, h, w): each component obeys Stokes separately
            parts = [rand(deg, "Z"), rand(deg - 1, "Q"), rand(deg, "Q")]
        else:
            parts = [rand(deg, "Z" if kind == 0 else "Q")]
        res.trials += 1
        if any(not stokes_defect(s).is_zero() for s in parts):
            res.failures.append(f"{P.name}: degree {deg}")
    return res


def cp2_suite() -> SuiteResult:
    """Signature, Wu class, integral lift and kappa on the 9-vertex CP^2 against the lattice avatar."""
    from .simplicial import cohomology, integral_wu_lift, kappa_manifold, load, signature, wu_class
    from .simplicial.manifold import intersection_lattice

    res = SuiteResult("cp2")
    M = load("CP2")
    res.trials += 1
    sigma = signature(M)
    nu = wu_class(M, 2)
    lam = integral_wu_lift(M, nu)
    H = cohomology(M, 2, "Z")
    g = H.generators[0]
    c0 = H.coordinates(lam)[0]
    table = {}
    L = intersection_lattice(M)
    for m in (1, 3, -1, -3):
        lam_m = lam + g.scale((m - c0))
        if (m - c0) % 2:
            res.failures.append("lift changes by an odd multiple")
            continue
        kap = kappa_manifold(M, lam_m)
        if kap != kappa_4k_lattice(L, [m]):
            res.failures.append(f"kappa({m}g) disagrees with the lattice avatar")
        table[f"{m}g"] = kap
    if sigma != 1 or nu.is_zero() or table.get("1g") != 0 or table.get("3g") != 1:
        res.failures.append(f"sigma={sigma}, nu2 zero={nu.is_zero()}, table={table}")
    res.details["kappa"] = table
    return res


def refinement_suite(seed: int, names=("CP2", "S2xS2"), trials: int = 1000) -> SuiteResult:
    """q_lambda is integral with defect <x u y, [M]> and 2q = 2 kappa + <x u x - x u lambda> shifted."""
    from .simplicial import cohomology, cup, integral_wu_lift, load, wu_class
    from .simplicial.manifold import evaluate_top, kappa_manifold, q_lambda, q_lambda_shifted
    from .simplicial import Cochain

    res = SuiteResult("quadratic_refinement")
    for name in names:
        M = load(name)
        k = M.dim // 2
        lam = integral_wu_lift(M, wu_class(M, k))
        kap = kappa_manifold(M, lam)
        gens = cohomology(M, k, "Z").generators
        zero = Cochain.zero(M, k)
        q0 = q_lambda(M, lam, zero)
        for t in range(trials):
            rng = SplitMix64.for_trial(seed, t)

            def rand():
                c = Cochain(M, k - 1, [rng.randint(-2, 2) for _ in range(M.count(k - 1))], "Z").coboundary()
                for gen in gens:
                    c = c + gen.scale(rng.randint(-3, 3))
                return c

            x, y = rand(), rand()
            qx, qy, qxy = q_lambda(M, lam, x), q_lambda(M, lam, y), q_lambda(M, lam, x + y)
            res.trials += 1
            if qxy - qx - qy + q0 != evaluate_top(cup(x, y)):
                res.failures.append(f"{name} trial {t}: defect mismatch")
            shifted = q_lambda_shifted(M, lam, x)
            if 2 * shifted != 2 * kap + evaluate_top(cup(x, x)) - evaluate_top(cup(x, lam)):
                res.failures.append(f"{name} trial {t}: shifted refinement mismatch")
    return res


def steenrod_suite() -> SuiteResult:
    """Sq^1 = reduction of the Bockstein, nu_1(RP2) = a, nu_k = 0 for 2k > n, beta beta = 0."""
    from .simplicial import bockstein, cohomology, load, steenrod_square, wu_class

    res = SuiteResult("steenrod_wu")
    for name in ("RP2", "T2", "S2", "RP3", "CP2", "S3"):
        M = load(name)
        for j in range(M.dim):
            H2 = cohomology(M, j, "Z/2")
            for a in H2.generators:
                res.trials += 1
                sq1 = steenrod_square(1, a)
                beta = bockstein(a)
                red = cohomology(M, j + 1, "Z/2").class_of(beta.representative.to_ring("Z/2"))
                if sq1 != red:
                    res.failures.append(f"{name}: Sq^1 != reduced Bockstein in degree {j}")
                # beta(beta a) = 0: the integral class reduces, its Bockstein vanishes
                bb = bockstein(beta.representative.to_ring("Z/2"))
                if not bb.is_zero():
                    res.failures.append(f"{name}: beta beta != 0 in degree {j}")
        for k in range(M.dim + 1):
            if 2 * k > M.dim:
                res.trials += 1
                if not wu_class(M, k).is_zero():
                    res.failures.append(f"{name}: nu_{k} nonzero above half dimension")
    M = load("RP2")
    a = cohomology(M, 1, "Z/2").generators[0]
    res.trials += 1
    if wu_class(M, 1) != cohomology(M, 1, "Z/2").class_of(a):
        res.failures.append("nu_1(RP2) != a")
    return res


def dcohom_suite(seed: int, trials: int = 5) -> SuiteResult:
    from .differential import exact_sequence_suite, group_description
    from .simplicial import cohomology, load

    res = SuiteResult("differential_cohomology")
    for name in ("T2", "RP2"):
        M = load(name)
        for q in range(0, M.dim + 2):
            for k in range(0, M.dim + 2):
                if k == q:
                    continue
                res.trials += 1
                desc = group_description(M, q, k, with_witnesses=False)
                if k > q:
                    expected = cohomology(M, k, "Z").invariants if k <= M.dim else None
                    got = desc.integral
                    if expected is not None and got != expected:
                        res.failures.append(f"{name} q={q} k={k}: {got} != {expected}")
                else:
                    # H^{k-1}(Q/Z): rank b_{k-1} divisible part plus torsion of H^k(Z)
                    b = cohomology(M, k - 1, "Q").rank if 0 <= k - 1 <= M.dim else 0
                    tors = cohomology(M, k, "Z").torsion if 0 <= k <= M.dim else ()
                    if (desc.divisible_rank, desc.torsion) != (b, tuple(tors)):
                        res.failures.append(f"{name} q={q} k={k}: flat description mismatch")
        for k in range(1, M.dim + 1):
            for sub in exact_sequence_suite(M, k, SplitMix64.for_trial(seed, k), trials):
                res.trials += sub.trials
                res.failures.extend(f"{name} k={k} {sub.name}: {f}" for f in sub.failures)
    return res


# -- series, Dold-Kan, Picard ----------------------------------------------------------

def series_suite() -> SuiteResult:
    from . import series as S

    res = SuiteResult("series")
    g = S.spin_wu_series(6)
    checks = {
        "g": list(g.coeffs) == [1, 0, Fraction(-1, 2), 0, Fraction(-9, 8), 0, Fraction(-17, 16)],
        "delta_g_integral_20": S.delta_g(20).is_integral(),
        "mod4_square_12": S.mod4_square_check(12),
        "change_of_spin_8": S.change_of_spin_identity(8),
        "nu4": str(S.spin_wu_class(1)) == "-p1/2",
        "nu8": str(S.spin_wu_class(2)) == "(20*p2 - 9*p1^2)/8",
        "nu12": str(S.spin_wu_class(3)) == "(-80*p3 + 60*p1*p2 - 17*p1^3)/16",
        "minus_T4": str(S.spin_wu_inverse_bundle(1)) == "p1/2",
        "minus_T8": str(S.spin_wu_inverse_bundle(2)) == "(-20*p2 + 11*p1^2)/8",
        "minus_T12": str(S.spin_wu_inverse_bundle(3)) == "(80*p3 - 100*p1*p2 + 37*p1^3)/16",
    }
    for name, ok in checks.items():
        res.trials += 1
        if not ok:
            res.failures.append(name)
    return res


def doldkan_suite(seed: int, trials: int = 50) -> SuiteResult:
    from .doldkan import dold_kan_isomorphism, gamma, homotopy_groups, random_chain_complex

    res = SuiteResult("dold_kan")
    for t in range(trials):
        rng = SplitMix64.for_trial(seed, t)
        C = random_chain_complex(rng, length=rng.randint(1, 3))
        G = gamma(C)
        res.trials += 1
        if not dold_kan_isomorphism(C, G).verify(C):
            res.failures.append(f"trial {t}: N(Gamma(C)) is not isomorphic to C")
        if homotopy_groups(G.simplicial) != [C.homology(n) for n in range(C.top + 1)]:
            res.failures.append(f"trial {t}: homotopy groups differ from H_*(C)")
    return res


def picard_suite(seed: int, trials: int = 50) -> SuiteResult:
    from .linalg import AbelianInvariants
    from .picard import TwoTermComplex, anderson_sequence_check, functor_class_group, random_two_term

    res = SuiteResult("picard")
    for (a, b, m), expected in [((0, 0, 2), AbelianInvariants((2,), 0)), ((0, 0, 0), AbelianInvariants((), 1)),
                                ((0, 0, 3), AbelianInvariants((3,), 0))]:
        res.trials += 1
        got = functor_class_group(TwoTermComplex.cyclic(a, b, m)).invariants
        if got != expected:
            res.failures.append(f"(Z/{a} -{m}-> Z/{b}): {got} != {expected}")
    for t in range(trials):
        T = random_two_term(SplitMix64.for_trial(seed, t))
        res.trials += 1
        if not anderson_sequence_check(T).holds:
            res.failures.append(f"trial {t}: {T.to_json()}")
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "milgram": milgram_suite,
    "golden": golden_suite,
    "unimodular": unimodular_suite,
    "cp2": cp2_suite,
    "refinement": refinement_suite,
    "steenrod": steenrod_suite,
    "cup_i": cup_i_suite,
    "stokes": stokes_suite,
    "dcohom": dcohom_suite,
    "series": series_suite,
    "doldkan": doldkan_suite,
    "picard": picard_suite,
}
