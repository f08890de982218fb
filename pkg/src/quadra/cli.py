"""Command-line front end: every subcommand prints one JSON report.

Exit status: 0 on success, 1 when a verified identity fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import itertools
import sys
import time
from fractions import Fraction
from typing import Any, Callable

from . import __version__
from .report import InputError, digest, dumps, int_matrix, load_json, parse_int, parse_rational, require
from .rng import resolve_seed

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class CheckFailed(Exception):
    """A computed identity did not hold; the report is still printed."""


# -- input loading ---------------------------------------------------------------------

def builtin_lattices() -> dict[str, list[list[int]]]:
    from .lattice import E8_GRAM

    return {
        "E8": [list(r) for r in E8_GRAM],
        "A1": [[2]],
        "U": [[0, 1], [1, 0]],
        "I1": [[1]],
        "I1,1": [[1, 0], [0, -1]],
        "A2": [[2, -1], [-1, 2]],
    }


def _builtin_name(source: str) -> str | None:
    return source[len("builtin:"):] if source.startswith("builtin:") else None


def load_lattice(source: str):
    from .lattice import IntegralLattice

    name = _builtin_name(source)
    if name is not None:
        table = builtin_lattices()
        if name.startswith("<") and name.endswith(">"):
            name = name[1:-1]
        if name.lstrip("-").isdigit():
            gram = [[parse_int(name, "builtin")]]
        elif name in table:
            gram = table[name]
        else:
            raise InputError(f"unknown built-in lattice {name!r}; known: {', '.join(table)} or an integer n for <n>",
                             "builtin")
        data, raw = {"gram": gram, "label": name}, source.encode()
    else:
        data, raw = load_json(source)
    gram = int_matrix(require(data, "gram"), "$.gram")
    n = len(gram)
    if any(len(r) != n for r in gram):
        raise InputError("Gram matrix must be square", "$.gram")
    try:
        L = IntegralLattice(gram, label=data.get("label"))
    except ValueError as exc:
        raise InputError(str(exc), "$.gram") from None
    lam = data.get("lambda")
    return L, lam, raw


def parse_lambda(L, source: Any, where: str):
    from .lattice import CharacteristicError, CharacteristicVector, characteristic_vector

    if source is None or source == "auto":
        return characteristic_vector(L).coords
    if isinstance(source, str):
        source = [s for s in source.split(",") if s.strip()]
    if not isinstance(source, list):
        raise InputError("lambda must be 'auto', a list or comma-separated integers", where)
    coords = tuple(parse_int(x, f"{where}[{i}]") for i, x in enumerate(source))
    if len(coords) != L.rank:
        raise InputError(f"lambda has {len(coords)} coordinates, lattice rank is {L.rank}", where)
    try:
        CharacteristicVector(L, coords)
    except CharacteristicError as exc:
        raise InputError(str(exc), where) from None
    return coords


def load_finite_form(path: str):
    from .finite_quadratic import FiniteQuadraticForm

    data, raw = load_json(path)
    orders = [parse_int(x, f"$.orders[{i}]") for i, x in enumerate(require(data, "orders"))]
    q = require(data, "q")
    if not isinstance(q, list) or len(q) != len(orders) or any(not isinstance(r, list) or len(r) != len(orders)
                                                               for r in q):
        raise InputError(f"q must be a {len(orders)}x{len(orders)} matrix", "$.q")
    coeffs = [[parse_rational(x, f"$.q[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(q)]
    try:
        return FiniteQuadraticForm(orders, coeffs), raw
    except ValueError as exc:
        raise InputError(str(exc), "$.q") from None


def load_complex(source: str):
    from .simplicial import load
    from .simplicial.complex import ComplexError, SimplicialComplex

    name = _builtin_name(source)
    if name is not None:
        try:
            return load(name), source.encode()
        except KeyError as exc:
            raise InputError(str(exc.args[0]), "builtin") from None
    data, raw = load_json(source)
    vertices = parse_int(require(data, "vertices"), "$.vertices")
    facets = require(data, "facets")
    if not isinstance(facets, list):
        raise InputError("facets must be a list of vertex lists", "$.facets")
    clean = []
    for i, f in enumerate(facets):
        if not isinstance(f, list) or not f:
            raise InputError("facet must be a nonempty vertex list", f"$.facets[{i}]")
        clean.append([parse_int(v, f"$.facets[{i}][{j}]") for j, v in enumerate(f)])
    try:
        K = SimplicialComplex(vertices, clean, name=data.get("name"))
    except (ComplexError, ValueError) as exc:
        raise InputError(str(exc), "$.facets") from None
    K.orientation = parse_int(data.get("orientation", 1), "$.orientation")
    if K.orientation not in (1, -1):
        raise InputError("orientation must be 1 or -1", "$.orientation")
    return K, raw


# -- subcommands -----------------------------------------------------------------------

def cmd_lattice(args) -> dict:
    from .finite_quadratic import gauss_sum
    from .lattice import discriminant_data, kappa_4k_lattice, milgram_check

    L, file_lam, raw = load_lattice(args.path)
    lam = parse_lambda(L, args.lambda_spec if args.lambda_spec is not None else file_lam,
                       "--lambda" if args.lambda_spec is not None else "$.lambda")
    data = discriminant_data(L, lam)
    form = data.form
    g = gauss_sum(form)
    B = L.pair(lam, lam)
    residue = (B - L.signature) % 8
    milgram = milgram_check(L, lam)
    results = {
        "rank": L.rank,
        "det": L.det,
        "signature": L.signature,
        "unimodular": L.is_unimodular,
        "even": L.is_even,
        "lambda": list(lam),
        "B(lambda,lambda)": B,
        "kappa": kappa_4k_lattice(L, lam),
        "discriminant": {
            "invariant_factors": list(form.group.invariant_factors),
            "generator_orders": list(form.orders),
            "q": form.Q.tolist(),
            "q_values": list(data.q_values),
            "lifts": [list(v) for v in data.lifts],
        },
        "gauss_sum": {"k": g.k, "phase": f"exp(2 pi i {g.k}/8)", "residual_below_1e-6": g.residual < 1e-6},
        "milgram": {"expected_k": residue, "holds": milgram},
    }
    if not milgram:
        raise CheckFailed(results)
    return {"input_sha256": digest(raw), "results": results}


def cmd_gauss(args) -> dict:
    from .finite_quadratic import gauss_sum

    form, raw = load_finite_form(args.path)
    if not form.is_nondegenerate():
        raise InputError("the finite quadratic form is degenerate; its Gauss sum vanishes", "$.q")
    g = gauss_sum(form)
    results = {
        "order": form.order,
        "invariant_factors": list(form.group.invariant_factors),
        "k": g.k,
        "phase": f"exp(2 pi i {g.k}/8)",
        "residual_below_1e-6": g.residual < 1e-6,
    }
    if args.direct:
        if form.order > 10 ** 6:
            raise InputError("--direct enumerates the whole group; order exceeds 10^6", "--direct")
        d = gauss_sum(form, method="direct")
        results["direct_k"] = d.k
        if d.k != g.k:
            raise CheckFailed(results)
    return {"input_sha256": digest(raw), "results": results}


def _complex_summary(K) -> dict:
    from .simplicial import cohomology

    return {
        "name": K.name,
        "dimension": K.dim,
        "f_vector": list(K.f_vector),
        "euler_characteristic": K.euler_characteristic,
        "pseudomanifold": K.is_pseudomanifold(),
        "cohomology": {str(k): {"Z": str(cohomology(K, k, "Z").invariants), "Z/2_rank": cohomology(K, k, "Z/2").rank}
                       for k in range(K.dim + 1)},
    }


def _kappa_table(K, radius: int) -> dict:
    from .lattice import kappa_4k_lattice
    from .simplicial import cohomology, integral_wu_lift, kappa_manifold, signature, wu_class
    from .simplicial.manifold import intersection_lattice

    if K.dim % 4:
        raise InputError(f"--kappa needs dimension divisible by 4, got {K.dim}", "--kappa")
    k = K.dim // 2
    lam0 = integral_wu_lift(K, wu_class(K, k))
    H = cohomology(K, k, "Z")
    free = [i for i, o in enumerate(H.orders) if o == 0]
    base = H.coordinates(lam0)
    L = intersection_lattice(K)
    table = []
    bound = 2 * radius + 1
    choices = [[c for c in range(-bound, bound + 1) if (c - base[i]) % 2 == 0] for i in free]
    for free_coords in itertools.product(*choices):
        free_coords = list(free_coords)
        coords = list(base)
        for i, c in zip(free, free_coords):
            coords[i] = c
        lam = H.element(coords)
        kap = kappa_manifold(K, lam)
        avatar = kappa_4k_lattice(L, free_coords) if free else Fraction(-signature(K), 8)
        label = f"{free_coords[0]}g" if len(free) == 1 else str(tuple(free_coords))
        table.append({"lambda": label, "coords": free_coords, "kappa": kap, "lattice_kappa": avatar,
                      "agree": kap == avatar})
    table.sort(key=lambda e: (sum(abs(c) for c in e["coords"]), e["coords"]))
    return {"signature": signature(K), "table": table}


def cmd_complex(args) -> dict:
    from .simplicial import cohomology, integral_wu_lift, steenrod_square, wu_class
    from .simplicial.manifold import q_lambda

    K, raw = load_complex(args.path)
    results: dict[str, Any] = _complex_summary(K)
    failed = False
    if args.wu:
        results["wu"] = {}
        for k in range(K.dim + 1):
            nu = wu_class(K, k)
            results["wu"][str(k)] = {"coords": list(nu.coords), "zero": nu.is_zero()}
    if args.steenrod is not None:
        s = args.steenrod
        table = {}
        for j in range(K.dim + 1 - s):
            H = cohomology(K, j, "Z/2")
            table[str(j)] = [list(steenrod_square(s, g).coords) for g in H.generators]
        results[f"Sq^{s}"] = table
    if args.kappa:
        results["kappa"] = _kappa_table(K, args.radius)
        failed |= not all(e["agree"] for e in results["kappa"]["table"])
    if args.qtable:
        if K.dim % 2:
            raise InputError("--qtable needs even dimension", "--qtable")
        k = K.dim // 2
        lam = integral_wu_lift(K, wu_class(K, k))
        H = cohomology(K, k, "Z")
        gens = [g for g, o in zip(H.generators, H.orders) if o == 0]
        rows = []
        for coeffs in itertools.product((-1, 0, 1), repeat=len(gens)) if len(gens) <= 3 else \
                [tuple(int(i == j) for i in range(len(gens))) for j in range(len(gens))]:
            x = H.element([0] * len(H.orders))
            for a, g in zip(coeffs, gens):
                x = x + g.scale(a)
            rows.append({"x": list(coeffs), "q": q_lambda(K, lam, x)})
        results["q_lambda"] = {"lambda_coords": list(H.coordinates(lam)), "table": rows}
    if failed:
        raise CheckFailed(results)
    return {"input_sha256": digest(raw), "results": results}


def _cochain_json(c) -> dict:
    return {"degree": c.degree, "ring": c.ring, "values": list(c.values)}


def cmd_dcohom(args) -> dict:
    from .differential import exact_sequence_suite, group_description
    from .rng import SplitMix64

    K, raw = load_complex(args.path)
    desc = group_description(K, args.q, args.k, with_witnesses=args.witnesses)
    results: dict[str, Any] = {
        "q": args.q, "k": args.k, "kind": desc.kind, "summary": desc.summary(),
        "integral": str(desc.integral) if desc.integral is not None else None,
        "divisible_rank": desc.divisible_rank, "torsion": list(desc.torsion),
        "curvature_rank": desc.curvature_rank,
    }
    failed = False
    if args.witnesses:
        results["witnesses"] = {name: [{"c": _cochain_json(x.c), "h": _cochain_json(x.h),
                                        "omega": _cochain_json(x.omega)} for x in xs]
                                for name, xs in desc.witnesses.items()}
        if args.k == args.q and 1 <= args.k <= K.dim:
            seed = resolve_seed(args.seed)
            suites = exact_sequence_suite(K, args.k, SplitMix64(seed), args.trials)
            results["exact_sequences"] = [s.to_json() for s in suites]
            failed = not all(s.passed for s in suites)
    if failed:
        raise CheckFailed(results)
    return {"input_sha256": digest(raw), "results": results}


def cmd_series(args) -> dict:
    from . import series as S

    D = args.order
    if D < 0:
        raise InputError("order must be >= 0", "--order")
    results: dict[str, Any] = {
        "order": D,
        "wu_line": list(S.wu_line_series(D).coeffs),
        "spin_wu": list(S.spin_wu_series(D).coeffs),
        "l_series": list(S.l_series(D).coeffs),
    }
    classes = {}
    for k in range(1, args.classes + 1):
        classes[str(4 * k)] = {"nu": str(S.spin_wu_class(k)), "nu_minus_T": str(S.spin_wu_inverse_bundle(k)),
                               "L": str(S.l_genus(k))}
    results["classes"] = classes
    if args.checks:
        checks = {
            "delta_g_integral": S.delta_g(args.delta_order).is_integral(),
            "mod4_square": S.mod4_square_check(args.mod4_order),
            "delta_symmetric": not S.delta_symmetry_defect(S.spin_wu_series(min(D, 12))).terms,
            "delta_cocycle": not S.delta_cocycle_defect(S.spin_wu_series(min(D, 8))).terms,
            "change_of_spin": S.change_of_spin_identity(max(D, 1)),
        }
        results["checks"] = checks
        if not all(checks.values()):
            raise CheckFailed(results)
    return {"results": results}


def cmd_doldkan(args) -> dict:
    from .doldkan import (
        ChainComplexError,
        ChainComplexZ,
        SimplicialAbelianGroup,
        SimplicialIdentityError,
        dold_kan_isomorphism,
        gamma,
        homotopy_groups,
        normalize,
        unnormalized_complex,
    )

    data, raw = load_json(args.path)
    results: dict[str, Any] = {}
    failed = False
    try:
        if isinstance(data, dict) and "chain_complex" in data:
            C = ChainComplexZ.from_json(data["chain_complex"])
            G = gamma(C)
            iso = dold_kan_isomorphism(C, G)
            ok = iso.verify(C)
            pis = homotopy_groups(G.simplicial)
            hs = [C.homology(n) for n in range(C.top + 1)]
            results.update({
                "homology": [str(h) for h in hs],
                "gamma_levels": [list(g) for g in G.simplicial.groups],
                "gamma_summands": [[{"surjection": list(f), "k": k} for f, k, _ in level] for level in G.summands],
                "isomorphism": [m.tolist() for m in iso.maps],
                "isomorphism_verified": ok,
                "homotopy_groups": [str(p) for p in pis],
            })
            failed = not ok or pis != hs
        elif isinstance(data, dict) and "simplicial" in data:
            A = SimplicialAbelianGroup.from_json(data["simplicial"])
            N = normalize(A)
            U = unnormalized_complex(A)
            pis = homotopy_groups(A)
            unn = [U.homology(n) for n in range(A.top)]
            results.update({
                "normalized_groups": [list(g) for g in N.complex.groups],
                "normalized_differentials": [m.tolist() for m in N.complex.boundaries],
                "homotopy_groups": [str(p) for p in pis],
                "unnormalized_homology": [str(h) for h in unn],
            })
            failed = pis != unn
        else:
            raise InputError("expected a 'chain_complex' or 'simplicial' object", "$")
    except (ChainComplexError, SimplicialIdentityError) as exc:
        raise InputError(str(exc), "$") from None
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed structure: {exc}", "$") from None
    if failed:
        raise CheckFailed(results)
    return {"input_sha256": digest(raw), "results": results}


def cmd_picard(args) -> dict:
    from .picard import PicardError, TwoTermComplex, anderson_sequence_check, functor_class_group

    data, raw = load_json(args.path)
    try:
        A = [parse_int(x, f"$.source[{i}]") for i, x in enumerate(require(data, "source"))]
        B = [parse_int(x, f"$.target[{i}]") for i, x in enumerate(require(data, "target"))]
        d = int_matrix(data.get("d") or [[0] * len(A) for _ in B], "$.d", rows=len(B), cols=len(A))
        T = TwoTermComplex.from_json({"source": A, "target": B, "d": d})
    except PicardError as exc:
        raise InputError(str(exc), "$.d") from None
    G = functor_class_group(T)
    check = anderson_sequence_check(T)
    results = {
        "pi0": str(T.pi0()),
        "pi1": str(T.pi1()),
        "class_group": str(G.invariants),
        "orders": list(G.orders),
        "generators": [{"h0": list(p.h0), "h1": list(p.h1)} for p in G.generators()],
        "anderson": {"ext": str(check.ext_part), "hom": str(check.hom_part),
                     "restriction_unimodular": check.restriction_unimodular, "holds": check.holds},
    }
    if not check.holds:
        raise CheckFailed(results)
    return {"input_sha256": digest(raw), "results": results}


def cmd_selftest(args) -> dict:
    from . import selftest as T

    seed = resolve_seed(args.seed)
    n = args.random_trials
    plan: dict[str, Callable[[], Any]] = {
        "milgram": lambda: T.milgram_suite(seed, args.milgram_trials, args.max_rank),
        "golden": T.golden_suite,
        "unimodular": lambda: T.unimodular_suite(seed, args.unimodular_trials, args.max_rank),
        "cp2": T.cp2_suite,
        "refinement": lambda: T.refinement_suite(seed, trials=n),
        "steenrod": T.steenrod_suite,
        "cup_i": lambda: T.cup_i_suite(seed, trials=n),
        "stokes": lambda: T.stokes_suite(seed, trials=n),
        "dcohom": lambda: T.dcohom_suite(seed),
        "series": T.series_suite,
        "doldkan": lambda: T.doldkan_suite(seed, args.doldkan_trials),
        "picard": lambda: T.picard_suite(seed, args.picard_trials),
    }
    names = list(plan) if not args.suites else [s.strip() for s in args.suites.split(",") if s.strip()]
    unknown = [s for s in names if s not in plan]
    if unknown:
        raise InputError(f"unknown suites {unknown}; available: {', '.join(plan)}", "--suites")
    suites = [plan[name]().to_json() for name in names]
    results = {"seed": seed, "suites": suites, "passed": all(s["passed"] for s in suites)}
    if not results["passed"]:
        raise CheckFailed(results)
    return {"results": results}


# -- argument parsing ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quadra", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"quadra {__version__}")
    p.add_argument("--timing", action="store_true", help="add wall-clock timing to the report (breaks byte equality)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("lattice", help="signature, characteristic vector, discriminant form, Gauss sum, kappa")
    s.add_argument("path", help="lattice JSON file or builtin:E8, builtin:A1, builtin:<n>, ...")
    s.add_argument("--lambda", dest="lambda_spec", help="'auto' or comma-separated coordinates")
    s.set_defaults(func=cmd_lattice)

    s = sub.add_parser("gauss", help="Gauss sum of a finite quadratic form")
    s.add_argument("path", help="finite quadratic form JSON file")
    s.add_argument("--direct", action="store_true", help="also enumerate the whole group as a cross-check")
    s.set_defaults(func=cmd_gauss)

    s = sub.add_parser("complex", help="cohomology, Wu classes, Steenrod squares, kappa of a complex")
    s.add_argument("path", help="complex JSON file or builtin:NAME (S<n>, RP2, T2, CP2, RP3, S2xS2, prism:NAME)")
    s.add_argument("--wu", action="store_true", help="Wu classes in every degree")
    s.add_argument("--kappa", action="store_true", help="kappa table against the intersection lattice")
    s.add_argument("--radius", type=int, default=1, help="kappa table over lambda0 + 2x with |x_i| <= radius")
    s.add_argument("--steenrod", type=int, metavar="K", help="Sq^K on a basis of mod-2 cohomology")
    s.add_argument("--qtable", action="store_true", help="q_lambda on small middle-degree classes")
    s.set_defaults(func=cmd_complex)

    s = sub.add_parser("dcohom", help="differential cohomology group description")
    s.add_argument("path", help="complex JSON file or builtin:NAME")
    s.add_argument("--q", type=int, required=True, help="filtration degree")
    s.add_argument("--k", type=int, required=True, help="cohomological degree")
    s.add_argument("--witnesses", action="store_true", help="run the exact-sequence witness suites (k = q)")
    s.add_argument("--trials", type=int, default=5, help="random elements per witness suite")
    s.add_argument("--seed", type=int, default=None, help="base seed; QUADRA_SEED overrides it")
    s.set_defaults(func=cmd_dcohom)

    s = sub.add_parser("series", help="spin Wu series, multiplicative sequences and integrality checks")
    s.add_argument("--order", type=int, default=8, help="truncation order of g(x)")
    s.add_argument("--classes", type=int, default=3, help="Pontryagin polynomials in degrees 4, 8, ..., 4*CLASSES")
    s.add_argument("--checks", action="store_true", help="run the integrality and mod-4 checks")
    s.add_argument("--delta-order", type=int, default=20, help="total order of the delta g integrality check")
    s.add_argument("--mod4-order", type=int, default=12, help="total order of the mod-4 square check")
    s.set_defaults(func=cmd_series)

    s = sub.add_parser("doldkan", help="Dold-Kan: Gamma of a chain complex or N of a simplicial group")
    s.add_argument("path", help="chain complex or simplicial group JSON file")
    s.set_defaults(func=cmd_doldkan)

    s = sub.add_parser("picard", help="functor pairs on a two-term complex A -> B")
    s.add_argument("path", help="two-term complex JSON file")
    s.set_defaults(func=cmd_picard)

    s = sub.add_parser("selftest", help="run the seeded property suites")
    s.add_argument("--seed", type=int, default=None, help="base seed; QUADRA_SEED overrides it")
    s.add_argument("--milgram-trials", type=int, default=200)
    s.add_argument("--max-rank", type=int, default=6, help="largest random lattice rank")
    s.add_argument("--unimodular-trials", type=int, default=100)
    s.add_argument("--doldkan-trials", type=int, default=50)
    s.add_argument("--picard-trials", type=int, default=50)
    s.add_argument("--random-trials", type=int, default=1000, help="cochain samples per complex")
    s.add_argument("--suites", help="comma-separated subset")
    s.set_defaults(func=cmd_selftest)
    return p


def _echo(args) -> dict:
    skip = {"func", "timing", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    start = time.perf_counter()
    report: dict[str, Any] = {"command": args.command, "arguments": _echo(args)}
    code = EXIT_OK
    try:
        report.update(args.func(args))
    except InputError as exc:
        report["error"] = {"kind": "input", "message": str(exc), "where": exc.where}
        print(dumps(report), file=sys.stderr)
        return EXIT_INPUT
    except CheckFailed as exc:
        report["results"] = exc.args[0]
        report["error"] = {"kind": "check", "message": "a verified identity failed"}
        code = EXIT_FAIL
    except AssertionError as exc:
        report["error"] = {"kind": "check", "message": str(exc) or "assertion failed"}
        code = EXIT_FAIL
    except ValueError as exc:
        # domain errors raised on valid JSON that describes an unsuitable object
        report["error"] = {"kind": "input", "message": str(exc), "where": None}
        print(dumps(report), file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001 - report internal failures as JSON too
        report["error"] = {"kind": "internal", "message": f"{type(exc).__name__}: {exc}"}
        print(dumps(report), file=sys.stderr)
        return EXIT_FAIL
    if args.timing:
        report["timing"] = {"seconds": f"{time.perf_counter() - start:.3f}"}
    print(dumps(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
