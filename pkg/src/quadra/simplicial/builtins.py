"""Library of small triangulations, each checked against its homology when loaded."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .cohomology import homology_invariants
from .complex import ComplexError, SimplicialComplex, boundary_of_simplex
from .product import ProductComplex, prism

DATA_FILES = {"RP2": "rp2.json", "T2": "t2.json", "CP2": "cp2.json", "RP3": "rp3.json"}


def _check_homology(K: SimplicialComplex, expected: list[str]) -> None:
    got = [str(homology_invariants(K, k)) for k in range(K.dim + 1)]
    if got != expected:
        raise ComplexError(f"{K.name}: homology {got} does not match expected {expected}")


def _sphere(n: int) -> SimplicialComplex:
    K = boundary_of_simplex(n)
    _check_homology(K, ["Z"] + ["0"] * (n - 1) + ["Z"] if n else ["Z + Z"])
    return K


@lru_cache(maxsize=None)
def load(name: str) -> SimplicialComplex:
    """Built-in complex by name.

    Names: ``S<n>`` (boundary of the (n+1)-simplex), ``RP2``, ``T2``,
    ``CP2``, ``RP3``, ``S2xS2`` and ``prism:<name>`` for a product with
    the interval.
    """
    if name.startswith("prism:"):
        return prism(load(name[len("prism:"):]))
    if name == "S2xS2":
        S = load("S2")
        K = ProductComplex(S, S, name="S2xS2")
        _check_homology(K, ["Z", "0", "Z + Z", "0", "Z"])
        return K
    if name.startswith("S") and name[1:].isdigit():
        return _sphere(int(name[1:]))
    if name not in DATA_FILES:
        raise KeyError(f"unknown built-in complex {name!r}; available: {', '.join(available())}")
    text = resources.files(__package__).joinpath("data", DATA_FILES[name]).read_text()
    data = json.loads(text)
    K = SimplicialComplex(data["vertices"], data["facets"], name=data["name"])
    K.orientation = data.get("orientation", 1)
    _check_homology(K, data["homology"])
    return K


def available() -> list[str]:
    return ["S<n>", *DATA_FILES, "S2xS2", "prism:<name>"]
