from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from oracles import homology_from_boundaries
from quadra.doldkan import (
    ChainComplexError,
    ChainComplexZ,
    SimplicialAbelianGroup,
    SimplicialIdentityError,
    concentrated,
    constant_simplicial,
    dold_kan_isomorphism,
    free_on_simplex,
    gamma,
    homotopy_groups,
    normalize,
    random_chain_complex,
    surjections,
    unnormalized_complex,
    verify_simplicial_identities,
)
from quadra.linalg import Matrix
from quadra.rng import SplitMix64


def z_times(m):
    """Z --m--> Z in degrees 1 -> 0."""
    return ChainComplexZ(((0,), (0,)), (Matrix(1, 1, [[m]]),))


@pytest.mark.parametrize("n,k", [(0, 0), (2, 1), (3, 1), (4, 2), (5, 3), (4, 4)])
def test_surjection_count_is_binomial(n, k):
    S = surjections(n, k)
    assert len(S) == comb(n, k)
    for f in S:
        assert f[0] == 0 and f[-1] == k
        assert all(b - a in (0, 1) for a, b in zip(f, f[1:]))


def test_chain_complex_validation():
    with pytest.raises(ChainComplexError):
        ChainComplexZ(((0,), (0,), (0,)), (Matrix(1, 1, [[1]]), Matrix(1, 1, [[1]])))
    # Z/2 -> Z by 1 is not well defined
    with pytest.raises(ChainComplexError):
        ChainComplexZ(((0,), (2,)), (Matrix(1, 1, [[1]]),))


def test_homology_of_small_complexes():
    assert str(z_times(2).homology(0)) == "Z/2"
    assert str(z_times(2).homology(1)) == "0"
    assert str(z_times(0).homology(1)) == "Z"
    C = ChainComplexZ(((0,), (4,)), (Matrix(1, 1, [[0]]),))
    assert str(C.homology(1)) == "Z/4"


def test_gamma_level_sizes():
    C = z_times(0)
    G = gamma(C)
    # level n carries sum_k C(n, k) copies of C_k
    for n, level in enumerate(G.simplicial.groups):
        expected = sum(comb(n, k) * len(C.group(k)) for k in range(min(n, C.top) + 1))
        assert len(level) == expected
    assert [len(g) for g in G.simplicial.groups] == [1, 2, 3]


@pytest.mark.parametrize("C", [z_times(2), z_times(0), z_times(3), concentrated((2, 0), 2),
                               concentrated((6,), 1), concentrated((0,), 0)])
def test_round_trip_on_examples(C):
    G = gamma(C)
    verify_simplicial_identities(G.simplicial)
    iso = dold_kan_isomorphism(C, G)
    assert iso.verify(C)
    assert [str(h) for h in homotopy_groups(G.simplicial)] == [str(C.homology(n)) for n in range(C.top + 1)]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32), st.integers(1, 3))
def test_round_trip_on_random_complexes(seed, length):
    C = random_chain_complex(SplitMix64(seed), length=length)
    G = gamma(C)
    assert dold_kan_isomorphism(C, G).verify(C)
    pi = homotopy_groups(G.simplicial)
    for n in range(C.top + 1):
        assert pi[n] == C.homology(n)


def test_normalized_and_unnormalized_homology_agree():
    A = free_on_simplex(1, 3)
    verify_simplicial_identities(A)
    pi = [str(h) for h in homotopy_groups(A)]
    assert pi == ["Z", "0", "0"]
    U = unnormalized_complex(A)
    for n in range(A.top):
        assert str(U.homology(n)) == pi[n]
        if all(o == 0 for g in U.groups for o in g):
            # free levels: cross-check with numpy ranks and sympy Smith form
            dn = U.boundary(n).tolist() if n else []
            dn1 = U.boundary(n + 1).tolist()
            free, tors = homology_from_boundaries(dn, dn1, len(U.group(n)))
            assert (free, tors) == (U.homology(n).free_rank, tuple(sorted(U.homology(n).torsion)))


def test_constant_simplicial_group():
    A = constant_simplicial((0, 3), 3)
    assert [str(h) for h in homotopy_groups(A)] == ["Z/3 + Z", "0", "0"]
    assert all(len(g) == 0 for g in normalize(A).complex.groups[1:])


def test_broken_identities_are_detected():
    A = constant_simplicial((0,), 2)
    faces = list(A.faces)
    faces[1] = (Matrix(1, 1, [[1]]), Matrix(1, 1, [[2]]))
    with pytest.raises(SimplicialIdentityError):
        SimplicialAbelianGroup(A.groups, tuple(faces), A.degeneracies)


def test_json_round_trip():
    C = random_chain_complex(SplitMix64(5), length=2)
    assert ChainComplexZ.from_json(C.to_json()) == C
    A = gamma(C).simplicial
    B = SimplicialAbelianGroup.from_json(A.to_json())
    assert B.groups == A.groups
