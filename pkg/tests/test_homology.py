import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from isovariant.complexes import SimplicialComplex
from isovariant.errors import NonCommuting
from isovariant.homology import (INF, HomologyResult, SimplicialMap, connectivity_of,
                                 format_conn, homology_of, map_connectivity, parse_conn,
                                 pushout_cone_check, smith_normal_form)
from oracles import (RP2_FACETS, union_square, boundary_matrix, closure, invariant_factors, rank_mod_p,
                     rational_rank)


def simplex_boundary(n):
    return SimplicialComplex.from_facets(itertools.combinations(range(n + 1), n))


def test_snf_examples():
    assert smith_normal_form([[0, 0], [0, 0]]) == ([], 0)
    assert smith_normal_form([[2]]) == ([2], 1)
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == ([2, 6, 12], 3)


def test_snf_against_oracles_on_random_matrices():
    rng = random.Random(7)
    for _ in range(50):
        M = [[rng.randint(-6, 6) if rng.random() < 0.7 else 0 for _ in range(6)] for _ in range(6)]
        factors, rank = smith_normal_form(M)
        assert rank == rational_rank(M)
        assert factors == invariant_factors(M)
        assert all(b % a == 0 for a, b in zip(factors, factors[1:]))


@settings(max_examples=30)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=3, max_size=5),
       st.randoms())
def test_snf_independent_of_row_and_column_order(M, rnd):
    rows = list(range(len(M)))
    cols = list(range(len(M[0])))
    rnd.shuffle(rows)
    rnd.shuffle(cols)
    P = [[M[r][c] for c in cols] for r in rows]
    assert smith_normal_form(M) == smith_normal_form(P)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_simplex_boundary_is_sphere(n):
    H = homology_of(simplex_boundary(n))
    want = [0] * n
    want[0] += 1
    want[n - 1] += 1
    assert list(H.betti) == want
    assert not any(H.torsion)


def test_projective_plane_torsion():
    K = SimplicialComplex.from_facets(RP2_FACETS)
    H = homology_of(K)
    assert (H.betti_at(0), H.betti_at(1), H.betti_at(2)) == (1, 0, 0)
    assert H.torsion_at(1) == (2,)
    # oracle: the rank drop of d_2 mod 2 is exactly one Z/2 in H_1
    d2 = boundary_matrix(closure(RP2_FACETS), 2)
    assert rational_rank(d2) - rank_mod_p(d2, 2) == 1


@pytest.mark.parametrize("use_numba", [True, False])
def test_kernel_paths_agree_on_rp2(use_numba):
    K = SimplicialComplex.from_facets(RP2_FACETS)
    assert homology_of(K, use_numba=use_numba).torsion_at(1) == (2,)


def test_empty_complex():
    K = SimplicialComplex(0, frozenset())
    assert homology_of(K).betti == ()
    assert connectivity_of(K).value == -2


def test_connectivity_examples():
    two = SimplicialComplex.from_facets([(0,), (1,)])
    assert connectivity_of(two).value == -1
    c = connectivity_of(simplex_boundary(3))
    assert c.value == 1 and c.homological
    assert connectivity_of(SimplicialComplex.from_facets([(0, 1, 2)])).value == INF
    circle = simplex_boundary(2)
    c = connectivity_of(circle)
    assert c.value == 0 and not c.homological


def test_suspension_shifts_reduced_homology():
    for K in (simplex_boundary(2), SimplicialComplex.from_facets(RP2_FACETS),
              SimplicialComplex.from_facets([(0,), (1,), (2,)])):
        H, HS = homology_of(K), homology_of(K.suspension())
        assert HS.reduced_betti == (0,) + H.reduced_betti
        assert HS.torsion[1:] == H.torsion[:len(HS.torsion) - 1]


complexes = st.lists(st.lists(st.integers(0, 6), min_size=1, max_size=4), min_size=1, max_size=7)


@settings(max_examples=30)
@given(complexes)
def test_connectivity_minus_one_iff_disconnected(facets):
    K = SimplicialComplex.from_facets(facets)
    assert (connectivity_of(K).value == -1) == (K.n_components >= 2)


def _identity(K):
    return SimplicialMap(K, K, tuple(range(K.n_vertices)))


def test_map_connectivity_examples():
    pt = SimplicialComplex.from_facets([(0,)])
    two = SimplicialComplex.from_facets([(0,), (1,)])
    empty = SimplicialComplex(0, frozenset())
    assert map_connectivity(_identity(simplex_boundary(3))).value == INF
    assert map_connectivity(SimplicialMap(empty, pt, ())).value == -1
    assert map_connectivity(SimplicialMap(two, pt, (0, 0))).value == 0
    assert map_connectivity(SimplicialMap(pt, two, (0,))).value == -1
    assert map_connectivity(SimplicialMap(empty, empty, ())).value == INF


@settings(max_examples=15)
@given(complexes)
def test_subdivision_comparison_map_is_equivalence(facets):
    """The last-vertex map Sd K -> K (a simplicial approximation of the identity)."""
    K = SimplicialComplex.from_facets(facets)
    S = K.barycentric_subdivision()
    last = tuple(max(s) for s in S.labels)
    assert map_connectivity(SimplicialMap(S, K, last)).value == INF


@settings(max_examples=10)
@given(st.integers(0, 10_000))
def test_cocartesian_union_squares(seed):
    assert pushout_cone_check(*union_square(random.Random(seed)))


def test_cocartesian_fails_on_point_to_two_points():
    pt = SimplicialComplex.from_facets([(0,)])
    two = SimplicialComplex.from_facets([(0,), (1,)])
    idp = SimplicialMap(pt, pt, (0,))
    i = SimplicialMap(pt, two, (0,))
    assert not pushout_cone_check(idp, idp, i, i)


def test_non_commuting_square_raises():
    pt = SimplicialComplex.from_facets([(0,)])
    two = SimplicialComplex.from_facets([(0,), (1,)])
    idp = SimplicialMap(pt, pt, (0,))
    with pytest.raises(NonCommuting) as exc:
        pushout_cone_check(idp, idp, SimplicialMap(pt, two, (0,)), SimplicialMap(pt, two, (1,)))
    assert exc.value.witness == (0,)


def test_conn_format_round_trip():
    for v in (INF, -INF, -2, -1, 0, 7):
        assert parse_conn(format_conn(v)) == v


def test_homology_result_round_trip():
    H = homology_of(SimplicialComplex.from_facets(RP2_FACETS))
    assert HomologyResult.from_dict(H.to_dict()) == H
