import warnings

import pytest

from isovariant.complexes import (GSimplicialMap, identity_map, linking_simplex, rep_compactification,
                                  rep_disk, rep_sphere)
from isovariant.errors import IntermediateStrataWarning, NotIsovariant
from isovariant.groups import SubgroupChain, cyclic, enumerate_chains, symmetric
from isovariant.homology import homology_of
from isovariant.strata import (EQUIVARIANT, _mixed_order_complex, chain_link_model,
                               fixed_point_link, induced_link_map, link_model, link_suspension,
                               stratum_model)

C2, C3, C4 = cyclic(2), cyclic(3), cyclic(4)


def reduced(L):
    return homology_of(L.complex).reduced_betti


def test_sigma_disk_links():
    X = rep_disk(C2, ["sign"])
    e = stratum_model(X, C2.trivial)
    assert e.n_components == 2 and reduced(e) == (1,)
    assert stratum_model(X, C2.whole).complex.f_vector == (1,)
    L = chain_link_model(X, C2.parse_chain("e<C2"))
    assert L.complex.f_vector == (2,) and not L.provisional


def test_S_sigma_links():
    X = rep_compactification(C2, ["sign"])
    assert stratum_model(X, C2.trivial).n_components == 2
    assert stratum_model(X, C2.whole).complex.f_vector == (2,)
    assert chain_link_model(X, C2.parse_chain("e<C2")).complex.f_vector == (4,)


def test_S_rho_c3_links():
    X = rep_compactification(C3, ["trivial", "rotation"])
    assert homology_of(stratum_model(X, C3.trivial).complex).betti == (1, 1)
    assert homology_of(stratum_model(X, C3.whole).complex).betti == (1, 1)
    H = homology_of(chain_link_model(X, C3.parse_chain("e<C3")).complex)
    assert H.betti == (1, 2, 1) and not any(H.torsion)


def test_fixed_point_links():
    S = rep_sphere(C2, ["trivial", "sign"])
    L = fixed_point_link(S, C2.whole)
    assert L.mode == EQUIVARIANT and L.complex.f_vector == (2,)
    assert fixed_point_link(S, C2.trivial).complex.f_vector == S.complex.f_vector
    assert fixed_point_link(rep_sphere(C2, ["sign"]), C2.whole).complex.n_vertices == 0


def test_suspension_examples():
    X = rep_compactification(C2, ["sign"])
    two = stratum_model(X, C2.whole)
    four = chain_link_model(X, C2.parse_chain("e<C2"))
    for n in (1, 2, 3):
        assert reduced(link_suspension(two, n)) == (0,) * n + (1,)
        assert reduced(link_suspension(four, n)) == (0,) * n + (3,)
    T = chain_link_model(rep_compactification(C3, ["trivial", "rotation"]), C3.parse_chain("e<C3"))
    assert reduced(link_suspension(T, 1)) == (0, 0, 2, 1)
    assert link_suspension(T, 2).suspensions == 2


@pytest.mark.parametrize("X", [rep_disk(C2, ["sign"]), rep_compactification(C2, ["sign"]),
                               rep_disk(C4, [("rotation", 1, 1), ("rotation", 2, 1)])],
                         ids=["D_sigma", "S_sigma", "D_l1+l2"])
def test_suspension_shifts_every_link(X):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntermediateStrataWarning)
        for chain in enumerate_chains(X.group, 1):
            L = link_model(X, chain)
            if L.complex.n_vertices == 0:
                continue
            assert reduced(link_suspension(L, 1)) == (0,) + reduced(L) or \
                (reduced(L) == () and reduced(link_suspension(L, 1)) == ())


def test_strata_partition_barycenters():
    X = rep_disk(C4, [("rotation", 1, 1), ("rotation", 2, 1)])
    sd = X.subdivision.complex
    seen = []
    for H in C4.subgroups:
        L = stratum_model(X, H)
        seen += list(L.complex.labels or ())
    assert sorted(seen, key=lambda s: (len(s), s)) == list(sd.labels)


@pytest.mark.filterwarnings("ignore::isovariant.errors.IntermediateStrataWarning")
def test_conjugation_invariance_is_an_isomorphism():
    G = symmetric(3)
    X = linking_simplex(G, G.parse_chain("e<G"))
    for chain in enumerate_chains(G, 1):
        L = chain_link_model(X, chain)
        for g in G.elements:
            M = chain_link_model(X, G.conjugate_chain(g, chain))

            def move(label):
                if isinstance(label[0], tuple):
                    return tuple(sorted((X.act(g, s) for s in label), key=lambda s: (len(s), s)))
                return X.act(g, label)

            moved = {move(lab) for lab in L.complex.labels}
            assert moved == set(M.complex.labels)
            assert homology_of(L.complex) == homology_of(M.complex)


def test_pair_model_symmetric_in_levels():
    X = rep_compactification(C3, ["trivial", "rotation"])
    sd = X.subdivision.complex
    iso = [X.isotropy(s) for s in sd.labels]
    allowed = {v: (0 if iso[v] == C3.trivial else 1) for v in range(sd.n_vertices)}
    swapped = {v: 1 - k for v, k in allowed.items()}
    A = _mixed_order_complex(sd, allowed, 2)
    B = _mixed_order_complex(sd, swapped, 2)
    assert A.labels == B.labels and A.simplices == B.simplices


def test_provisional_flags():
    X = rep_disk(C4, [("rotation", 1, 1), ("rotation", 2, 1)])
    with pytest.warns(IntermediateStrataWarning):
        L = chain_link_model(X, C4.parse_chain("e<C4"))
    assert L.provisional
    long = chain_link_model(X, C4.parse_chain("e<C2<C4"))
    assert long.provisional
    assert not chain_link_model(X, C4.parse_chain("C2<C4")).provisional


def test_induced_maps():
    S, D = rep_sphere(C2, ["sign"]), rep_disk(C2, ["sign"])
    f = GSimplicialMap(S, D, tuple(range(S.n_vertices)))
    phi = induced_link_map(f, SubgroupChain((C2.trivial,)))
    assert phi.source.n_components == phi.target.n_components == 2
    comp = {v: i for i, c in enumerate(phi.target.components) for v in c}
    assert len({comp[phi.vertex_map[v]] for v in range(phi.source.n_vertices)}) == 2
    psi = induced_link_map(f, SubgroupChain((C2.whole,)))
    assert psi.source.n_vertices == 0 and psi.target.n_vertices == 1


def test_induced_map_requires_isovariance():
    from isovariant.complexes import point
    D = rep_disk(C2, ["sign"])
    f = GSimplicialMap(D, point(C2), (0,) * D.n_vertices)
    with pytest.raises(NotIsovariant):
        induced_link_map(f, SubgroupChain((C2.trivial,)))


def test_functoriality():
    S = rep_sphere(C2, ["sign"])
    D = rep_disk(C2, ["sign"])
    Sc = rep_compactification(C2, ["sign"])
    f = GSimplicialMap(S, D, tuple(range(S.n_vertices)))
    g = GSimplicialMap(D, Sc, tuple(range(D.n_vertices)))
    for chain in enumerate_chains(C2, 1):
        ident = induced_link_map(identity_map(D), chain)
        assert ident.vertex_map == tuple(range(ident.source.n_vertices))
        gf = induced_link_map(g.compose(f), chain)
        lf, lg = induced_link_map(f, chain), induced_link_map(g, chain)
        assert gf.vertex_map == tuple(lg.vertex_map[v] for v in lf.vertex_map)
