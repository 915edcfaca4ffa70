import pytest
from hypothesis import given, strategies as st

from isovariant.errors import AxiomViolation, InvalidChain
from isovariant.groups import (Subgroup, SubgroupChain, chain_class, chain_classes, cyclic,
                               dihedral, enumerate_chains, enumerate_subgroups, make_group,
                               symmetric)
from oracles import brute_subgroups

SMALL = [cyclic(1), cyclic(2), cyclic(3), cyclic(4), cyclic(6), symmetric(3), dihedral(4),
         cyclic(8)]


def test_make_group_specs():
    assert make_group("cyclic 1").order == 1
    C6 = make_group("cyclic 6")
    assert C6.order == 6 and C6.is_abelian
    S3 = make_group({"kind": "symmetric", "n": 3})
    assert S3.order == 6 and not S3.is_abelian
    assert make_group(("dihedral", 4)).order == 8


def test_axiom_violation_on_bad_table():
    with pytest.raises(AxiomViolation):
        make_group({"table": [[0, 1], [1, 1]]})
    with pytest.raises(AxiomViolation):  # not associative
        make_group({"table": [[0, 1, 2], [1, 0, 0], [2, 2, 0]]})


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_subgroups_match_brute_force(G):
    found = {frozenset(H.members) for H in enumerate_subgroups(G)}
    assert found == brute_subgroups(G.table)
    assert len(enumerate_subgroups(G)) == len(found)


def test_subgroup_counts():
    assert len(enumerate_subgroups(cyclic(2))) == 2
    assert sorted(H.order for H in enumerate_subgroups(cyclic(6))) == [1, 2, 3, 6]
    assert len(enumerate_subgroups(symmetric(3))) == 6
    assert len(enumerate_subgroups(symmetric(4))) == 30


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_subgroup_list_closed_under_conjugation(G):
    subs = set(G.subgroups)
    assert all(G.conjugate(g, H) in subs for H in subs for g in G.elements)


def test_chain_counts():
    assert len(enumerate_chains(cyclic(2), 1)) == 3
    assert len(enumerate_chains(cyclic(2), 5)) == 3
    assert len(enumerate_chains(cyclic(4), 2)) == 7
    assert len(enumerate_chains(cyclic(1), 3)) == 1


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_length_zero_chains_are_subgroups(G):
    assert [c[0] for c in enumerate_chains(G, 0)] == list(G.subgroups)


def _brute_chains(G, max_len):
    subs = list(G.subgroups)
    out = set()
    frontier = [(H,) for H in subs]
    while frontier:
        out.update(frontier)
        frontier = [c + (K,) for c in frontier if len(c) <= max_len
                    for K in subs if c[-1].is_strict_subgroup(K)]
    return {c for c in out if len(c) <= max_len + 1}


@pytest.mark.parametrize("G", SMALL[:7], ids=lambda G: G.name)
def test_chains_each_once(G):
    chains = [c.subgroups for c in enumerate_chains(G, 2)]
    assert len(chains) == len(set(chains))
    assert set(chains) == _brute_chains(G, 2)


def test_abelian_chains_are_own_classes():
    G = cyclic(6)
    for c in enumerate_chains(G, 3):
        assert chain_class(G, c).representative.subgroups == c.subgroups


def test_s3_transposition_chains_collapse():
    G = symmetric(3)
    order2 = [H for H in G.subgroups if H.order == 2]
    assert len(order2) == 3
    classes = {chain_class(G, SubgroupChain((G.trivial, H))).key for H in order2}
    assert len(classes) == 1
    assert len(chain_classes(G, 3)) == 11


@given(st.sampled_from(SMALL), st.data())
def test_chain_class_conjugation_invariant(G, data):
    chains = enumerate_chains(G, 3)
    c = data.draw(st.sampled_from(chains))
    g = data.draw(st.sampled_from(list(G.elements)))
    assert chain_class(G, c) == chain_class(G, G.conjugate_chain(g, c))


def test_invalid_chain():
    G = cyclic(4)
    with pytest.raises(InvalidChain):
        SubgroupChain((G.whole, G.trivial))
    with pytest.raises(InvalidChain):
        SubgroupChain((G.trivial, G.trivial))


def test_labels_round_trip():
    for G in (cyclic(6), symmetric(3), dihedral(4)):
        for c in enumerate_chains(G, 3):
            assert G.parse_chain(G.chain_label(c)) == c
    C6 = cyclic(6)
    assert C6.chain_label(C6.parse_chain("e<C2<C6")) == "e<C2<C6"
    assert C6.parse_subgroup("G") == C6.whole
