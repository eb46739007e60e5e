import random

import pytest
from hypothesis import given

from p7c5 import coloring, families
from p7c5.decompose import (
    expand_quotient, find_clique_cutset, find_comparable_pair, find_homogeneous_set,
    find_nonclique_homogeneous_set, find_universal_clique, is_homogeneous, twin_quotient,
)
from p7c5.families import BlowupSpec, FamilySpec, generate_blowup, generate_family
from p7c5.graph import GraphError, build, complete, components_masks, cycle, disjoint_union, path, remove, to_mask
from p7c5.isomorphism import are_isomorphic
from p7c5.streams import random_graph

from conftest import exhaustive, graphs
from oracles import comparable_pairs, has_clique_cutset, homogeneous_sets, universal_vertices


def wheel(k: int):
    return build(k + 1, [(i, (i + 1) % k) for i in range(k)] + [(k, i) for i in range(k)])


def test_comparable_pair_examples():
    star = build(4, [(0, 1), (0, 2), (0, 3)])
    assert find_comparable_pair(star) == (1, 2)
    assert find_comparable_pair(cycle(7)) is None
    f9 = generate_family(FamilySpec.make("F9", 2, 1))
    assert find_comparable_pair(f9) is None


def test_universal_clique_examples():
    assert find_universal_clique(wheel(6)) == {6}
    assert find_universal_clique(cycle(7)) is None
    assert find_universal_clique(complete(5)) == set(range(5))


def test_clique_cutset_examples():
    assert find_clique_cutset(path(3)) == {1}
    bowtie = build(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    assert find_clique_cutset(bowtie) == {2}
    assert find_clique_cutset(cycle(7)) is None
    with pytest.raises(GraphError):
        find_clique_cutset(disjoint_union(path(2), path(2)))


def test_homogeneous_set_examples():
    paw = build(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    assert find_homogeneous_set(paw) == {0, 1}
    assert find_homogeneous_set(cycle(7)) is None
    assert homogeneous_sets(cycle(7)) == []
    g = generate_blowup(BlowupSpec((1, 3, 1, 1, 1, 1, 1)))
    assert is_homogeneous(g, frozenset({1, 2, 3}))


def test_twin_quotient_examples():
    g = generate_blowup(BlowupSpec((2, 1, 1, 1, 1, 1, 1)))
    tq = twin_quotient(g)
    assert sorted(len(c) for c in tq.classes) == [1, 1, 1, 1, 1, 1, 2]
    assert are_isomorphic(tq.quotient, cycle(7))
    assert [len(c) for c in twin_quotient(cycle(7)).classes] == [1] * 7
    # Two T1 vertices of F9 are matched to different T3 vertices, so they are not twins.
    ng = families.named_family(FamilySpec.make("F9", 2, 1))
    t1 = [ng.index(name) for name in ng.names if name.startswith("s")]
    assert len(t1) == 2
    tq = twin_quotient(ng.graph)
    assert tq.class_of(t1[0]) != tq.class_of(t1[1])


@given(graphs(max_n=10))
def test_comparable_pair_is_least(g):
    pairs = comparable_pairs(g)
    assert find_comparable_pair(g) == (min(pairs) if pairs else None)


@given(graphs(max_n=10))
def test_universal_clique_is_all_universal_vertices(g):
    k = find_universal_clique(g)
    uv = universal_vertices(g)
    assert k == (frozenset(uv) if uv else None)
    if k:
        assert g.is_clique(to_mask(k))


@pytest.mark.parametrize("n", range(1, 8))
def test_clique_cutset_matches_oracle(n):
    for g in exhaustive(n):
        if len(components_masks(g)) != 1:
            continue
        k = find_clique_cutset(g)
        assert (k is not None) == has_clique_cutset(g)
        if k is not None:
            h, _ = remove(g, k)
            assert g.is_clique(to_mask(k)) and len(components_masks(h)) > 1


@pytest.mark.parametrize("n", range(1, 8))
def test_homogeneous_set_matches_oracle(n):
    for g in exhaustive(n):
        s = find_homogeneous_set(g)
        all_sets = homogeneous_sets(g)
        assert (s is not None) == bool(all_sets)
        if s is not None:
            assert s in all_sets and 1 < len(s) < g.n
            assert not any(t < s for t in all_sets), "search should return a minimal module"


@given(graphs(max_n=10))
def test_nonclique_homogeneous_set(g):
    s = find_nonclique_homogeneous_set(g)
    if s is not None:
        assert is_homogeneous(g, s) and not g.is_clique(to_mask(s))


@given(graphs(max_n=10))
def test_twin_quotient_round_trip(g):
    tq = twin_quotient(g)
    assert expand_quotient(tq) == g
    for c in tq.classes:
        assert g.is_stable(to_mask(c))
        assert len({g.adj[v] for v in c}) == 1


def test_reduction_identities_small():
    rng = random.Random(11)
    for _ in range(150):
        g = random_graph(rng, rng.randint(2, 9), rng.choice([0.3, 0.5, 0.8]))
        chi = coloring.exact_chromatic(g)[0]
        pair = find_comparable_pair(g)
        if pair:
            assert coloring.exact_chromatic(remove(g, [pair[0]])[0])[0] == chi
        k = find_universal_clique(g)
        if k:
            assert coloring.exact_chromatic(remove(g, k)[0])[0] + len(k) == chi
