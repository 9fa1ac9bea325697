import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st
from networkx.algorithms.isomorphism import GraphMatcher

from avoidkit.graphs import (
    MAX_ORDER,
    CapacityError,
    Graph,
    Graph6Error,
    automorphisms,
    canonical_form,
    canonical_labeling,
    complement,
    degree_set,
    enumerate_classes,
    from_graph6,
    induced_subgraph,
    is_asymmetric,
    is_isomorphic,
    nontrivial_automorphism,
    to_graph6,
)
from oracles import all_labeled_edge_sets, brute_automorphism_count, brute_canonical, brute_class_count, edge_set


@st.composite
def graphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph.from_edges(n, chosen)


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def shuffled(g, rng):
    perm = list(range(g.n))
    rng.shuffle(perm)
    return g.relabel(perm)


# -- construction ---------------------------------------------------------------

def test_named_graphs():
    assert Graph.complete(5).num_edges == 10
    assert Graph.cycle(6).degrees() == [2] * 6
    assert Graph.path(4).num_edges == 3
    assert sorted(Graph.star(3).degrees()) == [1, 1, 1, 3]
    assert Graph.empty(3).num_edges == 0


def test_bad_adjacency_rejected():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))
    with pytest.raises(ValueError):
        Graph(1, (1,))
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 0)])


def test_complement_and_induced():
    c = complement(Graph.cycle(5))
    assert is_isomorphic(c, Graph.cycle(5))
    sub = induced_subgraph(Graph.cycle(6), [0, 1, 2, 4])
    assert sorted(sub.edges()) == [(0, 1), (1, 2)]
    assert degree_set(Graph.star(3)) == frozenset({1, 3})


# -- graph6 ---------------------------------------------------------------------

def test_graph6_single_vertex():
    assert to_graph6(Graph.empty(1)) == "@"
    assert from_graph6("@") == Graph.empty(1)


def test_graph6_known_strings():
    assert to_graph6(Graph.complete(4)) == "C~"
    assert to_graph6(Graph.cycle(5)) == nx.to_graph6_bytes(nx.cycle_graph(5), header=False).decode().strip()


@given(graphs(max_n=MAX_ORDER))
def test_graph6_matches_networkx_and_round_trips(g):
    ours = to_graph6(g)
    theirs = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
    assert ours == theirs
    assert from_graph6(ours) == g


def test_graph6_rejects_junk():
    for bad in ["", "C~~", "A\x7f"]:
        with pytest.raises(Graph6Error):
            from_graph6(bad)
    with pytest.raises(CapacityError):
        from_graph6("~??~")


def test_capacity_cap():
    text = to_graph6(Graph.empty(MAX_ORDER + 1))
    with pytest.raises(CapacityError):
        from_graph6(text)
    with pytest.raises(ValueError):
        enumerate_classes(9)


# -- canonical forms ---------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_class_counts_match_brute_force(n):
    assert len(enumerate_classes(n)) == brute_class_count(n)


@pytest.mark.slow
def test_class_counts_up_to_eight():
    # numbers of unlabeled graphs on 6, 7, 8 vertices (OEIS A000088)
    assert [len(enumerate_classes(k)) for k in (6, 7, 8)] == [156, 1044, 12346]


def test_canonical_form_agrees_with_brute_force_on_five_vertices():
    seen_brute: dict = {}
    seen_ours: dict = {}
    pairs = list(combinations(range(5), 2))
    for edges in all_labeled_edge_sets(5):
        g = Graph.from_edges(5, [tuple(sorted(e)) for e in edges])
        b = brute_canonical(5, edges)
        c = canonical_form(g)
        # the two canonical maps induce the same partition
        assert seen_brute.setdefault(b, c) == c
        assert seen_ours.setdefault(c, b) == b
    assert len(pairs) == 10


@given(graphs(max_n=6), st.randoms(use_true_random=False))
def test_canonical_form_invariant_under_relabeling(g, rng):
    assert canonical_form(shuffled(g, rng)) == canonical_form(g)


@given(graphs(max_n=9), graphs(max_n=9))
def test_isomorphism_agrees_with_networkx(g, h):
    assert is_isomorphic(g, h) == nx.is_isomorphic(to_nx(g), to_nx(h))


@given(graphs(max_n=10))
def test_canonical_labeling_realizes_form(g):
    cf, order = canonical_labeling(g)
    inverse = [0] * g.n
    for pos, v in enumerate(order):
        inverse[v] = pos
    assert g.relabel(inverse) == cf.graph()


def test_canonical_form_on_larger_regular_graphs():
    rng = random.Random(3)
    petersen = Graph.from_edges(10, list(nx.petersen_graph().edges()))
    assert canonical_form(shuffled(petersen, rng)) == canonical_form(petersen)
    assert not is_isomorphic(petersen, Graph.from_edges(10, list(nx.circulant_graph(10, [1, 2]).edges())))


# -- automorphisms ---------------------------------------------------------------

@given(graphs(max_n=6))
def test_automorphism_count_matches_brute_force(g):
    assert len(automorphisms(g)) == brute_automorphism_count(g.n, edge_set(g))


@given(graphs(max_n=7))
def test_automorphism_group_axioms(g):
    group = automorphisms(g)
    as_set = set(group)
    ident = tuple(range(g.n))
    assert ident in as_set
    for p in group[:6]:
        assert g.relabel(p) == g
        inv = [0] * g.n
        for i, v in enumerate(p):
            inv[v] = i
        assert tuple(inv) in as_set
        for q in group[:6]:
            assert tuple(p[q[i]] for i in range(g.n)) in as_set


@given(graphs(max_n=7))
def test_group_order_matches_networkx(g):
    nxg = to_nx(g)
    count = sum(1 for _ in GraphMatcher(nxg, nxg).isomorphisms_iter())
    assert len(automorphisms(g)) == count


def test_known_group_orders():
    assert len(automorphisms(Graph.cycle(6))) == 12
    assert len(automorphisms(Graph.complete(5))) == 120
    assert len(automorphisms(Graph.from_edges(10, list(nx.petersen_graph().edges())))) == 120


@given(graphs(max_n=7))
def test_asymmetry_consistent(g):
    witness = nontrivial_automorphism(g)
    assert is_asymmetric(g) == (witness is None) == (len(automorphisms(g)) == 1)
    if witness is not None:
        assert witness != tuple(range(g.n))
        assert g.relabel(witness) == g


def test_smallest_asymmetric_graphs_have_six_vertices():
    assert not any(is_asymmetric(cf.graph()) for k in range(2, 6) for cf in enumerate_classes(k))
    assert sum(is_asymmetric(cf.graph()) for cf in enumerate_classes(6)) == 8


def test_nontrivial_automorphism_on_large_complete_graph():
    assert nontrivial_automorphism(Graph.complete(30)) is not None
