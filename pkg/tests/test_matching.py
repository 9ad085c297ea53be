from __future__ import annotations

import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geolab.graph import GameGraph
from geolab.matching import (
    Matching,
    MatchingError,
    is_essential,
    matching_number,
    maximum_matching,
    union_components,
)
from geolab.verify.fixtures import COUNTER_NAMES, counterexample, odd_difference_components

from conftest import undirected_graphs


def nx_size(g: GameGraph) -> int:
    h = nx.Graph()
    h.add_nodes_from(g.live_vertices())
    h.add_edges_from(g.live_edges())
    return len(nx.max_weight_matching(h, maxcardinality=True))


def brute_size(g: GameGraph) -> int:
    edges = g.live_edges()
    for k in range(len(g.live_vertices()) // 2, 0, -1):
        for sub in itertools.combinations(edges, k):
            if len({x for e in sub for x in e}) == 2 * k:
                return k
    return 0


def all_maximum(g: GameGraph) -> list[set]:
    k = brute_size(g)
    return [
        set(sub)
        for sub in itertools.combinations(g.live_edges(), k)
        if len({x for e in sub for x in e}) == 2 * k
    ]


def cycle(n):
    return GameGraph("undirected", [1] * n, [(i, (i + 1) % n) for i in range(n)])


def named(*pairs):
    idx = {c: i for i, c in enumerate(COUNTER_NAMES)}
    return Matching.of((idx[a], idx[b]) for a, b in pairs)


def test_small_sizes():
    assert matching_number(GameGraph("undirected", [1] * 3, [(0, 1), (1, 2)])) == 1
    assert matching_number(cycle(4)) == 2
    assert matching_number(counterexample().graph) == 2


def test_directed_rejected():
    with pytest.raises(MatchingError):
        maximum_matching(GameGraph("directed", [1, 1], [(0, 1)]))


def test_counterexample_essential_vertices():
    g = counterexample().graph
    u, v = COUNTER_NAMES.index("u"), COUNTER_NAMES.index("v")
    assert is_essential(g, u)
    assert not is_essential(g, v)
    assert len(all_maximum(g)) == 4


def test_isolated_vertex_not_essential():
    assert not is_essential(GameGraph("undirected", [1], []), 0)


def test_union_of_equal_matchings():
    m = named(("u", "t"), ("v", "w"))
    comps = union_components(m, m)
    assert all(c.kind == "path" and c.edge_count == 1 and not c.in_difference for c in comps)


def test_union_of_four_cycle_matchings():
    comps = union_components(Matching.of([(0, 1), (2, 3)]), Matching.of([(1, 2), (3, 0)]))
    assert [(c.kind, c.edge_count) for c in comps] == [("cycle", 4)]


def test_union_in_counterexample():
    comps = union_components(named(("u", "t"), ("v", "w")), named(("u", "t"), ("v", "x")))
    shapes = sorted((c.kind, c.edge_count, c.in_difference) for c in comps)
    assert shapes == [("path", 1, False), ("path", 2, True)]


@settings(max_examples=300, deadline=None)
@given(undirected_graphs(max_n=12), st.integers(0, 1000))
def test_size_matches_networkx(g, seed):
    m = maximum_matching(g, seed=seed)
    assert m.violations(g) == []
    assert len(m) == nx_size(g)


@settings(max_examples=150, deadline=None)
@given(undirected_graphs(max_n=8))
def test_size_matches_brute_force(g):
    assert matching_number(g) == brute_size(g)


@settings(max_examples=100, deadline=None)
@given(undirected_graphs(max_n=7))
def test_essential_matches_enumeration(g):
    maxima = all_maximum(g)
    for v in g.live_vertices():
        covered = all(any(v in e for e in m) for m in maxima) if maxima else False
        assert is_essential(g, v) == covered


@settings(max_examples=200, deadline=None)
@given(undirected_graphs(max_n=12), st.integers(0, 10**6), st.integers(0, 10**6))
def test_differences_are_even(g, s1, s2):
    m1, m2 = maximum_matching(g, seed=s1), maximum_matching(g, seed=s2)
    assert odd_difference_components(m1, m2) == []


def test_deterministic_for_fixed_seed():
    g = cycle(8)
    assert maximum_matching(g, seed=3).edges == maximum_matching(g, seed=3).edges


def test_exhaustive_up_to_six_vertices():
    for n in range(1, 7):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            g = GameGraph("undirected", [1] * n, [e for i, e in enumerate(pairs) if mask >> i & 1])
            assert matching_number(g) == brute_size(g), g.edges
