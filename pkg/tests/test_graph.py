from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings

from geolab.graph import (
    Bipartition,
    GameGraph,
    GraphError,
    OddCycle,
    check_bipartite,
    components,
    is_bipartite,
    is_connected,
    max_degree,
)
from geolab.verify.fixtures import counterexample, lemma_path

from conftest import directed_graphs, undirected_graphs


def to_nx(g: GameGraph):
    h = nx.DiGraph() if g.directed else nx.Graph()
    h.add_nodes_from(g.live_vertices())
    h.add_edges_from(g.live_edges())
    return h


def test_path_neighbors():
    g = GameGraph("undirected", [1, 1, 1], [(0, 1), (1, 2)])
    assert g.neighbors(1) == [0, 2]
    assert g.neighbors(1, "predecessors") == g.neighbors(1, "undirected") == [0, 2]


def test_arc_direction():
    g = GameGraph("directed", [1, 1], [(0, 1)])
    assert g.neighbors(0, "successors") == [1]
    assert g.neighbors(0, "predecessors") == []
    assert g.neighbors(1, "undirected") == [0]


def test_deleted_vertex_is_hidden_and_unqueryable():
    g = lemma_path().graph.with_heights([1, 2, 1, 0, 1])
    assert g.neighbors(2) == [1]
    with pytest.raises(GraphError):
        g.neighbors(3)


@pytest.mark.parametrize(
    "edges, why",
    [([(0, 0)], "self-loop"), ([(0, 1), (1, 0)], "duplicate"), ([(0, 5)], "outside")],
)
def test_rejects_bad_edges(edges, why):
    with pytest.raises(GraphError, match=why):
        GameGraph("undirected", [1, 1], edges)


def test_directed_keeps_antiparallel_arcs():
    g = GameGraph("directed", [1, 1], [(0, 1), (1, 0)])
    assert len(g.edges) == 2


def test_four_cycle_bipartition():
    g = GameGraph("undirected", [1] * 4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    b = check_bipartite(g)
    assert isinstance(b, Bipartition)
    assert {frozenset(b.part_a), frozenset(b.part_b)} == {frozenset({0, 2}), frozenset({1, 3})}


def test_counterexample_odd_cycle():
    cert = check_bipartite(counterexample().graph)
    assert isinstance(cert, OddCycle)
    assert {0, 1, 2} <= set(cert.vertices)
    assert cert.is_valid(counterexample().graph)


def test_empty_graph_bipartite():
    b = check_bipartite(GameGraph("undirected", [], []))
    assert isinstance(b, Bipartition) and not b.part_a and not b.part_b


def test_max_degree():
    assert max_degree(GameGraph("directed", [1, 1], [(0, 1)])) == (1, 1, 1)
    assert max_degree(lemma_path().graph)[2] == 2


@settings(max_examples=200, deadline=None)
@given(undirected_graphs(max_n=10))
def test_bipartite_matches_networkx(g):
    cert = check_bipartite(g)
    assert isinstance(cert, Bipartition) == nx.is_bipartite(to_nx(g))
    if isinstance(cert, Bipartition):
        assert cert.is_valid(g)
        assert set(cert.part_a) | set(cert.part_b) == set(g.live_vertices())
    else:
        assert cert.is_valid(g)


@settings(max_examples=100, deadline=None)
@given(directed_graphs(max_n=7))
def test_directed_bipartite_ignores_direction(g):
    assert is_bipartite(g) == nx.is_bipartite(to_nx(g).to_undirected())


@settings(max_examples=100, deadline=None)
@given(undirected_graphs(max_n=9))
def test_components_match_networkx(g):
    ours = sorted(sorted(c) for c in components(g))
    theirs = sorted(sorted(c) for c in nx.connected_components(to_nx(g)))
    assert ours == theirs
    if g.live_vertices():
        assert is_connected(g) == nx.is_connected(to_nx(g))


@settings(max_examples=100, deadline=None)
@given(undirected_graphs(max_n=9))
def test_json_round_trip(g):
    assert GameGraph.from_dict(g.to_dict()) == g


@settings(max_examples=100, deadline=None)
@given(directed_graphs(max_n=6))
def test_neighbors_consistent_with_arcs(g):
    for v in g.live_vertices():
        assert set(g.neighbors(v)) == {b for a, b in g.edges if a == v and g.heights[b]}
