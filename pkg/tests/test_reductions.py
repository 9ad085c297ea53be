from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geolab.engine import Player, Position, Variant
from geolab.graph import Bipartition, GameGraph, OddCycle, check_bipartite, max_degree
from geolab.qbf import QbfError, QbfInstance, evaluate, normalize_for, random_instance
from geolab.reductions import (
    ReductionArtifact,
    geography_to_uir4,
    stack2_to_stack1,
    thirteen_cycle,
    tqbf_to_dif,
    tqbf_to_dpf,
    tqbf_to_upf,
    tqbf_to_upr,
    undirect_to_direct,
)
from geolab.solver import solve_brute
from geolab.verify.fixtures import WORKED_FORMULA, meta_source, split_path_source
from geolab.verify.oracle import random_geography_position, random_position

FORMULA = {"DIF": tqbf_to_dif, "DPF": tqbf_to_dpf, "UPR": tqbf_to_upr, "UPF": tqbf_to_upf}

formulas = st.builds(
    lambda n, m, seed: random_instance(n, m, seed),
    st.sampled_from([2, 4, 6]),
    st.integers(1, 5),
    st.integers(0, 10**6),
)


def artifact(kind: str, q: QbfInstance) -> ReductionArtifact:
    return FORMULA[kind](normalize_for(q, kind))


# -- edge doubling and unstacking ----------------------------------------------------


def test_single_edge_becomes_two_arcs():
    p = Position(GameGraph("undirected", [1, 1], [(0, 1)]), Variant.parse("UIR"), (0,))
    a = undirect_to_direct(p)
    assert a.graph.edges == ((0, 1), (1, 0))
    assert a.variant.code == "DIR"


def test_edgeless_graph_unchanged():
    p = Position(GameGraph("undirected", [1, 1, 1], []), Variant.parse("UIF"), (2,))
    a = undirect_to_direct(p)
    assert a.graph.n == 3 and a.graph.edges == () and a.position.tokens == (2,)


def test_directed_input_rejected():
    with pytest.raises(ValueError):
        undirect_to_direct(meta_source())


def test_split_path_vertex_count():
    a = stack2_to_stack1(split_path_source())
    assert a.graph.n == 8 and len(a.graph.edges) == 9
    assert a.variant.code == "DPR"


def test_unit_heights_copy_unchanged():
    p = random_position(random.Random(4), Variant.parse("UPF"), 6, 1)
    a = stack2_to_stack1(p)
    assert a.graph.n == p.graph.n and len(a.graph.edges) == len(p.graph.edges)


def test_height_three_rejected():
    p = Position(GameGraph("undirected", [3, 1], [(0, 1)]), Variant.parse("UIR3"), (0,))
    with pytest.raises(ValueError):
        stack2_to_stack1(p)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(["UIR", "UPF", "DIF", "DPR"]), st.integers(0, 10**6))
def test_unstacking_keeps_bipartiteness(code, seed):
    p = random_position(random.Random(seed), Variant.parse(code), 6, 2)
    a = stack2_to_stack1(p)
    src, out = check_bipartite(p.graph), check_bipartite(a.graph)
    assert isinstance(src, Bipartition) == isinstance(out, Bipartition)
    if a.claimed_bipartition is not None:
        assert a.claimed_bipartition.is_valid(a.graph)
    if isinstance(out, OddCycle):
        assert out.is_valid(a.graph)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_edge_doubling_preserves_winner(seed):
    p = random_position(random.Random(seed), Variant.parse(random.Random(seed).choice(["UIR", "UIF", "UPR", "UPF"])), 6, 2)
    assert solve_brute(undirect_to_direct(p).position).winner is solve_brute(p).winner


# -- formula reductions ---------------------------------------------------------------


def test_worked_dif_counts():
    a = tqbf_to_dif(WORKED_FORMULA)
    assert a.graph.n == 38
    assert len(a.group("variable")) == 22
    assert a.variant.code == "DIF"
    assert a.position.tokens == (a.vertex("variable", (1,), "top"),)


def test_small_dif_winner():
    q = QbfInstance(2, ((1, 1, -2),))
    assert (solve_brute(tqbf_to_dif(q).position).winner is Player.LEFT) == evaluate(q)


def test_dpf_sizes_for_four_clauses():
    a = artifact("DPF", QbfInstance(2, ((1, 1, -2),)))
    assert a.source.m == 4
    assert len(a.group("delay")) == 5
    assert len(a.group("clause_deletion")) == 5
    assert len(a.group("escape")) == 3
    assert a.sizes["linker_path"] == 1


def test_dpf_precondition_named():
    with pytest.raises(ValueError, match="clause"):
        tqbf_to_dpf(QbfInstance(2, ((1, 1, -2),)))


def test_dpf_small_winner():
    q = normalize_for(QbfInstance(2, ((1, 2, 2),)), "DPF")
    assert (solve_brute(tqbf_to_dpf(q).position).winner is Player.LEFT) == evaluate(q)


def test_upr_sizes():
    q = normalize_for(random_instance(4, 2, 1), "UPR")
    a = tqbf_to_upr(q)
    n = q.n
    assert len(a.group("escape")) == 3 * n + 25
    assert all(len(a.group("clause_connector", (j,))) == n + 4 for j in range(1, q.m + 1))
    half = q.m + n // 2 + 5
    assert len(a.group("delay")) == 2 * half
    assert len(a.group("exit")) == 1
    assert len(a.group("selector")) == q.m - 1
    assert a.variant.code == "UPR"


def test_upr_precondition():
    with pytest.raises((ValueError, QbfError)):
        tqbf_to_upr(QbfInstance(2, ((1, 1, -2),)))


def test_upf_sizes_three_clauses():
    q = normalize_for(QbfInstance(2, ((1, 1, -2),)), "UPF")
    a = tqbf_to_upf(q)
    m = q.m
    assert a.sizes["deletion_path"] == m + 3 == 6
    assert len(a.group("delay")) == m + 9
    assert len(a.group("escape")) == 8 * m + 7
    assert len(a.group("prize")) == 1
    assert a.variant.code == "UPF"


def test_upf_precondition():
    with pytest.raises((ValueError, QbfError)):
        tqbf_to_upf(QbfInstance(2, ((1, 1, -2),)))


@settings(max_examples=40, deadline=None)
@given(formulas)
def test_upf_win_path_invariant_and_odd_cycle(q):
    a = artifact("UPF", q)
    win = len(a.group("win_path"))
    assert win == a.graph.n - win + 2
    cyc = thirteen_cycle(a)
    assert len(cyc) == 13 and OddCycle(tuple(cyc)).is_valid(a.graph)


@settings(max_examples=40, deadline=None)
@given(formulas, st.sampled_from(["DIF", "DPF", "UPR"]))
def test_claimed_bipartitions_validate(q, kind):
    a = artifact(kind, q)
    assert a.claimed_bipartition is not None
    assert a.claimed_bipartition.violations(a.graph) == []


@settings(max_examples=30, deadline=None)
@given(formulas, st.sampled_from(sorted(FORMULA)))
def test_deterministic_and_round_trips(q, kind):
    a, b = artifact(kind, q), artifact(kind, q)
    assert a.to_dict() == b.to_dict()
    again = ReductionArtifact.from_dict(a.to_dict())
    assert again.to_dict() == a.to_dict()
    assert len(a.roles) == a.graph.n


# -- Geography into stacked undirected ------------------------------------------------


def test_single_vertex_meta_path():
    p = Position(GameGraph("directed", [1], []), Variant.parse("DIR"), (0,))
    a = geography_to_uir4(p)
    assert a.graph.heights == (2, 4, 3, 1, 1)
    assert solve_brute(a.position).winner is Player.RIGHT


def test_meta_graph_counts():
    a = geography_to_uir4(meta_source())
    assert a.graph.n == 25
    assert len(a.graph.edges) == 28
    assert a.variant.code == "UIR4"
    assert a.position.tokens == (0,)


def test_two_vertex_winner():
    p = Position(GameGraph("directed", [1, 1], [(0, 1)]), Variant.parse("DIR"), (0,))
    assert solve_brute(geography_to_uir4(p).position).winner is solve_brute(p).winner


def test_non_classic_input_rejected():
    p = Position(GameGraph("directed", [1, 1], [(0, 1)]), Variant.parse("DIF"), (0,))
    with pytest.raises(ValueError):
        geography_to_uir4(p)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_meta_degree_bound(seed):
    rng = random.Random(seed)
    p = random_geography_position(rng, 6)
    ins = [0] * p.graph.n
    outs = [0] * p.graph.n
    for a, b in p.graph.edges:
        outs[a] += 1
        ins[b] += 1
    small = all(i <= 2 and o <= 2 and i + o <= 3 for i, o in zip(ins, outs))
    out = geography_to_uir4(p)
    if small:
        assert max_degree(out.graph)[2] <= 3
