from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geolab.engine import (
    BAD_DELETION,
    BAD_SOURCE,
    BAD_TARGET,
    HEIGHT_CLIMB,
    OCCUPIED_TARGET,
    IllegalMove,
    Move,
    Player,
    Position,
    PositionError,
    Variant,
    apply_move,
    encode_position,
    legal_moves,
    loser_if_stuck,
)
from geolab.graph import GameGraph
from geolab.verify.fixtures import lemma_path
from geolab.verify.oracle import ALL_VARIANTS, random_position


def pos(code, heights, edges, tokens, to_move=Player.LEFT):
    var = Variant.parse(code)
    return Position(GameGraph(var.orientation, heights, edges), var, tokens, to_move)


@pytest.mark.parametrize("code", ["DIR", "UPF3", "dpr", "UIR4"])
def test_variant_codes_round_trip(code):
    v = Variant.parse(code)
    assert Variant.parse(v.code) == v
    assert Variant.from_dict(v.to_dict()) == v


def test_variant_code_omits_unit_height():
    assert Variant.parse("DIF1").code == "DIF"


@pytest.mark.parametrize("bad", ["XIR", "DIRR", "", "DI"])
def test_bad_variant_code(bad):
    with pytest.raises(ValueError):
        Variant.parse(bad)


def test_position_invariants():
    with pytest.raises(PositionError, match="share"):
        pos("UPR", [1, 1], [(0, 1)], (0, 0))
    with pytest.raises(PositionError, match="deleted"):
        pos("UIR", [0, 1], [(0, 1)], (0,))
    with pytest.raises(PositionError, match="exceeds"):
        pos("UIR", [2, 1], [(0, 1)], (0,))
    with pytest.raises(PositionError, match="token"):
        pos("UPR", [1, 1], [(0, 1)], (0,))


def test_isolated_vertex_is_stuck():
    p = pos("UIR", [1], [], (0,))
    assert legal_moves(p) == []
    assert loser_if_stuck(p) is Player.LEFT


def test_lemma_start_is_forced():
    p = lemma_path()
    assert legal_moves(p) == [Move(0, 1, 0)]
    assert loser_if_stuck(p) is None


def test_lemma_forced_line():
    p = lemma_path()
    for m in [Move(0, 1, 0), Move(1, 2, 1), Move(2, 1, 2), Move(1, 2, 1)]:
        assert legal_moves(p) == [m] or m in legal_moves(p)
        p = apply_move(p, m)
    assert p.heights == (1, 2, 2, 1, 1)
    assert p.tokens == (2,) and p.to_move is Player.LEFT


def test_triangle_free_deletion():
    p = pos("UIF", [1, 1, 1], [(0, 1), (1, 2), (0, 2)], (0,))
    assert legal_moves(p) == [Move(0, 1, 0), Move(0, 1, 2), Move(0, 2, 0), Move(0, 2, 1)]


def test_single_edge_not_stuck():
    for t in (0, 1):
        assert loser_if_stuck(pos("UIR", [1, 1], [(0, 1)], (t,))) is None


def test_regular_delete_removes_vertex():
    p = apply_move(pos("UIR", [1, 1, 1], [(0, 1), (1, 2)], (0,)), Move(0, 1, 0))
    assert p.heights[0] == 0
    assert p.graph.neighbors(1) == [2]


def test_partizan_move_leaves_other_token():
    p = pos("UPR", [1, 1, 1], [(0, 1), (1, 2)], (0, 2))
    q = apply_move(p, Move(0, 1, 0))
    assert q.tokens == (1, 2) and q.to_move is Player.RIGHT


@pytest.mark.parametrize(
    "code, heights, edges, tokens, move, reason",
    [
        ("UIR", [1, 1], [(0, 1)], (0,), Move(1, 0, 1), BAD_SOURCE),
        ("DIR", [1, 1], [(0, 1)], (1,), Move(1, 0, 1), BAD_TARGET),
        ("UIR3", [3, 1], [(0, 1)], (0,), Move(0, 1, 0), HEIGHT_CLIMB),
        ("UPR", [1, 1], [(0, 1)], (0, 1), Move(0, 1, 0), OCCUPIED_TARGET),
        ("UIR", [1, 1, 1], [(0, 1), (1, 2)], (0,), Move(0, 1, 2), BAD_DELETION),
        ("UPF", [1, 1, 1], [(0, 1), (1, 2)], (0, 2), Move(0, 1, 2), BAD_DELETION),
    ],
)
def test_reason_codes(code, heights, edges, tokens, move, reason):
    with pytest.raises(IllegalMove) as info:
        apply_move(pos(code, heights, edges, tokens), move)
    assert info.value.reason == reason


def test_encode_position():
    p = lemma_path()
    assert encode_position(p) == encode_position(lemma_path())
    q = apply_move(p, Move(0, 1, 0))
    assert encode_position(p) != encode_position(Position(q.graph, p.variant, p.tokens, p.to_move))
    assert encode_position(p) != encode_position(p.with_to_move(Player.RIGHT))


def test_position_json_round_trip():
    p = pos("UPF", [1, 1, 1], [(0, 1), (1, 2)], (0, 2), Player.RIGHT)
    assert Position.from_dict(p.to_dict()) == p


def test_position_json_errors():
    with pytest.raises(PositionError, match="tokens"):
        Position.from_dict({"orientation": "undirected", "heights": [1], "variant": "UIR"})


def _brute_moves(p: Position, climb: bool = True) -> set[Move]:
    """Direct transcription of the move rules, for cross-checking."""
    g, h = p.graph, p.heights
    v = p.token
    other = p.tokens[1 - p.active_index] if p.variant.partizan else None
    out = set()
    for w in range(g.n):
        adjacent = (v, w) in g.edges if g.directed else tuple(sorted((v, w))) in g.edges
        if not adjacent or h[w] == 0 or (climb and h[w] < h[v] - 1) or w == other:
            continue
        for u in range(g.n):
            if p.variant.restricted:
                ok = u == v
            else:
                into = (u, w) in g.edges if g.directed else tuple(sorted((u, w))) in g.edges
                ok = into and h[u] > 0 and u != other
            if ok:
                out.add(Move(v, w, u))
    return out


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(ALL_VARIANTS), st.integers(1, 3), st.integers(0, 10**6))
def test_moves_match_rules(code, k, seed):
    p = random_position(random.Random(seed), Variant.parse(code), 5, k)
    moves = legal_moves(p)
    assert moves == sorted(moves, key=lambda m: (m.target, m.deleted))
    assert set(moves) == _brute_moves(p)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(ALL_VARIANTS), st.integers(1, 3), st.integers(0, 10**6))
def test_games_end_within_total_height(code, k, seed):
    rng = random.Random(seed)
    p = random_position(rng, Variant.parse(code), 6, k)
    budget = sum(p.heights)
    plies = 0
    while legal_moves(p):
        p = apply_move(p, rng.choice(legal_moves(p)))
        plies += 1
        assert all(0 <= h <= k for h in p.heights)
        assert all(p.heights[t] > 0 for t in p.tokens)
    assert plies <= budget


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_classic_geography_one_move_per_arc(seed):
    p = random_position(random.Random(seed), Variant.parse("DIR"), 6, 1)
    live = [w for w in p.graph.succ[p.token] if p.heights[w]]
    assert legal_moves(p) == [Move(p.token, w, p.token) for w in live]


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(ALL_VARIANTS), st.integers(0, 10**6))
def test_climb_rule_vacuous_up_to_height_two(code, seed):
    p = random_position(random.Random(seed), Variant.parse(code), 5, 2)
    assert _brute_moves(p, climb=False) == set(legal_moves(p))
