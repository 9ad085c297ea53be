from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geolab.engine import Player, Position, Variant, apply_move, legal_moves
from geolab.qbf import QbfInstance, evaluate, normalize_for, optimal_policy, random_instance, random_policy
from geolab.reductions import geography_to_uir4, tqbf_to_dif, tqbf_to_upf
from geolab.solver import solve_brute
from geolab.verify import (
    Corpus,
    DropRoleEdge,
    ScriptDiverged,
    SpecError,
    build_formula_artifact,
    bundled_spec,
    lemma_fixtures,
    predicted_figures,
    race_certificate,
    role_edges,
    run_spec,
    scripted_playout,
    scripted_proper_play,
    search_based,
    shorten_path,
    territory_move,
    uniform_random,
    verify_oracle,
    verify_structure,
)
from geolab.verify.fixtures import meta_source
from geolab.verify.oracle import random_position
from geolab.verify.strategies import Strategy

N2_CORPUS = Corpus("exhaustive", 2, max_clauses=1)


def winning_setup(kind: str, q: QbfInstance, seed: int = 0):
    art = build_formula_artifact(kind, q)
    truth = evaluate(art.source)
    winner = Player.LEFT if truth else Player.RIGHT
    good = optimal_policy(art.source, "existential" if truth else "universal")
    bad = random_policy("universal" if truth else "existential", art.source.n, seed)
    return art, winner, good, bad


# -- fixtures and structure -----------------------------------------------------------


def test_fixtures_pass():
    rep = lemma_fixtures()
    assert rep.passed, rep.mismatches
    assert rep.instances_run >= 20


@pytest.mark.parametrize("kind", ["DIF", "DPF", "UPR", "UPF"])
def test_structure_passes(kind):
    for seed in range(5):
        art = build_formula_artifact(kind, random_instance(4, 3, seed))
        rep = verify_structure(art)
        assert rep.passed, rep.structural_failures


def test_structure_uir4():
    assert verify_structure(geography_to_uir4(meta_source())).passed


def test_shortened_win_path_caught():
    art = build_formula_artifact("UPF", random_instance(2, 3, 0))
    rep = verify_structure(shorten_path(art, "win_path"))
    assert not rep.passed
    assert any("win" in f for f in rep.structural_failures)


def test_drop_role_edge_removes_one_edge():
    art = tqbf_to_dif(QbfInstance(2, ((1, 1, -2),)))
    tail, head = role_edges(art)[0]
    assert len(DropRoleEdge(str(tail), str(head))(art).graph.edges) == len(art.graph.edges) - 1


def test_report_json():
    rep = verify_structure(build_formula_artifact("DPF", random_instance(2, 1, 0)))
    d = json.loads(json.dumps(rep.to_dict()))
    assert d["passed"] is True and d["instances_run"] == 1


# -- oracle campaigns -------------------------------------------------------------------


def test_dif_exhaustive_oracle():
    rep = verify_oracle("DIF", N2_CORPUS)
    assert rep.instances_run == 64 and rep.passed


def test_uir4_small_oracle():
    rep = verify_oracle("UIR4", Corpus("exhaustive", 2))
    assert rep.passed and rep.instances_run > 0


def test_fault_injection_flips_a_verdict():
    art = tqbf_to_dif(QbfInstance(2, ((1, 1, -2),)))
    join = [(str(a), str(b)) for a, b in role_edges(art) if b.slot == "bottom" and a.slot == "join"]
    rep = verify_oracle("DIF", N2_CORPUS, mutate=DropRoleEdge(*join[0]))
    assert rep.mismatches


def test_budget_exhaustion_is_recorded_not_failed():
    rep = verify_oracle("DIF", Corpus("seeded", 2, count=2), budget=3)
    assert rep.passed and len(rep.budget_exhaustions) == 2


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        verify_oracle("UPR", Corpus())


@pytest.mark.xfail(strict=True, reason="four variable-gadget edges are redundant for the verdict; see decisions ledger")
def test_every_gadget_edge_discriminates():
    art = tqbf_to_dif(QbfInstance(2, ((1, 1, -2),)))
    silent = []
    for tail, head in role_edges(art):
        rep = verify_oracle("DIF", N2_CORPUS, mutate=DropRoleEdge(str(tail), str(head)))
        if not rep.mismatches:
            silent.append((str(tail), str(head)))
    assert silent == []


# -- race certificates ---------------------------------------------------------------------


@settings(max_examples=400, deadline=None)
@given(st.sampled_from(["UPR", "UPF"]), st.integers(0, 10**7))
def test_certificate_is_sound(code, seed):
    rng = random.Random(seed)
    p = random_position(rng, Variant.parse(code), 9, 1)
    plan = race_certificate(p)
    if plan is None:
        return
    assert solve_brute(p, pv=False).winner is p.to_move
    assert plan[0] in legal_moves(p)


def test_certificate_only_for_partizan_unstacked_undirected():
    p = random_position(random.Random(1), Variant.parse("UIR"), 6, 1)
    assert race_certificate(p) is None


def test_certificate_on_long_corridor():
    from geolab.graph import GameGraph

    g = GameGraph("undirected", [1] * 8, [(0, 1), (1, 2), (2, 3), (3, 4), (5, 6), (6, 7)])
    p = Position(g, Variant.parse("UPR"), (0, 5))
    plan = race_certificate(p)
    assert plan is not None and len(plan) == 4


# -- strategies and playouts -----------------------------------------------------------


@pytest.mark.parametrize("kind,n", [("DIF", 4), ("DPF", 2), ("UPR", 4), ("UPF", 2)])
def test_script_beats_script(kind, n):
    for seed in range(3):
        art, winner, good, bad = winning_setup(kind, random_instance(n, 3, seed), seed)
        mine = scripted_proper_play(art, winner, good)
        other = scripted_proper_play(art, winner.other, bad, strict=True)
        left, right = (mine, other) if winner is Player.LEFT else (other, mine)
        out = scripted_playout(art, left, right)
        assert out.winner is winner
        assert out.ledger["diverged_at"] is None
        want = predicted_figures(art)
        assert {k: out.ledger["figures"].get(k) for k in want} == want
        assert out.ledger.get("invariant_violations", 0) == 0


@pytest.mark.parametrize("kind,n", [("DIF", 2), ("DPF", 2), ("UPR", 4), ("UPF", 2)])
def test_script_beats_random(kind, n):
    art, winner, good, _ = winning_setup(kind, random_instance(n, 2, 7))
    mine = scripted_proper_play(art, winner, good)
    rnd = uniform_random(11)
    for _ in range(30):
        left, right = (mine, rnd) if winner is Player.LEFT else (rnd, mine)
        out = scripted_playout(art, left, right)
        assert out.winner is winner
        assert out.ledger.get("invariant_violations", 0) == 0


class LinkerRunner(Strategy):
    """Right plays properly until he stands on a clause vertex in Phase II,
    then runs out through a linker of the given variable parity, across a
    surviving variable vertex and back along a linker to a live clause."""

    def __init__(self, art, policy, parity: int) -> None:
        self.art, self.parity = art, parity
        self.inner = scripted_proper_play(art, Player.RIGHT, policy)
        self.name = f"linker_runner({parity})"
        self.reset()

    def reset(self) -> None:
        self.inner.reset()
        self.running = False
        self.ran = False

    def next_move(self, p):
        a, g = self.art, p.graph
        legal = legal_moves(p)
        here = a.role(p.token)
        left_at = a.role(p.tokens[0]).gadget
        if not self.running and here.gadget == "clause" and left_at == "delay":
            for m in legal:
                r = a.role(m.target)
                if r.gadget == "linker" and abs(r.index[2]) % 2 == self.parity:
                    lit = r.index[2]
                    end = a.vertex("variable", (abs(lit),), "right" if lit > 0 else "left")
                    if g.alive(end):
                        self.running = self.ran = True
                        return m
        if self.running:
            if here.gadget == "variable":
                back = [
                    m for m in legal
                    if a.role(m.target).gadget == "linker"
                    and g.alive(a.vertex("clause", (a.role(m.target).index[0],), "clause"))
                ]
                if back:
                    return back[0]
            return next((m for m in legal if m.regular), legal[0])
        m = self.inner.next_move(p)
        return m


@pytest.mark.parametrize("parity", [1, 0])
def test_left_punishes_linker_runs(parity):
    ran = 0
    for seed in range(40):
        q = normalize_for(random_instance(4, 3, seed), "UPR")
        if not evaluate(q):
            continue
        art, winner, good, bad = winning_setup("UPR", q, seed)
        runner = LinkerRunner(art, bad, parity)
        out = scripted_playout(art, scripted_proper_play(art, Player.LEFT, good), runner)
        assert out.winner is Player.LEFT, seed
        ran += runner.ran
    assert ran >= 3


def test_strict_script_raises_on_deviation():
    art, winner, good, bad = winning_setup("UPF", random_instance(2, 3, 1))
    strict = scripted_proper_play(art, winner.other, bad, strict=True)
    rnd = uniform_random(0)
    left, right = (rnd, strict) if winner is Player.LEFT else (strict, rnd)
    with pytest.raises(ScriptDiverged) as info:
        for _ in range(20):
            scripted_playout(art, left, right)
    assert info.value.expected and info.value.move not in info.value.expected


def test_policy_side_checked():
    art, winner, good, _ = winning_setup("DIF", QbfInstance(2, ((1, 1, 1),)))
    with pytest.raises(ValueError):
        scripted_proper_play(art, Player.RIGHT, good)


def test_search_strategy_plays_optimally():
    art = tqbf_to_dif(QbfInstance(2, ((1, 1, -2),)))
    out = scripted_playout(art, search_based(), search_based())
    assert out.winner is (Player.LEFT if evaluate(art.source) else Player.RIGHT)


class Cheater(Strategy):
    name = "cheater"

    def next_move(self, p):
        m = legal_moves(p)[0]
        return m._replace(target=m.origin)


def test_illegal_strategy_move_is_reported():
    from geolab.verify import StrategyError

    art = tqbf_to_dif(QbfInstance(2, ((1, 1, -2),)))
    with pytest.raises(StrategyError):
        scripted_playout(art, Cheater(), uniform_random())


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(["UPR", "UPF", "DPR", "UIR"]), st.integers(0, 10**6))
def test_territory_move_is_legal(code, seed):
    p = random_position(random.Random(seed), Variant.parse(code), 8, 1)
    if legal_moves(p):
        assert territory_move(p) in legal_moves(p)


# -- campaign specs ----------------------------------------------------------------------


def test_empty_spec_warns():
    res = run_spec({"campaigns": []})
    assert res.passed and res.warnings


def test_fault_injected_spec_fails():
    spec = {"campaigns": [{"type": "structure", "kind": "UPF", "count": 2, "mutate": {"shorten": "win_path"}}]}
    assert not run_spec(spec).passed


def test_bad_spec():
    with pytest.raises(SpecError):
        run_spec({"campaigns": [{"type": "nonsense"}]})
    with pytest.raises(SpecError):
        run_spec({"campaigns": "x"})


def test_bundled_spec_exists():
    spec = bundled_spec("paper-goldens")
    assert len(spec["campaigns"]) > 5
    with pytest.raises(SpecError):
        bundled_spec("nope")


@pytest.mark.slow
def test_bundled_spec_passes():
    res = run_spec(bundled_spec("paper-goldens"))
    assert res.passed, res.to_dict()
