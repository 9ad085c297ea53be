from __future__ import annotations

import io
import json
from pathlib import Path

import pytest

from geolab.cli import Config, build_parser, main, play_loop
from geolab.engine import Player, Position
from geolab.io import to_dot
from geolab.reductions import ReductionArtifact
from geolab.verify.fixtures import counterexample, lemma_path

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_lemma_draw(capsys):
    code, out, _ = run(capsys, "solve", FIXTURES / "lemma-path.json", "--draw-on", "v5:L")
    assert code == 0 and out.splitlines()[0] == "Draw"


def test_solve_counterexample_free(capsys):
    code, out, _ = run(capsys, "solve", FIXTURES / "counterexample-uif.json")
    assert code == 0 and "LeftWins" in out and "<v, w, u>" in out


def test_solve_json_and_pv(capsys):
    code, out, _ = run(capsys, "solve", FIXTURES / "lemma-path.json", "--json", "--method", "brute")
    assert code == 0 and json.loads(out)["result"] == "RightWins"


def test_solve_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"orientation": "undirected",\n "heights": [1,]}')
    code, _, err = run(capsys, "solve", bad)
    assert code == 1 and "line 2" in err


def test_solve_budget_exhausted(tmp_path, capsys):
    art = tmp_path / "dpf.json"
    assert run(capsys, "reduce", "dpf", FIXTURES / "one-clause.qdimacs", "--out", art)[0] == 0
    code, out, _ = run(capsys, "solve", art, "--budget", "5")
    assert code == 2 and "budget" in out


def test_reduce_worked_dif(tmp_path, capsys):
    out_json, out_dot = tmp_path / "a.json", tmp_path / "a.dot"
    code, out, _ = run(capsys, "reduce", "dif", FIXTURES / "worked-dif.qdimacs", "--out", out_json, "--dot", out_dot)
    assert code == 0 and "38 vertices" in out and "structure: pass" in out
    art = ReductionArtifact.from_dict(json.loads(out_json.read_text()))
    assert art.graph.n == 38
    assert out_dot.read_text().startswith("digraph")


def test_reduce_round_trips_into_solve(tmp_path, capsys):
    out_json = tmp_path / "a.json"
    run(capsys, "reduce", "dif", FIXTURES / "one-clause.qdimacs", "--out", out_json)
    code, out, _ = run(capsys, "solve", out_json)
    assert code == 0 and "LeftWins" in out


def test_reduce_uir4(capsys):
    code, out, _ = run(capsys, "reduce", "uir4", FIXTURES / "meta-graph.json")
    assert code == 0 and "variant UIR4" in out and "25 vertices" in out


def test_reduce_normalization_notice(capsys):
    code, out, _ = run(capsys, "reduce", "dpf", FIXTURES / "one-clause.qdimacs")
    assert code == 0 and "m 1 -> 4" in out


def test_reduce_bad_formula(tmp_path, capsys):
    bad = tmp_path / "bad.qdimacs"
    bad.write_text("p cnf 2 1\na 1 0\ne 2 0\n1 1 -2 0\n")
    code, _, err = run(capsys, "reduce", "dif", bad)
    assert code == 1 and "BadAlternation" in err


def test_verify_empty_spec(tmp_path, capsys):
    spec = tmp_path / "empty.json"
    spec.write_text("{}")
    code, _, err = run(capsys, "verify", spec)
    assert code == 0 and "warning" in err


def test_verify_fault_injected(tmp_path, capsys):
    spec = tmp_path / "fault.json"
    spec.write_text(json.dumps({"campaigns": [{"type": "structure", "kind": "UPF", "count": 1, "mutate": {"shorten": "win_path"}}]}))
    report = tmp_path / "report.json"
    code, _, _ = run(capsys, "verify", spec, "--report", report)
    assert code == 1
    assert json.loads(report.read_text())["passed"] is False


def test_verify_bundled(tmp_path, capsys):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "paper-goldens", "--report", report)
    assert code == 0 and "all campaigns passed" in out
    assert json.loads(report.read_text())["passed"] is True


def test_dot_export(tmp_path, capsys):
    code, out, _ = run(capsys, "dot", FIXTURES / "split-path.json")
    assert code == 0 and out.startswith("digraph") and "[L]" in out and "[R]" in out


def test_dot_marks_tokens_and_roles():
    text = to_dot(lemma_path())
    assert 'label="v1:2 [T]"' in text and "--" in text


def test_play_refuses_matching_on_non_bipartite_free(capsys):
    code, _, err = run(capsys, "play", FIXTURES / "counterexample-uif.json", "--ai", "matching")
    assert code == 1 and "bipartite" in err


def test_play_reprompts_with_reason():
    answers = iter(["v2 v1", "v2 v3", "quit"])
    out = io.StringIO()
    p = lemma_path()
    from geolab.cli import ai_mover

    play_loop(p, Player.RIGHT, ai_mover("search", Config()), read=lambda _: next(answers), out=out)
    assert "illegal (height-climb)" in out.getvalue()


def test_play_announces_win():
    out = io.StringIO()
    p = counterexample("UIR")
    from geolab.cli import ai_mover

    # human moves first along the matching edge; the AI ends up stuck or wins
    answers = iter(["v x", "w u", "quit", "quit"])
    winner = play_loop(p, Player.LEFT, ai_mover("random", Config()), read=lambda _: next(answers), out=out)
    text = out.getvalue()
    assert ("You win" in text) == (winner is Player.LEFT)


def test_play_single_edge_human_wins():
    from geolab.cli import ai_mover
    from geolab.engine import Variant
    from geolab.graph import GameGraph

    p = Position(GameGraph("undirected", [1, 1], [(0, 1)]), Variant.parse("UIR"), (0,))
    out = io.StringIO()
    winner = play_loop(p, Player.LEFT, ai_mover("matching", Config()), read=lambda _: "0 1", out=out)
    assert winner is Player.LEFT and "You win" in out.getvalue()


def test_seed_env_override(monkeypatch):
    monkeypatch.setenv("GEOLAB_SEED", "42")
    args = build_parser().parse_args(["--seed", "3", "solve", "x.json"])
    assert Config.from_args(args).seed == 42


def test_config_rejects_nonpositive():
    with pytest.raises(ValueError):
        Config(node_budget=0)
