"""Command-line entry point.

Exit codes: 0 success (solved, campaign passed), 1 input error or failed
campaign, 2 search budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, TextIO

from .engine import IllegalMove, Move, Player, Position, PositionError, Variant, apply_move, legal_moves
from .graph import GraphError
from .io import FormatError, load_position, read_json, to_dot, write_json
from .matching import MatchingError
from .qbf import QbfError, normalize_for, parse_qdimacs
from .reductions import (
    ReductionArtifact,
    geography_to_uir4,
    stack2_to_stack1,
    tqbf_to_dif,
    tqbf_to_dpf,
    tqbf_to_upf,
    tqbf_to_upr,
    undirect_to_direct,
)
from .solver import (
    DEFAULT_BUDGET,
    DEFAULT_TABLE_CAP,
    BudgetExhausted,
    DrawOnReach,
    matching_applicable,
    solve_brute,
    solve_by_matching,
)
from .verify.campaign import SpecError, bundled_spec, run_spec
from .verify.structure import verify_structure

EXIT_OK, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2

FORMULA_KINDS = {"dif": tqbf_to_dif, "dpf": tqbf_to_dpf, "upr": tqbf_to_upr, "upf": tqbf_to_upf}
POSITION_KINDS = {"uir4": geography_to_uir4, "u2d": undirect_to_direct, "s2to1": stack2_to_stack1}

INPUT_ERRORS = (OSError, FormatError, GraphError, PositionError, QbfError, SpecError, ValueError)


@dataclass
class Config:
    """Run settings.  GEOLAB_SEED, when set, overrides `seed`."""

    node_budget: int = DEFAULT_BUDGET
    parallel_workers: int = 1
    seed: int = 0
    table_cap: int = DEFAULT_TABLE_CAP
    report_path: str | None = None

    def __post_init__(self) -> None:
        if self.node_budget < 1 or self.table_cap < 1 or self.parallel_workers < 1:
            raise ValueError("budgets and worker counts must be positive")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "Config":
        seed = getattr(args, "seed", 0)
        env = os.environ.get("GEOLAB_SEED")
        if env is not None:
            try:
                seed = int(env)
            except ValueError:
                raise ValueError(f"GEOLAB_SEED must be an integer, got {env!r}") from None
        return cls(
            node_budget=getattr(args, "budget", DEFAULT_BUDGET),
            parallel_workers=getattr(args, "workers", 1),
            seed=seed,
            table_cap=getattr(args, "table_cap", DEFAULT_TABLE_CAP),
            report_path=getattr(args, "report", None),
        )


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _resolve_vertex(p: Position, name: str) -> int:
    return p.graph.vertex_by_label(name)


def parse_draw_on(p: Position, text: str) -> DrawOnReach:
    """``v5:L`` (label or id, then the player to move) as a DrawOnReach."""
    vertex, sep, who = text.partition(":")
    if not sep or who.upper() not in ("L", "R"):
        raise ValueError(f"--draw-on wants VERTEX:L or VERTEX:R, got {text!r}")
    return DrawOnReach(_resolve_vertex(p, vertex), Player(who.upper()))


def _move_text(p: Position, m: Move | None) -> str:
    if m is None:
        return "none"
    lab = p.graph.label
    return f"<{lab(m.origin)}, {lab(m.target)}, {lab(m.deleted)}>"


# -- solve --------------------------------------------------------------------------


def cmd_solve(args: argparse.Namespace) -> int:
    cfg = Config.from_args(args)
    try:
        p = load_position(args.position)
        if args.variant:
            p = Position(p.graph, Variant.parse(args.variant), p.tokens, p.to_move)
        mode = parse_draw_on(p, args.draw_on) if args.draw_on else None
    except INPUT_ERRORS as exc:
        _err(str(exc))
        return EXIT_INPUT
    try:
        if args.method == "matching" or (args.method == "auto" and mode is None and matching_applicable(p) is None):
            rep = solve_by_matching(p, seed=cfg.seed)
        else:
            rep = solve_brute(p, mode, budget=cfg.node_budget, table_cap=cfg.table_cap, pv=args.pv)
    except BudgetExhausted as exc:
        print(f"budget exhausted after {exc.nodes} nodes (budget {cfg.node_budget})")
        return EXIT_BUDGET
    except MatchingError as exc:
        _err(str(exc))
        return EXIT_INPUT
    if args.json:
        print(json.dumps(rep.to_dict(), indent=1))
        return EXIT_OK
    print(rep.outcome.result.value)
    print(f"optimal move: {_move_text(p, rep.optimal_move)}")
    print(f"method: {rep.method}, nodes expanded: {rep.nodes_expanded}, table hits: {rep.table_hits}")
    if args.pv and rep.outcome.principal_variation:
        q = p
        shown = []
        for m in rep.outcome.principal_variation:
            shown.append(_move_text(q, m))
            q = apply_move(q, m)
        print("line: " + " ".join(shown))
    return EXIT_OK


# -- reduce -------------------------------------------------------------------------


def build_reduction(kind: str, path: str, notify: Callable[[str], None] = print) -> ReductionArtifact:
    kind = kind.lower()
    if kind in FORMULA_KINDS:
        q = parse_qdimacs(Path(path).read_text())
        ready = normalize_for(q, kind.upper())
        if ready != q:
            notify(
                f"note: normalized the formula for {kind.upper()}: "
                f"n {q.n} -> {ready.n}, m {q.m} -> {ready.m}"
            )
        return FORMULA_KINDS[kind](ready)
    if kind in POSITION_KINDS:
        return POSITION_KINDS[kind](load_position(path))
    raise ValueError(f"unknown reduction {kind!r}")


def cmd_reduce(args: argparse.Namespace) -> int:
    try:
        art = build_reduction(args.kind, args.input)
    except INPUT_ERRORS as exc:
        _err(str(exc))
        return EXIT_INPUT
    g = art.graph
    print(f"{art.kind}: {g.n} vertices, {len(g.edges)} {'arcs' if g.directed else 'edges'}, variant {art.variant.code}")
    rep = verify_structure(art)
    print(f"structure: {'pass' if rep.passed else 'FAIL'}")
    for msg in rep.structural_failures:
        print(f"  {msg}")
    if args.out:
        write_json(args.out, art.to_dict())
        print(f"wrote {args.out}")
    if args.dot:
        Path(args.dot).write_text(to_dot(art, art.kind))
        print(f"wrote {args.dot}")
    return EXIT_OK


# -- verify -------------------------------------------------------------------------


def _render_table(result) -> str:
    rows = [("campaign", "result", "instances", "mismatches", "structural", "exhausted", "seconds")]
    for name, r in result.reports:
        rows.append(
            (
                name,
                "PASS" if r.passed else "FAIL",
                str(r.instances_run),
                str(len(r.mismatches)),
                str(len(r.structural_failures)),
                str(len(r.budget_exhaustions)),
                f"{r.seconds:.1f}",
            )
        )
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows)


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        cfg = Config.from_args(args)
        if Path(args.spec).is_file():
            spec = read_json(args.spec)
        else:
            spec = bundled_spec(args.spec)
        result = run_spec(spec, cfg.node_budget, cfg.parallel_workers)
    except INPUT_ERRORS as exc:
        _err(str(exc))
        return EXIT_INPUT
    for w in result.warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(_render_table(result))
    for name, r in result.reports:
        for m in r.mismatches[:5]:
            print(f"  {name}: expected {m.expected}, got {m.got} on {json.dumps(m.input)}")
        for s in r.structural_failures[:5]:
            print(f"  {name}: {s}")
    if cfg.report_path:
        write_json(cfg.report_path, result.to_dict())
        print(f"report written to {cfg.report_path}")
    print("all campaigns passed" if result.passed else "some campaigns FAILED")
    return EXIT_OK if result.passed else EXIT_INPUT


# -- play ---------------------------------------------------------------------------


def render(p: Position) -> str:
    g = p.graph
    marks = {}
    if p.variant.partizan:
        marks = {p.tokens[0]: "L", p.tokens[1]: "R"}
    else:
        marks = {p.tokens[0]: "T"}
    cells = []
    for v in g.live_vertices():
        cells.append(f"{g.label(v)}:{g.heights[v]}{'[' + marks[v] + ']' if v in marks else ''}")
    arrow = "->" if g.directed else "-"
    edges = " ".join(f"{g.label(a)}{arrow}{g.label(b)}" for a, b in g.live_edges())
    return f"vertices: {' '.join(cells)}\nedges:    {edges or '(none)'}\n{p.to_move.name} to move"


def ai_mover(kind: str, cfg: Config) -> Callable[[Position], Move]:
    rng = random.Random(cfg.seed)
    if kind == "random":
        return lambda p: rng.choice(legal_moves(p))
    if kind == "matching":

        def by_matching(p: Position) -> Move:
            rep = solve_by_matching(p, seed=cfg.seed)
            return rep.optimal_move or legal_moves(p)[0]

        return by_matching

    def by_search(p: Position) -> Move:
        try:
            rep = solve_brute(p, budget=cfg.node_budget, table_cap=cfg.table_cap, pv=False)
        except BudgetExhausted:
            return rng.choice(legal_moves(p))
        return rep.optimal_move or legal_moves(p)[0]

    return by_search


def parse_move(p: Position, line: str) -> Move:
    parts = line.split()
    if len(parts) not in (2, 3):
        raise ValueError("enter: FROM TO [DELETE]")
    vs = [_resolve_vertex(p, x) for x in parts]
    if len(vs) == 2:
        vs.append(vs[0])
    return Move(*vs)


def play_loop(
    p: Position,
    human: Player,
    ai: Callable[[Position], Move],
    read: Callable[[str], str] = input,
    out: TextIO = sys.stdout,
) -> Player:
    """Alternate human and AI moves until someone is stuck; return the winner."""
    while True:
        print(render(p), file=out)
        moves = legal_moves(p)
        if not moves:
            winner = p.to_move.other
            print("You win" if winner is human else "You lose", file=out)
            return winner
        if p.to_move is human:
            while True:
                try:
                    line = read("your move> ")
                except EOFError:
                    print("input closed", file=out)
                    return p.to_move.other
                if line.strip().lower() in ("quit", "q"):
                    print("you resigned", file=out)
                    return human.other
                if line.strip() in ("?", "moves"):
                    print("legal: " + ", ".join(_move_text(p, m) for m in moves), file=out)
                    continue
                try:
                    m = parse_move(p, line)
                    p = apply_move(p, m)
                except IllegalMove as exc:
                    print(f"illegal ({exc.reason}): {exc.detail}", file=out)
                    continue
                except ValueError as exc:
                    print(f"could not read move: {exc}", file=out)
                    continue
                break
        else:
            m = ai(p)
            print(f"AI plays {_move_text(p, m)}", file=out)
            p = apply_move(p, m)


def cmd_play(args: argparse.Namespace) -> int:
    try:
        cfg = Config.from_args(args)
        p = load_position(args.position)
    except INPUT_ERRORS as exc:
        _err(str(exc))
        return EXIT_INPUT
    if args.ai == "matching":
        why = matching_applicable(p)
        if why:
            _err(f"--ai matching refused: {why}")
            return EXIT_INPUT
    play_loop(p, Player(args.human), ai_mover(args.ai, cfg))
    return EXIT_OK


# -- dot ----------------------------------------------------------------------------


def cmd_dot(args: argparse.Namespace) -> int:
    try:
        data = read_json(args.input)
        obj = ReductionArtifact.from_dict(data) if "roles" in data else Position.from_dict(data)
    except INPUT_ERRORS + (KeyError,) as exc:
        _err(str(exc))
        return EXIT_INPUT
    text = to_dot(obj, Path(args.input).stem)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- parser -------------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="geolab", description="Generalized Geography toolkit")
    ap.add_argument("--seed", type=int, default=0, help="random seed (GEOLAB_SEED overrides)")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve a position exactly")
    s.add_argument("position", help="position or artifact JSON")
    s.add_argument("--variant", help="override the variant code, e.g. UPF or UIR4")
    s.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    s.add_argument("--table-cap", type=_positive, default=DEFAULT_TABLE_CAP)
    s.add_argument("--pv", action="store_true", help="print the principal variation")
    s.add_argument("--draw-on", metavar="V:P", help="treat token on V with P to move as a draw")
    s.add_argument("--method", choices=("auto", "brute", "matching"), default="auto")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_solve)

    r = sub.add_parser("reduce", help="build a reduction artifact")
    r.add_argument("kind", choices=sorted(FORMULA_KINDS) + sorted(POSITION_KINDS))
    r.add_argument("input", help="QDIMACS file (dif, dpf, upr, upf) or position JSON")
    r.add_argument("--out", help="artifact JSON path")
    r.add_argument("--dot", help="Graphviz output path")
    r.set_defaults(func=cmd_reduce)

    v = sub.add_parser("verify", help="run a campaign spec")
    v.add_argument("spec", help="spec JSON path or bundled spec name (paper-goldens)")
    v.add_argument("--report", help="write the JSON report here")
    v.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    v.add_argument("--workers", type=_positive, default=1)
    v.set_defaults(func=cmd_verify)

    p = sub.add_parser("play", help="play against the computer in the terminal")
    p.add_argument("position")
    p.add_argument("--human", choices=("L", "R"), default="L")
    p.add_argument("--ai", choices=("search", "matching", "random"), default="search")
    p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_play)

    d = sub.add_parser("dot", help="export a position or artifact as Graphviz")
    d.add_argument("input")
    d.add_argument("--out")
    d.set_defaults(func=cmd_dot)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
