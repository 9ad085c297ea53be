"""Golden fixtures: small hand-checkable positions with known answers."""
from __future__ import annotations

import random
import time

from ..engine import Move, Player, Position, Variant, legal_moves
from ..graph import GameGraph, OddCycle, check_bipartite
from ..matching import Matching, maximum_matching, union_components
from ..qbf import QbfInstance, evaluate
from ..reductions import geography_to_uir4, stack2_to_stack1, tqbf_to_dif
from ..solver import DrawOnReach, optimal_terminals, solve_brute, solve_by_matching
from .report import Mismatch, VerifyReport

LEMMA_HEIGHTS = (2, 4, 3, 1, 1)
LEMMA_PROFILES = frozenset({(1, 2, 1, 0, 1), (1, 1, 0, 0, 1), (0, 0, 0, 0, 1)})

# vertex names of the five-vertex counterexample, in id order
COUNTER_NAMES = ("v", "x", "w", "u", "t")
COUNTER_EDGES = (("v", "x"), ("x", "w"), ("v", "w"), ("w", "u"), ("u", "t"))

SPLIT_PATH_ARCS = sorted(
    [(f"copy(0):{i}", f"copy(1):{j}") for i in (1, 2) for j in (1, 2)]
    + [(f"copy(1):{i}", "copy(2):1") for i in (1, 2)]
    + [("copy(2):1", "copy(3):1")]
    + [("copy(3):1", f"copy(4):{j}") for j in (1, 2)]
)

WORKED_FORMULA = QbfInstance(4, ((-1, 2, 3), (1, 3, -4)))
META_ARCS = ("vw", "vy", "wx", "xz", "yw", "yz", "zw", "zv")


def lemma_path() -> Position:
    """The five-vertex path with heights 2,4,3,1,1, token on the first vertex."""
    g = GameGraph("undirected", LEMMA_HEIGHTS, [(i, i + 1) for i in range(4)], {i: f"v{i + 1}" for i in range(5)})
    return Position(g, Variant.parse("UIR4"), (0,), Player.LEFT)


def lemma_draw_mode() -> DrawOnReach:
    return DrawOnReach(4, Player.LEFT)


def counterexample(variant: str = "UIR") -> Position:
    """Smallest non-bipartite graph where UIR and UIF disagree; token on v."""
    idx = {name: i for i, name in enumerate(COUNTER_NAMES)}
    edges = [(idx[a], idx[b]) for a, b in COUNTER_EDGES]
    g = GameGraph("undirected", [1] * 5, edges, dict(enumerate(COUNTER_NAMES)))
    return Position(g, Variant.parse(variant), (idx["v"],), Player.LEFT)


def counterexample_move() -> Move:
    v, w, u = (COUNTER_NAMES.index(c) for c in "vwu")
    return Move(v, w, u)


def split_path_source() -> Position:
    """Directed partizan path with heights 2,2,1,1,2; L on the second vertex,
    R on the fourth."""
    g = GameGraph("directed", [2, 2, 1, 1, 2], [(i, i + 1) for i in range(4)])
    return Position(g, Variant.parse("DPR2"), (1, 3), Player.LEFT)


def meta_source() -> Position:
    names = "vwxyz"
    arcs = [(names.index(a), names.index(b)) for a, b in META_ARCS]
    g = GameGraph("directed", [1] * 5, arcs, dict(enumerate(names)))
    return Position(g, Variant.parse("DIR"), (0,), Player.LEFT)


class _Fixtures:
    def __init__(self) -> None:
        self.report = VerifyReport("fixtures")

    def check(self, name: str, expected, got) -> None:
        self.report.instances_run += 1
        self.report.count("fixtures", "instances")
        if expected != got:
            self.report.count("fixtures", "mismatches")
            self.report.mismatches.append(Mismatch({"fixture": name}, str(expected), str(got)))


def check_lemma_path(f: _Fixtures) -> None:
    p = lemma_path()
    rep = solve_brute(p, lemma_draw_mode())
    f.check("lemma-path draw", "Draw", rep.outcome.result.value)
    f.check("lemma-path terminal profiles", sorted(LEMMA_PROFILES), sorted(optimal_terminals(p, lemma_draw_mode())))
    f.check("lemma-path first move", [Move(0, 1, 0)], legal_moves(p))
    # without the draw rule the draw is a loss for the player to move on v5
    f.check("lemma-path without draw", Player.RIGHT, solve_brute(p).winner)


def check_matching_pairs(f: _Fixtures, samples: int = 100, seed: int = 0, max_vertices: int = 12) -> None:
    """Symmetric differences of two maximum matchings split into even paths
    and even cycles."""
    rng = random.Random(seed)
    bad = 0
    for _ in range(samples):
        n = rng.randint(2, max_vertices)
        prob = rng.uniform(0.15, 0.6)
        edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < prob]
        g = GameGraph("undirected", [1] * n, edges)
        m1 = maximum_matching(g, seed=rng.randrange(1 << 30))
        m2 = maximum_matching(g, seed=rng.randrange(1 << 30))
        bad += len(odd_difference_components(m1, m2))
    f.check(f"matching pairs ({samples} samples)", 0, bad)


def odd_difference_components(m1: Matching, m2: Matching) -> list:
    out = []
    for comp in union_components(m1, m2):
        if comp.in_difference and (comp.shared or comp.edge_count % 2):
            out.append(comp)
    return out


def check_counterexample(f: _Fixtures) -> None:
    uir = counterexample("UIR")
    g = uir.graph
    f.check("counterexample shape", (5, 5), (g.n, len(g.edges)))
    cert = check_bipartite(g)
    f.check("counterexample odd cycle", True, isinstance(cert, OddCycle) and {0, 1, 2} <= set(cert.vertices))
    f.check("counterexample UIR", "P", "N" if solve_brute(uir).winner is uir.to_move else "P")
    f.check("counterexample UIR by matching", "P", "N" if solve_by_matching(uir).winner is uir.to_move else "P")
    uif = counterexample("UIF")
    rep = solve_brute(uif)
    f.check("counterexample UIF", "N", "N" if rep.winner is uif.to_move else "P")
    winning = [m for m in legal_moves(uif) if solve_brute(_after(uif, m)).winner is uif.to_move]
    f.check("counterexample UIF winning moves", [counterexample_move()], winning)


def _after(p: Position, m: Move) -> Position:
    from ..engine import apply_move

    return apply_move(p, m)


def check_goldens(f: _Fixtures) -> None:
    a = stack2_to_stack1(split_path_source())
    out = a.position
    f.check("split-path vertex count", 8, out.graph.n)
    f.check("split-path arcs", 9, len(out.graph.edges))
    f.check("split-path variant", "DPR", out.variant.code)
    name = {v: str(a.role(v)) for v in range(out.graph.n)}
    arcs = sorted((name[x], name[y]) for x, y in out.graph.edges)
    f.check("split-path arcs exactly", SPLIT_PATH_ARCS, arcs)
    f.check("split-path tokens", ("copy(1):2", "copy(3):1"), tuple(name[t] for t in out.tokens))

    d = tqbf_to_dif(WORKED_FORMULA)
    f.check("worked-dif vertex count", 38, d.graph.n)
    f.check("worked-dif variable vertices", 22, len(d.group("variable")))
    truth = evaluate(WORKED_FORMULA)
    f.check("worked-dif value", truth, solve_brute(d.position, pv=False).winner is Player.LEFT)

    u = geography_to_uir4(meta_source())
    f.check("meta-graph vertices", 25, u.graph.n)
    f.check("meta-graph edges", 28, len(u.graph.edges))
    f.check("meta-graph variant", "UIR4", u.variant.code)

    single = geography_to_uir4(Position(GameGraph("directed", [1], []), Variant.parse("DIR"), (0,)))
    f.check("single meta-vertex loses for Left", Player.RIGHT, solve_brute(single.position).winner)


def lemma_fixtures(samples: int = 100, seed: int = 0) -> VerifyReport:
    """Run every golden fixture and report mismatches as data."""
    start = time.perf_counter()
    f = _Fixtures()
    check_lemma_path(f)
    check_matching_pairs(f, samples, seed)
    check_counterexample(f)
    check_goldens(f)
    f.report.seconds = time.perf_counter() - start
    return f.report
