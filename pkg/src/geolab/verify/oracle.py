"""Oracle-equivalence campaigns: solve the source and the reduced instance
independently and compare winners."""
from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterator, Mapping

from ..engine import Player, Position, Variant
from ..graph import GameGraph, Orientation
from ..qbf import QbfInstance, all_single_clause_instances, evaluate, normalize_for, random_instance
from ..reductions import (
    ReductionArtifact,
    geography_to_uir4,
    stack2_to_stack1,
    tqbf_to_dif,
    tqbf_to_dpf,
    undirect_to_direct,
)
from ..solver import DEFAULT_BUDGET, BudgetExhausted, solve_brute
from .report import Mismatch, VerifyReport

ORACLE_KINDS = ("U2D", "S2TO1", "UIR4", "DIF", "DPF")

ALL_VARIANTS = tuple(a + b + c for a in "DU" for b in "IP" for c in "RF")


@dataclass(frozen=True)
class Corpus:
    """Which inputs a campaign runs on.

    `mode` is "exhaustive" or "seeded".  For position kinds `size` is the
    largest vertex count; for formula kinds it is the variable count and
    `max_clauses` bounds m.  Seeded corpora draw `count` inputs per variant
    (S2TO1, U2D) or in total (everything else).
    """

    mode: str = "seeded"
    size: int = 4
    count: int = 20
    seed: int = 0
    variants: tuple[str, ...] = ()
    max_height: int = 2
    max_clauses: int = 1

    def __post_init__(self) -> None:
        if self.mode not in ("exhaustive", "seeded"):
            raise ValueError(f"corpus mode must be exhaustive or seeded, not {self.mode!r}")
        object.__setattr__(self, "variants", tuple(self.variants))

    @classmethod
    def from_dict(cls, d: Mapping) -> "Corpus":
        known = {k: d[k] for k in cls.__dataclass_fields__ if k in d}
        if "variants" in known:
            known["variants"] = tuple(known["variants"])
        return cls(**known)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["variants"] = list(self.variants)
        return d


def random_position(rng: random.Random, variant: Variant, max_vertices: int, max_height: int) -> Position:
    lo = 2 if variant.partizan else 1
    n = rng.randint(lo, max(lo, max_vertices))
    if variant.orientation is Orientation.DIRECTED:
        pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    else:
        pairs = list(itertools.combinations(range(n), 2))
    edges = [e for e in pairs if rng.random() < 0.5]
    heights = [rng.randint(1, max_height) for _ in range(n)]
    tokens = tuple(rng.sample(range(n), 2 if variant.partizan else 1))
    to_move = rng.choice((Player.LEFT, Player.RIGHT))
    g = GameGraph(variant.orientation, heights, edges)
    return Position(g, variant.with_height(max(max_height, 1)), tokens, to_move)


def all_geography_positions(max_vertices: int) -> Iterator[Position]:
    """Every labelled digraph on 1..max_vertices vertices with every token
    placement, as classic Geography."""
    var = Variant.parse("DIR")
    for n in range(1, max_vertices + 1):
        pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
        for mask in range(1 << len(pairs)):
            edges = [e for i, e in enumerate(pairs) if mask >> i & 1]
            g = GameGraph("directed", [1] * n, edges)
            for t in range(n):
                yield Position(g, var, (t,))


def random_geography_position(rng: random.Random, max_vertices: int) -> Position:
    n = rng.randint(1, max_vertices)
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    edges = [e for e in pairs if rng.random() < 0.5]
    g = GameGraph("directed", [1] * n, edges)
    return Position(g, Variant.parse("DIR"), (rng.randrange(n),))


def corpus_items(kind: str, corpus: Corpus) -> Iterator[tuple[str, Position | QbfInstance]]:
    """(stratum, source) pairs for a campaign."""
    kind = kind.upper()
    rng = random.Random(corpus.seed)
    if kind in ("U2D", "S2TO1"):
        default = [v for v in ALL_VARIANTS if v[0] == "U"] if kind == "U2D" else list(ALL_VARIANTS)
        for code in corpus.variants or default:
            var = Variant.parse(code)
            vr = random.Random(f"{corpus.seed}:{code}")
            for _ in range(corpus.count):
                yield code, random_position(vr, var, corpus.size, corpus.max_height)
    elif kind == "UIR4":
        if corpus.mode == "exhaustive":
            for p in all_geography_positions(corpus.size):
                yield f"exhaustive<={corpus.size}", p
        else:
            for _ in range(corpus.count):
                yield f"seeded<={corpus.size}", random_geography_position(rng, corpus.size)
    elif kind in ("DIF", "DPF"):
        if corpus.mode == "exhaustive":
            if corpus.size != 2 or corpus.max_clauses != 1:
                raise ValueError("exhaustive formula corpora cover n=2, m=1 only")
            for q in all_single_clause_instances(2):
                yield "n=2,m=1", q
        else:
            for i in range(corpus.count):
                m = rng.randint(1, corpus.max_clauses)
                q = random_instance(corpus.size, m, rng.randrange(1 << 30))
                yield f"n={corpus.size}", q
    else:
        raise ValueError(f"no oracle campaign for {kind!r}; choose from {ORACLE_KINDS}")


def build(kind: str, source: Position | QbfInstance) -> ReductionArtifact:
    kind = kind.upper()
    if kind == "U2D":
        return undirect_to_direct(source)
    if kind == "S2TO1":
        return stack2_to_stack1(source)
    if kind == "UIR4":
        return geography_to_uir4(source)
    if kind == "DIF":
        return tqbf_to_dif(source)
    if kind == "DPF":
        return tqbf_to_dpf(normalize_for(source, "DPF"))
    raise ValueError(f"no oracle campaign for {kind!r}")


def _name(w: Player | None) -> str:
    return "Draw" if w is None else ("LeftWins" if w is Player.LEFT else "RightWins")


def _source_json(source) -> dict:
    return source.to_dict()


@dataclass
class ItemResult:
    stratum: str
    source: dict
    expected: str | None = None
    got: str | None = None
    exhausted: str | None = None
    nodes: int = 0


def run_item(
    kind: str,
    stratum: str,
    source,
    budget: int,
    mutate: Callable[[ReductionArtifact], ReductionArtifact] | None = None,
) -> ItemResult:
    res = ItemResult(stratum, _source_json(source))
    try:
        if isinstance(source, QbfInstance):
            expected = Player.LEFT if evaluate(source) else Player.RIGHT
        else:
            expected = solve_brute(source, budget=budget, pv=False).winner
    except BudgetExhausted as exc:
        res.exhausted, res.nodes = "source", exc.nodes
        return res
    art = build(kind, source)
    if mutate is not None:
        art = mutate(art)
    try:
        rep = solve_brute(art.position, budget=budget, pv=False)
    except BudgetExhausted as exc:
        res.exhausted, res.nodes = "artifact", exc.nodes
        return res
    res.expected, res.got, res.nodes = _name(expected), _name(rep.winner), rep.nodes_expanded
    return res


def _run_chunk(args) -> list[ItemResult]:
    kind, chunk, budget, mutate = args
    return [run_item(kind, s, src, budget, mutate) for s, src in chunk]


def verify_oracle(
    kind: str,
    corpus: Corpus | Mapping,
    budget: int = DEFAULT_BUDGET,
    mutate: Callable[[ReductionArtifact], ReductionArtifact] | None = None,
    workers: int = 1,
) -> VerifyReport:
    """Compare the source-side winner with the artifact's brute-force winner
    on every corpus input.  `mutate` (fault injection) is applied to each
    artifact before solving; with `workers` > 1 it must be picklable."""
    if not isinstance(corpus, Corpus):
        corpus = Corpus.from_dict(corpus)
    kind = kind.upper()
    start = time.perf_counter()
    items = list(corpus_items(kind, corpus))
    report = VerifyReport(kind)
    if workers > 1 and len(items) > 1:
        step = max(1, len(items) // (workers * 4))
        chunks = [(kind, items[i : i + step], budget, mutate) for i in range(0, len(items), step)]
        with ProcessPoolExecutor(workers) as pool:
            results = [r for part in pool.map(_run_chunk, chunks) for r in part]
    else:
        results = [run_item(kind, s, src, budget, mutate) for s, src in items]
    for r in results:
        report.instances_run += 1
        report.count(r.stratum, "instances")
        if r.exhausted:
            report.count(r.stratum, "exhausted")
            report.budget_exhaustions.append({"input": r.source, "side": r.exhausted, "nodes": r.nodes})
        elif r.expected != r.got:
            report.count(r.stratum, "mismatches")
            report.mismatches.append(Mismatch(r.source, r.expected, r.got))
    report.seconds = time.perf_counter() - start
    return report
