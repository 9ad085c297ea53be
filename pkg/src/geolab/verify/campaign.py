"""Campaign specs: JSON files listing oracle, structural, playout and
fixture runs.  The CLI's `verify` command and the bundled specs go through
`run_spec`.

A spec looks like::

    {"campaigns": [
        {"type": "fixtures"},
        {"type": "oracle", "kind": "DIF", "corpus": {"mode": "exhaustive", "size": 2}},
        {"type": "structure", "kind": "UPF", "count": 10, "n": 2, "max_clauses": 3},
        {"type": "playout", "kind": "UPR", "count": 3, "n": 4, "random_playouts": 100}
    ]}

Oracle campaigns accept a `mutate` entry for fault injection:
``{"drop_role_edge": ["variable(1):top", "variable(1):left1"]}`` or
``{"shorten": "win_path"}`` (structure campaigns only).
"""
from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable, Mapping

from ..engine import Player
from ..qbf import QbfInstance, evaluate, normalize_for, optimal_policy, random_instance, random_policy
from ..reductions import ReductionArtifact, tqbf_to_dif, tqbf_to_dpf, tqbf_to_upf, tqbf_to_upr
from ..solver import DEFAULT_BUDGET
from .fixtures import lemma_fixtures
from .oracle import Corpus, build, random_geography_position, random_position, verify_oracle
from .playout import StrategyError, predicted_figures, scripted_playout
from .report import Mismatch, VerifyReport
from .strategies import ScriptDiverged, scripted_proper_play, uniform_random
from .structure import DropRoleEdge, shorten_path, verify_structure

FORMULA_BUILDERS: dict[str, Callable[[QbfInstance], ReductionArtifact]] = {
    "DIF": tqbf_to_dif,
    "DPF": tqbf_to_dpf,
    "UPR": tqbf_to_upr,
    "UPF": tqbf_to_upf,
}


class SpecError(ValueError):
    """A campaign spec is malformed."""


def build_formula_artifact(kind: str, q: QbfInstance) -> ReductionArtifact:
    kind = kind.upper()
    return FORMULA_BUILDERS[kind](normalize_for(q, kind))


def formula_corpus(n: int, max_clauses: int, count: int, seed: int) -> list[QbfInstance]:
    rng = random.Random(seed)
    return [random_instance(n, rng.randint(1, max_clauses), rng.randrange(1 << 30)) for _ in range(count)]


# -- structure ------------------------------------------------------------------


def structure_campaign(
    kind: str,
    count: int = 10,
    n: int = 2,
    max_clauses: int = 3,
    seed: int = 0,
    mutate: Callable[[ReductionArtifact], ReductionArtifact] | None = None,
) -> VerifyReport:
    """verify_structure over generated artifacts of one kind."""
    kind = kind.upper()
    start = time.perf_counter()
    report = VerifyReport(f"structure:{kind}")
    rng = random.Random(seed)
    for _ in range(count):
        if kind in FORMULA_BUILDERS:
            q = random_instance(n, rng.randint(1, max_clauses), rng.randrange(1 << 30))
            art = build_formula_artifact(kind, q)
        elif kind == "UIR4":
            art = build(kind, random_geography_position(rng, n))
        elif kind in ("U2D", "S2TO1"):
            from ..engine import Variant

            code = rng.choice(["UIR", "UIF", "UPR", "UPF"] if kind == "U2D" else ["DIR", "DPF", "UIR", "UPF"])
            art = build(kind, random_position(rng, Variant.parse(code), n, 2 if kind == "S2TO1" else 1))
        else:
            raise SpecError(f"no structure campaign for {kind!r}")
        if mutate is not None:
            art = mutate(art)
        rep = verify_structure(art)
        report.instances_run += 1
        report.count(kind, "instances")
        for msg in rep.structural_failures:
            report.structural_failures.append(f"{art.source.to_dict()}: {msg}")
        if rep.structural_failures:
            report.count(kind, "structural_failures")
    report.seconds = time.perf_counter() - start
    return report


# -- proper play --------------------------------------------------------------------


def play_instance(q: QbfInstance, kind: str, random_playouts: int = 100, seed: int = 0) -> VerifyReport:
    """Scripted proper play on one formula.

    The side that wins the formula plays its optimal policy.  It must beat
    a strict script for the other side (driven by a random policy) and
    `random_playouts` uniformly random opponents.  For UPR and UPF the
    script-vs-script ledger must match the predicted move counts, and UPR
    games must keep the bipartite move invariant on every ply.
    """
    kind = kind.upper()
    report = VerifyReport(f"playout:{kind}")
    art = build_formula_artifact(kind, q)
    src = art.source.to_dict()
    truth = evaluate(art.source)
    winner = Player.LEFT if truth else Player.RIGHT
    win_side = "existential" if truth else "universal"
    lose_side = "universal" if truth else "existential"
    good = optimal_policy(art.source, win_side)
    bad = random_policy(lose_side, art.source.n, seed)

    def record(label: str, got: Player | None, ledger: dict | None) -> None:
        report.instances_run += 1
        report.count(kind, "instances")
        if got is not winner:
            report.count(kind, "mismatches")
            report.mismatches.append(Mismatch({**src, "game": label}, winner.name, got.name if got else "error"))
        if ledger and ledger.get("invariant_violations"):
            report.structural_failures.append(
                f"{src} {label}: bipartite move invariant failed on {ledger['invariant_violations']} plies"
            )

    def game(label: str, script_other: bool, opp_seed: int) -> dict | None:
        mine = scripted_proper_play(art, winner, good)
        other = (
            scripted_proper_play(art, winner.other, bad, strict=True) if script_other else uniform_random(opp_seed)
        )
        left, right = (mine, other) if winner is Player.LEFT else (other, mine)
        try:
            out = scripted_playout(art, left, right)
        except (ScriptDiverged, StrategyError, RuntimeError) as exc:
            report.structural_failures.append(f"{src} {label}: {type(exc).__name__}: {exc}")
            record(label, None, None)
            return None
        record(label, out.winner, out.ledger)
        return out.ledger

    ledger = game("script-vs-script", True, 0)
    if ledger is not None:
        want = predicted_figures(art)
        got = {k: ledger["figures"].get(k) for k in want}
        if got != want:
            report.structural_failures.append(f"{src}: move ledger {got}, predicted {want}")
        report.strata.setdefault("ledgers", {})[json.dumps(src)] = {"measured": got, "predicted": want}
    rng = random.Random(seed)
    for _ in range(random_playouts):
        game("script-vs-random", False, rng.randrange(1 << 30))
    return report


def playout_campaign(
    kind: str,
    count: int = 5,
    n: int = 4,
    max_clauses: int = 3,
    seed: int = 0,
    random_playouts: int = 100,
) -> VerifyReport:
    start = time.perf_counter()
    report = VerifyReport(f"playout:{kind.upper()}")
    for i, q in enumerate(formula_corpus(n, max_clauses, count, seed)):
        rep = play_instance(q, kind, random_playouts, seed + i)
        ledgers = rep.strata.pop("ledgers", {})
        report.merge(rep)
        report.strata.setdefault("ledgers", {}).update(ledgers)
    report.seconds = time.perf_counter() - start
    return report


# -- specs --------------------------------------------------------------------------


@dataclass
class SpecResult:
    reports: list[tuple[str, VerifyReport]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for _, r in self.reports)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "warnings": list(self.warnings),
            "campaigns": [{"name": name, **r.to_dict()} for name, r in self.reports],
        }


def _mutation(entry: Mapping | None):
    if not entry:
        return None
    if "drop_role_edge" in entry:
        tail, head = entry["drop_role_edge"]
        return DropRoleEdge(str(tail), str(head))
    if "shorten" in entry:
        gadget = str(entry["shorten"])
        return lambda a: shorten_path(a, gadget)
    raise SpecError(f"unknown mutation {dict(entry)!r}")


def run_campaign(c: Mapping, budget: int = DEFAULT_BUDGET, workers: int = 1) -> VerifyReport:
    kind = str(c.get("kind", "")).upper()
    typ = c.get("type", "oracle")
    if typ == "fixtures":
        return lemma_fixtures(int(c.get("samples", 100)), int(c.get("seed", 0)))
    if typ == "oracle":
        corpus = Corpus.from_dict(c.get("corpus", {}))
        return verify_oracle(kind, corpus, int(c.get("budget", budget)), _mutation(c.get("mutate")), workers)
    if typ == "structure":
        return structure_campaign(
            kind,
            int(c.get("count", 10)),
            int(c.get("n", 2)),
            int(c.get("max_clauses", 3)),
            int(c.get("seed", 0)),
            _mutation(c.get("mutate")),
        )
    if typ == "playout":
        return playout_campaign(
            kind,
            int(c.get("count", 5)),
            int(c.get("n", 4)),
            int(c.get("max_clauses", 3)),
            int(c.get("seed", 0)),
            int(c.get("random_playouts", 100)),
        )
    raise SpecError(f"unknown campaign type {typ!r}")


def run_spec(
    spec: Mapping,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    progress: Callable[[str, VerifyReport], None] | None = None,
) -> SpecResult:
    if not isinstance(spec, Mapping) or not isinstance(spec.get("campaigns", []), list):
        raise SpecError('a campaign spec is an object with a "campaigns" list')
    out = SpecResult()
    campaigns = spec.get("campaigns", [])
    if not campaigns:
        out.warnings.append("spec lists no campaigns; nothing was checked")
    for i, c in enumerate(campaigns):
        if not isinstance(c, Mapping):
            raise SpecError(f"campaign {i} is not an object")
        name = str(c.get("name") or f"{c.get('type', 'oracle')}:{c.get('kind', '')}".rstrip(":"))
        try:
            rep = run_campaign(c, budget, workers)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, SpecError):
                raise
            raise SpecError(f"campaign {name!r}: {exc}") from exc
        out.reports.append((name, rep))
        if progress is not None:
            progress(name, rep)
    return out


def bundled_spec(name: str) -> dict:
    """A spec shipped in geolab/data, e.g. "paper-goldens"."""
    ref = resources.files("geolab.data").joinpath(f"{name}.json")
    if not ref.is_file():
        raise SpecError(f"no bundled spec named {name!r}")
    return json.loads(ref.read_text())
