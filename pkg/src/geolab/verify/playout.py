"""Play a reduction artifact to the end between two strategies."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from ..engine import IllegalMove, Move, Player, apply_move, check_move, legal_moves
from ..reductions import ReductionArtifact
from .lines import LINES, Line
from .strategies import Strategy


class StrategyError(RuntimeError):
    """A strategy produced an illegal move."""


class Playout(NamedTuple):
    winner: Player
    transcript: list[Move]
    ledger: dict


def _counts(line_counts: dict[str, int]) -> dict[str, int]:
    return dict(line_counts)


def scripted_playout(
    artifact: ReductionArtifact,
    left: Strategy,
    right: Strategy,
    max_plies: int | None = None,
) -> Playout:
    """Play until someone is stuck.  Every move is checked for legality.

    The ledger holds per-phase move counts along the proper line (until the
    first deviation), snapshots of the move totals at marked points, the
    ply of the first deviation, and for UPR the number of plies on which the
    bipartite move invariant failed.  ScriptDiverged from a strict script
    propagates to the caller.
    """
    pos = artifact.position
    for s in (left, right):
        s.reset()
    observer = Line(artifact) if artifact.kind in LINES else None
    totals = {"L": 0, "R": 0}
    phases: dict[str, dict[str, int]] = {}
    marks: dict[str, dict[str, int]] = {}
    ledger: dict = {"phases": phases, "marks": marks, "totals": totals, "diverged_at": None}
    bip = artifact.claimed_bipartition if artifact.kind == "UPR" else None
    if bip is not None:
        ledger["invariant_violations"] = 0
    transcript: list[Move] = []
    limit = max_plies if max_plies is not None else 4 * sum(pos.heights) + 4
    while True:
        if bip is not None:
            opposite = bip.side(pos.tokens[0]) != bip.side(pos.tokens[1])
            if opposite != (pos.to_move is Player.LEFT):
                ledger["invariant_violations"] += 1
        if not legal_moves(pos):
            winner = pos.to_move.other
            break
        if len(transcript) >= limit:
            raise RuntimeError(f"playout exceeded {limit} plies")
        mover = pos.to_move
        strategy = left if mover is Player.LEFT else right
        step = observer.step if observer is not None and ledger["diverged_at"] is None else None
        if step is not None and step.mark and step.mark not in marks:
            marks[step.mark] = dict(totals)
        move = strategy.next_move(pos)
        try:
            check_move(pos, move)
        except IllegalMove as exc:
            raise StrategyError(f"{strategy!r} played an illegal move at ply {len(transcript)}: {exc}") from None
        after = apply_move(pos, move)
        key = mover.value
        totals[key] += 1
        if step is not None:
            ok = observer.advance(move, after)
            if ok:
                bucket = phases.setdefault(step.phase, {"L": 0, "R": 0})
                bucket[key] += 1
            else:
                ledger["diverged_at"] = len(transcript)
        transcript.append(move)
        pos = after
    ledger["figures"] = ledger_figures(artifact, ledger)
    return Playout(winner, transcript, ledger)


def ledger_figures(artifact: ReductionArtifact, ledger: dict) -> dict[str, int]:
    """Named counts that the hardness arguments predict."""
    marks, totals = ledger["marks"], ledger["totals"]
    out: dict[str, int] = {}
    if "phase1_end" in marks:
        out["left_moves_after_phase1"] = totals["L"] - marks["phase1_end"]["L"]
        out["right_moves_after_phase1"] = totals["R"] - marks["phase1_end"]["R"]
    if artifact.kind == "UPF" and "phase3_start" in marks:
        start = marks["phase3_start"]
        out["right_moves_in_phase3"] = totals["R"] - start["R"]
        out["left_moves_in_phase3"] = totals["L"] - start["L"]
        if "last_linker_entry" in marks:
            out["left_phase3_moves_at_last_linker"] = marks["last_linker_entry"]["L"] - start["L"]
    return out


def predicted_figures(artifact: ReductionArtifact) -> dict[str, int]:
    """What the arithmetic of the hardness arguments says the ledger should show."""
    q = artifact.source
    n, m = q.n, q.m
    if artifact.kind == "UPR":
        return {"right_moves_after_phase1": 2 * m + 3 * n + 23}
    if artifact.kind == "UPF":
        return {"left_phase3_moves_at_last_linker": 7 * m + 1, "right_moves_in_phase3": 8 * m + 4}
    return {}
