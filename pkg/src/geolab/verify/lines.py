"""Proper-play lines for the formula reductions.

A line is a generator over plies.  At each ply it yields a `Step` naming
the player to move, the moves that count as proper play there (each tagged
with the decision it encodes, if any) and the current phase.  The driver
sends back nothing; it updates `Line.pos` before resuming the generator, so
options are always computed against the live board.

Lines are tolerant: after a deviation they keep producing the proper moves
that are still legal, which lets a script carry on with its own plan.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from ..engine import Move, Player, Position, legal_moves
from ..reductions import ReductionArtifact
from ..reductions.upf import deletion_slots

L, R = Player.LEFT, Player.RIGHT


@dataclass
class Step:
    player: Player
    options: dict[Move, object]
    phase: str
    decision: str | None = None
    mark: str | None = None
    free: bool = False  # every legal move counts as proper


class Line:
    """Cursor over the proper line of one artifact."""

    def __init__(self, artifact: ReductionArtifact) -> None:
        if artifact.kind not in LINES:
            raise ValueError(f"no proper-play line for {artifact.kind}")
        self.artifact = artifact
        self.pos: Position = artifact.position
        self.assignment: dict[int, bool] = {}
        self.plies = 0
        self._gen = LINES[artifact.kind](self)
        self.step: Step | None = next(self._gen, None)

    def proper(self, move: Move) -> bool:
        return self.step is not None and move in self.step.options

    def advance(self, move: Move, after: Position) -> bool:
        """Record `move` (already played, giving `after`); True if it was proper."""
        step = self.step
        ok = self.proper(move)
        if ok and step.decision == "var":
            i, value = step.options[move]
            self.assignment[i] = value
        self.pos = after
        self.plies += 1
        self.step = next(self._gen, None)
        return ok

    # helpers used by the line generators

    def moves(self, pairs: Iterable[tuple], player: Player, phase: str, decision=None, mark=None) -> Step:
        """Step from (target, deleted or None for regular, tag) triples,
        keeping only legal moves."""
        pos = self.pos
        legal = set(legal_moves(pos)) if pos.to_move is player else set()
        v = pos.token
        opts: dict[Move, object] = {}
        for target, deleted, tag in pairs:
            m = Move(v, target, v if deleted is None else deleted)
            if m in legal and m not in opts:
                opts[m] = tag
        return Step(player, opts, phase, decision, mark)

    def any_move(self, phase: str = "endgame", mark=None) -> Step:
        pos = self.pos
        return Step(pos.to_move, {m: None for m in legal_moves(pos)}, phase, None, mark, free=True)

    def alive(self, v: int | None) -> bool:
        return v is not None and self.pos.heights[v] > 0

    def at(self, player: Player) -> int:
        return self.pos.token_of(player)


def _endgame(line: Line) -> Iterator[Step]:
    while legal_moves(line.pos):
        yield line.any_move()


# -- DIF ---------------------------------------------------------------------------


def dif_line(line: Line) -> Iterator[Step]:
    a = line.artifact
    q = a.source
    n = q.n

    def v(i, slot):
        return a.vertex("variable", (i,), slot)

    for i in range(1, n + 1):
        if i % 2:
            yield line.moves([(v(i, "left1"), None, None), (v(i, "right1"), None, None)], L, "I")
            tok = line.pos.tokens[0]
            nxt = v(i, "left2") if tok == v(i, "left1") else v(i, "right2")
            yield line.moves([(nxt, None, None)], R, "I")
            b = v(i, "bottom")
            yield line.moves(
                [(b, v(i, "left2"), (i, True)), (b, v(i, "right2"), (i, False))], L, "I", "var"
            )
        else:
            yield line.moves([(v(i, "left"), None, None), (v(i, "right"), None, None)], L, "I")
            j = v(i, "join")
            yield line.moves([(j, v(i, "left"), (i, True)), (j, v(i, "right"), (i, False))], R, "I", "var")
            yield line.moves([(v(i, "bottom"), None, None)], L, "I")
        if i < n:
            yield line.moves([(v(i + 1, "top"), None, None)], R, "I")
    clauses = [a.vertex("clause", (j,), "clause") for j in range(1, q.m + 1)]
    yield line.moves([(c, None, j) for j, c in enumerate(clauses, 1)], R, "II", "target_clause", mark="phase1_end")
    tok = line.pos.tokens[0]
    role = a.role(tok)
    pairs = []
    if role.gadget == "clause" and role.slot == "clause":
        j = role.index[0]
        for k, lit in enumerate(q.clauses[j - 1], 1):
            if abs(lit) % 2:
                pairs += [(a.vertex("clause", (j,), f"lit{k}{c}"), None, lit) for c in "ab"]
            else:
                pairs.append((a.vertex("clause", (j,), f"extra{k}"), None, lit))
    yield line.moves(pairs, L, "II", "literal")
    yield from _endgame(line)


# -- DPF ---------------------------------------------------------------------------


def _dpf_top(a: ReductionArtifact, i: int) -> int:
    return a.vertex("variable", (i,), "top") if i <= 2 else a.vertex("variable", (i - 2,), "bottom")


def dpf_line(line: Line) -> Iterator[Step]:
    a = line.artifact
    q = a.source
    n, m = q.n, q.m

    def v(i, slot):
        return a.vertex("variable", (i,), slot)

    def into_diamond(i: int, player: Player) -> Step:
        # any move to the left or right vertex; the deletion is immaterial
        targets = {v(i, "left"), v(i, "right")}
        pos = line.pos
        opts = {mv: None for mv in legal_moves(pos) if mv.target in targets and mv.origin == _dpf_top(a, i)}
        return Step(player, opts, "I")

    for r in range(n // 2):
        i, k = 2 * r + 1, 2 * r + 2
        yield into_diamond(i, L)
        yield into_diamond(k, R)
        for idx, player in ((i, L), (k, R)):
            b = v(idx, "bottom")
            yield line.moves(
                [(b, v(idx, "left"), (idx, True)), (b, v(idx, "right"), (idx, False))], player, "I", "var"
            )
    delay = a.group("delay")
    deletion = a.group("clause_deletion")
    clauses = [a.vertex("clause", (j,), "clause") for j in range(1, m + 1)]
    for k in range(len(delay)):
        yield line.moves([(delay[k], None, None)], L, "II", mark="phase1_end" if k == 0 else None)
        if k % 2 == 0:
            pairs = [(deletion[k], c, j) for j, c in enumerate(clauses, 1) if line.alive(c)]
            pairs.append((deletion[k], None, None))
            yield line.moves(pairs, R, "II", "remove_clause")
        else:
            yield line.moves([(deletion[k], None, None)], R, "II")
    yield line.moves([(c, None, j) for j, c in enumerate(clauses, 1)], L, "III")
    yield line.moves([(a.vertex("escape", (), 1), None, None)], R, "III")
    tok = line.at(L)
    role = a.role(tok)
    pairs = []
    if role.gadget == "clause":
        j = role.index[0]
        for k, lit in enumerate(q.clauses[j - 1], 1):
            pairs.append((a.vertex("linker", (j, k, lit), 1), None, (k, lit)))
    yield line.moves(pairs, L, "III", "literal")
    yield from _endgame(line)


# -- UPR ---------------------------------------------------------------------------


def upr_line(line: Line) -> Iterator[Step]:
    a = line.artifact
    q = a.source
    n, m = q.n, q.m

    def v(i, slot):
        return a.vertex("variable", (i,), slot)

    for r in range(n // 2):
        i, k = 2 * r + 1, 2 * r + 2
        for idx, player in ((i, L), (k, R)):
            yield line.moves([(v(idx, "left"), None, (idx, True)), (v(idx, "right"), None, (idx, False))], player, "I", "var")
        for idx, player in ((i, L), (k, R)):
            yield line.moves([(v(idx, "bottom"), None, None)], player, "I")

    part1 = a.group("delay", (1,))
    part2 = a.group("delay", (2,))
    exit_ = a.vertex("exit")
    clauses = [a.vertex("clause", (j,), "clause") for j in range(1, m + 1)]
    selectors = a.group("selector")
    escape = a.group("escape")
    connectors = {j: a.group("clause_connector", (j,)) for j in range(1, m + 1)}
    first = True
    left_free = False
    while True:
        player = line.pos.to_move
        tok = line.at(player)
        role = a.role(tok)
        mark = "phase1_end" if first else None
        first = False
        if player is L:
            if left_free:
                yield line.any_move("II", mark)
                continue
            if tok == v(n - 1, "bottom"):
                pairs = [(x, None, None) for x in part1]
            elif role.gadget == "delay":
                other = part2 if role.index[0] == 1 else part1
                pairs = [(x, None, None) for x in other if line.alive(x)]
                if not pairs and role.index[0] == 2:
                    pairs = [(exit_, None, None)]
            elif tok == exit_:
                pairs = [(connectors[j][0], None, None) for j in connectors if line.alive(clauses[j - 1])]
            elif role.gadget == "clause_connector":
                j, s = role.index[0], int(role.slot)
                path = connectors[j]
                pairs = [(path[s] if s < len(path) else clauses[j - 1], None, None)]
            elif role.gadget == "clause":
                j = role.index[0]
                pairs = [
                    (a.vertex("linker", (j, k, lit, c), 1), None, (k, lit))
                    for k, lit in enumerate(q.clauses[j - 1], 1)
                    for c in (1, 2)
                ]
                left_free = True
                yield line.moves(pairs, L, "II", "literal", mark)
                continue
            else:
                pairs = []
            yield line.moves(pairs, L, "II", None, mark)
        else:
            live_clauses = [(j, c) for j, c in enumerate(clauses, 1) if line.alive(c)]
            if tok == v(n, "bottom") or role.gadget == "selector":
                if role.gadget == "selector" and len(live_clauses) <= 1:
                    yield line.moves([(escape[0], None, None)], R, "II", None, mark)
                else:
                    yield line.moves([(c, None, j) for j, c in live_clauses], R, "II", "remove_clause", mark)
            elif role.gadget == "clause":
                yield line.moves([(s, None, None) for s in selectors if line.alive(s)], R, "II", None, mark)
            elif role.gadget == "escape":
                s = int(role.slot)
                yield line.moves([(escape[s], None, None)] if s < len(escape) else [], R, "II", None, mark)
            else:
                yield line.moves([], R, "II", None, mark)


# -- UPF ---------------------------------------------------------------------------


def upf_line(line: Line) -> Iterator[Step]:
    a = line.artifact
    q = a.source
    n, m = q.n, q.m

    def v(i, slot):
        return a.vertex("variable", (i,), slot)

    def p(i, s):
        return a.vertex("variable_path", (i,), s)

    def linker_ends(x: int) -> list[int]:
        return [y for y in a.graph.succ[x] if a.role(y).gadget == "linker" and line.alive(y)]

    for i in range(1, n + 1):
        D, P = (L, R) if i % 2 else (R, L)
        yield line.moves(
            [(v(i, "top_left"), None, (i, True)), (v(i, "top_right"), None, (i, False))], D, "I", "var"
        )
        yield line.moves([(p(i, 2), None, None)], P, "I")
        side = "left" if line.at(D) == v(i, "top_left") else "right"
        s = v(i, side)
        yield line.moves([(s, None, None)] + [(s, u, None) for u in linker_ends(s)], D, "I")
        yield line.moves([(p(i, 3), None, None)], P, "I")
        yield line.moves([(v(i, "bottom_" + side), None, None)], D, "I")
        yield line.moves([(p(i, 4), None, None), (p(i, 4), p(i, 5), None)], P, "I")
        b = v(i, "bottom")
        if line.alive(p(i, 5)):
            pairs = [(b, p(i, 5), None)]
        else:
            other = "bottom_right" if side == "left" else "bottom_left"
            pairs = [(b, None, None), (b, v(i, other), None)]
        yield line.moves(pairs, D, "I")
        if i < n:
            yield line.moves([(v(i + 1, "top"), None, None)], P, "I")
            yield line.moves([(p(i + 1, 1), None, None)], D, "I")

    delay = a.group("delay")
    escape = a.group("escape")
    prize = a.vertex("prize")
    sel_bottom = a.vertex("selection", (), "bottom")
    paths = {j: a.group("clause_deletion", (j,)) for j in range(1, m + 1)}
    clauses = [a.vertex("clause", (j,), "clause") for j in range(1, m + 1)]
    for t in range(1, m + 8):
        yield line.moves([(delay[t - 1], None, None)], L, "II", mark="phase1_end" if t == 1 else None)
        tok = line.at(R)
        if t == 1:
            yield line.moves([(paths[j][0], None, j) for j in paths], R, "II", "keep_clause")
        elif t <= m + 3:
            role = a.role(tok)
            j = role.index[0] if role.gadget == "clause_deletion" else None
            if j is None:
                yield line.moves([], R, "II")
                continue
            slots = deletion_slots(m, j)
            target = paths[j][t - 1]
            if t in slots:
                yield line.moves([(target, clauses[slots[t] - 1], None)], R, "II")
            else:
                yield line.moves([(target, None, None)], R, "II")
        elif t == m + 4:
            yield line.moves([(sel_bottom, None, None)] + [(sel_bottom, paths[j][-1], None) for j in paths], R, "II")
        elif t < m + 7:
            yield line.moves([(escape[t - m - 5], None, None)], R, "II")
        else:
            yield line.moves([(escape[2], prize, None)], R, "II")

    def right_step(mark=None) -> Step:
        role = a.role(line.at(R))
        if role.gadget == "escape" and int(role.slot) < len(escape):
            return line.moves([(escape[int(role.slot)], None, None)], R, "III", mark=mark)
        return line.any_move("III", mark)

    first = True
    for spec in _upf_left_phase3(line, delay, clauses, paths):
        pairs, decision, mark = spec
        if first:
            mark, first = "phase3_start", False
        if pairs is None:
            yield line.any_move("III", mark)
        else:
            yield line.moves(pairs, L, "III", decision, mark)
        yield right_step()


def _upf_left_phase3(line: Line, delay, clauses, paths):
    """Left's Phase III as (pairs, decision, mark) specs; pairs None means
    any legal move."""
    a = line.artifact
    q = a.source
    m = q.m
    last = delay[-1]
    yield [(delay[-2], None, None)], None, None
    yield [(last, None, None)], None, None
    connectors = {j: a.group("clause_connector", (j,)) for j in range(1, m + 1)}
    while True:
        dead = [
            (k[0], k[1], None)
            for j, k in connectors.items()
            if not line.alive(clauses[j - 1]) and line.alive(k[0]) and line.alive(k[1])
        ]
        if not dead or line.at(L) != last:
            break
        yield dead, None, None
        yield [(last, None, None)], None, None
    live = [j for j in connectors if line.alive(clauses[j - 1])]
    yield [(connectors[j][0], None, None) for j in live], None, None
    role = a.role(line.at(L))
    if role.gadget != "clause_connector":
        while True:
            yield None, None, None
    j = role.index[0]
    path = connectors[j]
    for s in range(2, len(path) + 1):
        yield [(path[s - 1], None, None)], None, None
    c = clauses[j - 1]
    yield [(c, None, None)], None, None

    def stall_sites():
        out = []
        for x in a.graph.succ[c]:
            r = a.role(x)
            if r.gadget != "clause_deletion" or not line.alive(x):
                continue
            path_ = paths[r.index[0]]
            s = int(r.slot)
            if 3 <= s and s + 1 <= len(path_) and all(line.alive(path_[k - 1]) for k in (s - 2, s - 1, s + 1)):
                out.append((x, path_[s], (path_, s)))
        return out

    while line.at(L) == c:
        sites = stall_sites()
        if not sites:
            break
        yield [(x, below, None) for x, below, _ in sites], None, None
        r = a.role(line.at(L))
        if r.gadget != "clause_deletion":
            break
        path_ = paths[r.index[0]]
        s = int(r.slot)
        yield [(path_[s - 2], path_[s - 3], None)], None, None
        yield [(path_[s - 1], None, None)], None, None
        yield [(c, None, None)], None, None

    linkers = [
        (k, lit, a.group("linker", (j, k, lit))) for k, lit in enumerate(q.clauses[j - 1], 1)
    ]
    for _ in range(2):
        yield [(path_[0], path_[1], (k, lit)) for k, lit, path_ in linkers], "stall", None
        yield [(c, None, None)], None, None
    yield [(path_[0], None, (k, lit)) for k, lit, path_ in linkers], "literal", "last_linker_entry"
    while True:
        yield None, None, None


LINES: dict[str, Callable[[Line], Iterator[Step]]] = {
    "DIF": dif_line,
    "DPF": dpf_line,
    "UPR": upr_line,
    "UPF": upf_line,
}
