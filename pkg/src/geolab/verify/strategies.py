"""Move-choosing strategies for playouts.

Three families:

* `scripted_proper_play` follows the proper line of a formula reduction,
  settling each decision with a `Policy` (variable values), a false clause
  (universal side) or a true literal (existential side).
* `search_based` plays the solver's best move.
* `uniform_random` picks a legal move uniformly.

Scripts notice when the opponent leaves the proper line.  In strict mode
that raises ScriptDiverged.  Otherwise the script punishes: on the small
directed constructions it switches to exact search; on the undirected
partizan ones it looks for a race certificate, then falls back to its own
proper move, then to a territory heuristic.
"""
from __future__ import annotations

import random
from collections import deque
from typing import Sequence

from ..engine import Move, Player, Position, apply_move, legal_moves
from ..qbf import Policy
from ..reductions import ReductionArtifact
from ..solver import DEFAULT_BUDGET, BudgetExhausted, best_move, solve_brute
from .certificate import race_certificate
from .lines import Line, Step


class ScriptDiverged(RuntimeError):
    """The opponent left the proper line that a strict script follows."""

    def __init__(self, ply: int, move: Move, expected: Sequence[Move], phase: str) -> None:
        shown = ", ".join(str(m) for m in list(expected)[:6])
        super().__init__(f"ply {ply} ({phase}): opponent played {move}; proper moves were [{shown}]")
        self.ply = ply
        self.move = move
        self.expected = tuple(expected)
        self.phase = phase


class Strategy:
    """Chooses a move for whoever is to move.  `reset` is called before
    each game."""

    name = "strategy"

    def reset(self) -> None:
        pass

    def next_move(self, p: Position) -> Move:
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.name


class RandomStrategy(Strategy):
    def __init__(self, seed: int = 0) -> None:
        self.seed = seed
        self.name = f"uniform_random({seed})"
        self.rng = random.Random(seed)

    def reset(self) -> None:
        pass  # successive games keep drawing from one stream

    def next_move(self, p: Position) -> Move:
        return self.rng.choice(legal_moves(p))


class SearchStrategy(Strategy):
    def __init__(self, budget: int = DEFAULT_BUDGET) -> None:
        self.budget = budget
        self.name = f"search_based({budget})"

    def next_move(self, p: Position) -> Move:
        m = best_move(p, budget=self.budget)
        if m is None:
            raise RuntimeError("no legal move")
        return m


def uniform_random(seed: int = 0) -> RandomStrategy:
    return RandomStrategy(seed)


def search_based(budget: int = DEFAULT_BUDGET) -> SearchStrategy:
    return SearchStrategy(budget)


def _infer_move(before: Position, after: Position) -> Move:
    idx = before.active_index
    drop = [v for v, (x, y) in enumerate(zip(before.heights, after.heights)) if x != y]
    return Move(before.tokens[idx], after.tokens[idx], drop[0] if drop else -1)


def territory_move(p: Position, cap: int = 40) -> Move:
    """Move that leaves the most vertices closer to us than to the opponent."""
    moves = legal_moves(p)
    if len(moves) == 1 or not p.variant.partizan:
        return moves[0]
    me_i = p.active_index
    best, best_score = moves[0], None
    for m in moves[:cap]:
        after = apply_move(p, m)
        score = _voronoi(after, me_i)
        key = (score, m.regular)
        if best_score is None or key > best_score:
            best, best_score = m, key
    return best


def _voronoi(p: Position, me_i: int) -> int:
    g = p.graph
    h = g.heights
    adj = g.undirected_adjacency() if g.directed else g.succ
    a, b = p.tokens[me_i], p.tokens[1 - me_i]
    da = _dist(adj, h, a, b)
    db = _dist(adj, h, b, a)
    score = 0
    for v, d in da.items():
        e = db.get(v)
        if e is None or d < e:
            score += 1
    for v, e in db.items():
        d = da.get(v)
        if d is None or e < d:
            score -= 1
    return score


def _dist(adj, h, start, avoid) -> dict[int, int]:
    dist = {start: 0}
    dq = deque([start])
    while dq:
        x = dq.popleft()
        for y in adj[x]:
            if h[y] and y != avoid and y not in dist:
                dist[y] = dist[x] + 1
                dq.append(y)
    return dist


class ScriptedStrategy(Strategy):
    """Proper play for one side of a DIF, DPF, UPR or UPF artifact."""

    def __init__(
        self,
        artifact: ReductionArtifact,
        player: Player,
        policy: Policy,
        strict: bool = False,
        budget: int = 2_000_000,
    ) -> None:
        want = "existential" if player is Player.LEFT else "universal"
        if policy.side != want:
            raise ValueError(f"{player.name} plays the {want} variables, got a {policy.side} policy")
        self.artifact = artifact
        self.player = Player(player)
        self.policy = policy
        self.strict = strict
        self.budget = budget
        self.name = f"scripted_proper_play({artifact.kind}, {self.player.name}{', strict' if strict else ''})"
        self.reset()

    def reset(self) -> None:
        self.line = Line(self.artifact)
        self.seen = self.artifact.position
        self.diverged_at: int | None = None
        self.self_off = False
        self.plan: list[Move] = []
        self.keep: int | None = None
        self.final_linker: int | None = None
        self.pursuit_wait: int | None = None
        self.pursuit_goal: int | None = None

    @property
    def on_script(self) -> bool:
        return self.diverged_at is None and not self.self_off

    # -- bookkeeping --------------------------------------------------------

    def _catch_up(self, p: Position) -> None:
        if p.tokens == self.seen.tokens and p.heights == self.seen.heights and p.to_move == self.seen.to_move:
            return
        move = _infer_move(self.seen, p)
        step = self.line.step
        ok = self.line.advance(move, p)
        if not ok and self.diverged_at is None:
            self.diverged_at = self.line.plies
            if self.strict:
                raise ScriptDiverged(
                    self.line.plies, move, list(step.options) if step else [], step.phase if step else "end"
                )
        self.seen = p

    def _record_own(self, p: Position, m: Move) -> None:
        after = apply_move(p, m)
        if not self.line.advance(m, after):
            self.self_off = True
        self.seen = after

    # -- choosing -----------------------------------------------------------

    def next_move(self, p: Position) -> Move:
        if p.to_move is not self.player:
            raise ValueError(f"{self.name} asked to move for {p.to_move.name}")
        self._catch_up(p)
        m = self._choose(p)
        self._record_own(p, m)
        return m

    def _choose(self, p: Position) -> Move:
        legal = legal_moves(p)
        if not legal:
            raise RuntimeError("no legal move")
        if self.plan:
            m = self.plan.pop(0)
            if m in legal:
                return m
            self.plan = []
        step = self.line.step
        if not self.on_script:
            if self.artifact.kind in ("DIF", "DPF"):
                return self._search(p, legal)
            plan = race_certificate(p)
            if plan:
                self.plan = plan[1:]
                return plan[0]
            if self.artifact.kind == "UPR" and self.player is Player.LEFT:
                m = self._upr_pursuit(p, legal)
                if m is not None:
                    return m
        if step is not None and step.player is self.player:
            opts = [m for m in step.options if m in legal]
            if opts:
                if step.free:
                    return self._endgame(p, opts)
                return self._decide(step, opts)
        return self._endgame(p, legal)

    def _upr_pursuit(self, p: Position, legal: list[Move]) -> Move | None:
        """Left's answer to a Right token that leaves the clause gadget through
        a linker.  Hedge towards EXIT (after four delay moves when Right took
        an even-variable linker and has not committed yet), run a connector
        to some clause, cross the selection gadget to the clause Right is
        heading back to, and leave through that clause's connector."""
        a = self.artifact
        g = p.graph
        me, op = p.token, p.tokens[1 - p.active_index]
        mine, theirs = a.role(me), a.role(op)
        if mine.gadget not in ("delay", "exit", "clause_connector", "clause", "selector"):
            return None
        heading = None
        if theirs.gadget == "linker":
            j = theirs.index[0]
            if g.alive(a.vertex("clause", (j,), "clause")):
                heading = j
        elif not (theirs.gadget == "variable" and theirs.slot in ("left", "right")):
            return None
        if self.pursuit_wait is None:
            even = theirs.gadget == "linker" and abs(theirs.index[2]) % 2 == 0
            self.pursuit_wait = 4 if even and heading is None else 0
        if heading is not None:
            self.pursuit_goal = heading

        def onto(targets) -> Move | None:
            return next((m for m in legal if m.regular and m.target in targets), None)

        def clause(j: int) -> int:
            return a.vertex("clause", (j,), "clause")

        if mine.gadget == "delay":
            part = mine.index[0]
            if self.pursuit_wait > 0:
                m = onto(set(a.group("delay", (3 - part,))))
                if m is not None:
                    self.pursuit_wait -= 1
                    return m
            return onto({a.vertex("exit")}) if part == 2 else onto(set(a.group("delay", (2,))))
        if mine.gadget == "exit":
            order = sorted(range(1, a.source.m + 1), key=lambda j: j != self.pursuit_goal)
            return onto([a.vertex("clause_connector", (j,), 1) for j in order if g.alive(clause(j))])
        if mine.gadget == "clause_connector":
            return next((m for m in legal if m.regular), None)
        goal = self.pursuit_goal
        if goal is None or not g.alive(clause(goal)):
            return None
        if mine.gadget == "selector":
            return onto({clause(goal)})
        if me == clause(goal):
            path = a.group("clause_connector", (goal,))
            return onto({a.vertex("clause_connector", (goal,), len(path))})
        return onto(set(a.group("selector")))

    def _search(self, p: Position, legal: list[Move]) -> Move:
        try:
            rep = solve_brute(p, budget=self.budget, pv=False)
        except BudgetExhausted:
            return territory_move(p)
        return rep.optimal_move or legal[0]

    def _endgame(self, p: Position, opts: list[Move]) -> Move:
        if self.artifact.kind in ("DIF", "DPF"):
            return self._search(p, opts)
        plan = race_certificate(p)
        if plan and plan[0] in opts:
            self.plan = plan[1:]
            return plan[0]
        if len(opts) == len(legal_moves(p)):
            return territory_move(p)
        return opts[0]

    def _decide(self, step: Step, opts: list[Move]) -> Move:
        line = self.line
        q = self.artifact.source
        d = step.decision
        if d == "var":
            for m in opts:
                i, value = step.options[m]
                if self.policy.owns(i):
                    prefix = [line.assignment.get(k, False) for k in range(1, i)]
                    if value == self.policy.choice(i, prefix):
                        return m
            return opts[0]
        if d in ("target_clause", "keep_clause", "remove_clause"):
            keep = self._keep_clause()
            if d == "remove_clause":
                others = [m for m in opts if step.options[m] is not None and step.options[m] != keep]
                return (others or opts)[0]
            for m in opts:
                if step.options[m] == keep:
                    return m
            return opts[0]
        if d in ("literal", "stall"):
            final = self._final_literal(step, opts)
            if d == "literal":
                return final
            others = [m for m in opts if step.options[m] != step.options.get(final)]
            return (others or opts)[0]
        return opts[0]

    def _keep_clause(self) -> int | None:
        """The clause the universal side steers the game to: a false one."""
        if self.keep is None:
            q = self.artifact.source
            values = [None] + [self.line.assignment.get(i, False) for i in range(1, q.n + 1)]
            false = [j for j, c in enumerate(q.clauses, 1) if not any(values[abs(x)] == (x > 0) for x in c)]
            self.keep = false[0] if false else 1
        return self.keep

    def _final_literal(self, step: Step, opts: list[Move]) -> Move:
        """A literal option that is true under the current assignment."""
        assignment = self.line.assignment

        def lit_of(tag):
            return tag[1] if isinstance(tag, tuple) else tag

        true = [m for m in opts if assignment.get(abs(lit_of(step.options[m])), False) == (lit_of(step.options[m]) > 0)]
        return (true or opts)[0]


def scripted_proper_play(
    artifact: ReductionArtifact, player: Player | str, policy: Policy, strict: bool = False
) -> ScriptedStrategy:
    return ScriptedStrategy(artifact, Player(player), policy, strict)
