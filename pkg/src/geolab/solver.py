"""Exact game values.

`solve_brute` is a memoized depth-first search that works for every
variant.  Game length is bounded by the total height, so the recursion depth
is too.  `solve_by_matching` decides impartial undirected height-1 games in
polynomial time: the token's vertex is a win for the mover exactly when
every maximum matching covers it (restricted deletion on any graph, free
deletion on bipartite graphs).
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from enum import Enum

from .engine import Move, Player, Position, encode_raw, legal_moves
from .graph import is_bipartite
from .matching import MatchingError, is_essential, maximum_matching

WIN, DRAW, LOSS = 1, 0, -1

DEFAULT_BUDGET = 10**8
DEFAULT_TABLE_CAP = 20_000_000


class BudgetExhausted(RuntimeError):
    def __init__(self, nodes: int) -> None:
        super().__init__(f"node budget exhausted after {nodes} expansions")
        self.nodes = nodes


class Result(str, Enum):
    LEFT_WINS = "LeftWins"
    RIGHT_WINS = "RightWins"
    DRAW = "Draw"


@dataclass(frozen=True)
class DrawOnReach:
    """Treat "token on `vertex` with `mover` to play" as a drawn terminal."""

    vertex: int
    mover: Player = Player.LEFT


@dataclass(frozen=True)
class Outcome:
    result: Result
    principal_variation: tuple[Move, ...] = ()

    @property
    def winner(self) -> Player | None:
        if self.result is Result.LEFT_WINS:
            return Player.LEFT
        if self.result is Result.RIGHT_WINS:
            return Player.RIGHT
        return None


@dataclass
class SolveReport:
    outcome: Outcome
    nodes_expanded: int = 0
    table_hits: int = 0
    optimal_move: Move | None = None
    method: str = "search"
    extra: dict = field(default_factory=dict)

    @property
    def winner(self) -> Player | None:
        return self.outcome.winner

    def to_dict(self) -> dict:
        return {
            "result": self.outcome.result.value,
            "optimal_move": list(self.optimal_move) if self.optimal_move else None,
            "principal_variation": [list(m) for m in self.outcome.principal_variation],
            "nodes_expanded": self.nodes_expanded,
            "table_hits": self.table_hits,
            "method": self.method,
        }


def _result_for(value: int, mover: Player) -> Result:
    if value == DRAW:
        return Result.DRAW
    winner = mover if value == WIN else mover.other
    return Result.LEFT_WINS if winner is Player.LEFT else Result.RIGHT_WINS


class _Search:
    """Make/unmake negamax over a mutable copy of the position."""

    def __init__(self, p: Position, draw: DrawOnReach | None, budget: int, table_cap: int):
        g = p.graph
        self.succ = g.succ
        self.pred = g.pred
        self.h = bytearray(g.heights)
        self.tok = list(p.tokens)
        self.right = p.to_move is Player.RIGHT
        self.partizan = p.variant.partizan
        self.restricted = p.variant.restricted
        self.draw = draw
        self.budget = budget
        self.table_cap = table_cap
        self.table: dict[bytes, int] = {}
        self.nodes = 0
        self.hits = 0

    def key(self) -> bytes:
        return encode_raw(self.h, self.tok, self.right)

    def active(self) -> int:
        return 1 if (self.partizan and self.right) else 0

    def moves(self) -> list[tuple[int, int]]:
        h = self.h
        idx = self.active()
        v = self.tok[idx]
        other = self.tok[1 - idx] if self.partizan else -1
        floor = h[v] - 1
        out = []
        if self.restricted:
            for w in self.succ[v]:
                hw = h[w]
                if hw and hw >= floor and w != other:
                    out.append((w, v))
        else:
            pred = self.pred
            for w in self.succ[v]:
                hw = h[w]
                if hw and hw >= floor and w != other:
                    for u in pred[w]:
                        if h[u] and u != other:
                            out.append((w, u))
        return out

    def is_draw_terminal(self) -> bool:
        d = self.draw
        if d is None:
            return False
        mover = Player.RIGHT if self.right else Player.LEFT
        return mover is d.mover and self.tok[self.active()] == d.vertex

    def push(self, w: int, u: int) -> int:
        idx = self.active()
        v = self.tok[idx]
        self.h[u] -= 1
        self.tok[idx] = w
        self.right = not self.right
        return v

    def pop(self, v: int, u: int) -> None:
        self.right = not self.right
        self.tok[self.active()] = v
        self.h[u] += 1

    def value(self) -> int:
        key = encode_raw(self.h, self.tok, self.right)
        got = self.table.get(key)
        if got is not None:
            self.hits += 1
            return got
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExhausted(self.nodes - 1)
        if self.is_draw_terminal():
            best = DRAW
        else:
            best = LOSS
            h = self.h
            tok = self.tok
            idx = self.active()
            v = tok[idx]
            for w, u in self.moves():
                h[u] -= 1
                tok[idx] = w
                self.right = not self.right
                val = -self.value()
                self.right = not self.right
                tok[idx] = v
                h[u] += 1
                if val > best:
                    best = val
                    if best == WIN:
                        break
        if len(self.table) < self.table_cap:
            self.table[key] = best
        return best

    def child_value(self, w: int, u: int) -> int:
        v = self.push(w, u)
        try:
            return -self.value()
        finally:
            self.pop(v, u)

    def best_child(self, target: int) -> tuple[int, int] | None:
        for w, u in self.moves():
            if self.child_value(w, u) == target:
                return (w, u)
        return None

    def principal_variation(self, value: int, limit: int = 100_000) -> list[Move]:
        pv: list[Move] = []
        undo = []
        try:
            while len(pv) < limit and not self.is_draw_terminal():
                step = self.best_child(value)
                if step is None:
                    break
                w, u = step
                idx = self.active()
                pv.append(Move(self.tok[idx], w, u))
                undo.append((self.push(w, u), u))
                value = -value
        finally:
            for v, u in reversed(undo):
                self.pop(v, u)
        return pv


def _limit_recursion(p: Position) -> None:
    need = sum(p.graph.heights) * 2 + 200
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


def solve_brute(
    p: Position,
    mode: DrawOnReach | None = None,
    budget: int = DEFAULT_BUDGET,
    table_cap: int = DEFAULT_TABLE_CAP,
    pv: bool = True,
) -> SolveReport:
    """Exact value of `p` by exhaustive memoized search.

    Raises BudgetExhausted once more than `budget` positions have been
    expanded; a partial search never produces an answer.
    """
    _limit_recursion(p)
    s = _Search(p, mode, budget, table_cap)
    value = s.value()
    best = None
    if value != LOSS and not s.is_draw_terminal():
        step = s.best_child(value)
        if step is not None:
            best = Move(s.tok[s.active()], step[0], step[1])
    line = tuple(s.principal_variation(value)) if pv else ()
    return SolveReport(
        Outcome(_result_for(value, p.to_move), line),
        nodes_expanded=s.nodes,
        table_hits=s.hits,
        optimal_move=best,
        method="search",
    )


def optimal_terminals(
    p: Position, mode: DrawOnReach | None = None, budget: int = DEFAULT_BUDGET
) -> set[tuple[int, ...]]:
    """Height profiles of every terminal position reachable when both
    players only ever choose value-preserving moves."""
    _limit_recursion(p)
    s = _Search(p, mode, budget, DEFAULT_TABLE_CAP)
    seen: set[bytes] = set()
    found: set[tuple[int, ...]] = set()

    def walk(value: int) -> None:
        key = s.key()
        if key in seen:
            return
        seen.add(key)
        if s.is_draw_terminal():
            found.add(tuple(s.h))
            return
        children = s.moves()
        if not children:
            found.add(tuple(s.h))
            return
        for w, u in children:
            if s.child_value(w, u) == value:
                v = s.push(w, u)
                walk(-value)
                s.pop(v, u)

    walk(s.value())
    return found


def matching_applicable(p: Position) -> str | None:
    """None if solve_by_matching handles `p`, otherwise the reason it does not."""
    var = p.variant
    if var.partizan:
        return "the matching solver needs an impartial game"
    if p.graph.directed:
        return "the matching solver needs an undirected graph"
    if max(p.graph.heights, default=0) > 1:
        return "the matching solver needs all heights at most 1"
    if not var.restricted and not is_bipartite(p.graph):
        return "free deletion is only characterised by matchings on bipartite graphs"
    return None


def solve_by_matching(p: Position, seed: int = 0) -> SolveReport:
    why = matching_applicable(p)
    if why:
        raise MatchingError(why)
    g = p.graph
    t = p.tokens[0]
    if is_essential(g, t):
        m = maximum_matching(g, seed=seed)
        mate = m.mate(t)
        move = Move(t, mate, t)
        return SolveReport(
            Outcome(_result_for(WIN, p.to_move), (move,)), optimal_move=move, method="matching"
        )
    return SolveReport(Outcome(_result_for(LOSS, p.to_move)), method="matching")


def solve(p: Position, budget: int = DEFAULT_BUDGET, **kw) -> SolveReport:
    if matching_applicable(p) is None:
        return solve_by_matching(p)
    return solve_brute(p, budget=budget, **kw)


def best_move(p: Position, budget: int = DEFAULT_BUDGET) -> Move | None:
    """Winning move if there is one, else the first legal move, else None."""
    if not legal_moves(p):
        return None
    rep = solve(p, budget=budget, pv=False)
    if rep.optimal_move is not None:
        return rep.optimal_move
    return legal_moves(p)[0]
