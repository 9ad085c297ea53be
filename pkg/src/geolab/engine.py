"""Rules for every Geography variant: move generation and application.

A variant is named by orientation (D/U), partisanship (I/P), deletion mode
(R/F) and maximum height k, e.g. ``DIF`` or ``UIR4``.  A move <v, w, u>
sends the active token from v to w and lowers the height of u by one.
"""
from __future__ import annotations

import re
import struct
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, NamedTuple

from .graph import GameGraph, GraphError, Orientation


class Partisanship(str, Enum):
    IMPARTIAL = "impartial"
    PARTIZAN = "partizan"


class Deletion(str, Enum):
    RESTRICTED = "restricted"
    FREE = "free"


class Player(str, Enum):
    LEFT = "L"
    RIGHT = "R"

    @property
    def other(self) -> "Player":
        return Player.RIGHT if self is Player.LEFT else Player.LEFT


class PositionError(ValueError):
    """A position that breaks the board or token invariants."""


_CODE = re.compile(r"^([DU])([IP])([RF])(\d*)$")


@dataclass(frozen=True)
class Variant:
    orientation: Orientation
    partisanship: Partisanship
    deletion: Deletion
    max_height: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "orientation", Orientation(self.orientation))
        object.__setattr__(self, "partisanship", Partisanship(self.partisanship))
        object.__setattr__(self, "deletion", Deletion(self.deletion))
        if not 1 <= int(self.max_height) <= 255:
            raise ValueError("max_height must lie in 1..255")
        object.__setattr__(self, "max_height", int(self.max_height))

    @classmethod
    def parse(cls, code: str) -> "Variant":
        """``"DIR"`` is classic Geography; a trailing integer sets k."""
        m = _CODE.match(code.strip().upper())
        if not m:
            raise ValueError(f"bad variant code {code!r}")
        o, p, d, k = m.groups()
        return cls(
            Orientation.DIRECTED if o == "D" else Orientation.UNDIRECTED,
            Partisanship.IMPARTIAL if p == "I" else Partisanship.PARTIZAN,
            Deletion.RESTRICTED if d == "R" else Deletion.FREE,
            int(k) if k else 1,
        )

    @property
    def code(self) -> str:
        s = (
            ("D" if self.orientation is Orientation.DIRECTED else "U")
            + ("I" if self.partisanship is Partisanship.IMPARTIAL else "P")
            + ("R" if self.deletion is Deletion.RESTRICTED else "F")
        )
        return s if self.max_height == 1 else f"{s}{self.max_height}"

    @property
    def partizan(self) -> bool:
        return self.partisanship is Partisanship.PARTIZAN

    @property
    def restricted(self) -> bool:
        return self.deletion is Deletion.RESTRICTED

    def with_height(self, k: int) -> "Variant":
        return Variant(self.orientation, self.partisanship, self.deletion, k)

    def to_dict(self) -> dict:
        return {
            "orientation": self.orientation.value,
            "partisanship": self.partisanship.value,
            "deletion": self.deletion.value,
            "max_height": self.max_height,
        }

    @classmethod
    def from_dict(cls, d: Mapping | str) -> "Variant":
        if isinstance(d, str):
            return cls.parse(d)
        if "code" in d and len(d) == 1:
            return cls.parse(d["code"])
        return cls(d["orientation"], d["partisanship"], d["deletion"], d.get("max_height", 1))

    def __str__(self) -> str:
        return self.code


class Move(NamedTuple):
    origin: int
    target: int
    deleted: int

    @property
    def regular(self) -> bool:
        return self.deleted == self.origin

    def __str__(self) -> str:
        return f"{self.origin} {self.target} {self.deleted}"


@dataclass(frozen=True)
class Position:
    """Board, token placement and the player to move.

    `tokens` is ``(t,)`` for impartial games and ``(left, right)`` for
    partizan ones.  In impartial games the named player to move is the one
    who wins on an N-position.
    """

    graph: GameGraph
    variant: Variant
    tokens: tuple[int, ...]
    to_move: Player = Player.LEFT

    def __post_init__(self) -> None:
        object.__setattr__(self, "tokens", tuple(int(t) for t in self.tokens))
        object.__setattr__(self, "to_move", Player(self.to_move))
        g, var = self.graph, self.variant
        if g.orientation is not var.orientation:
            raise PositionError(
                f"{var.orientation.value} variant on a {g.orientation.value} graph"
            )
        want = 2 if var.partizan else 1
        if len(self.tokens) != want:
            raise PositionError(f"{var.code} needs {want} token(s), got {len(self.tokens)}")
        for t in self.tokens:
            if not 0 <= t < g.n:
                raise PositionError(f"token on nonexistent vertex {t}")
            if g.heights[t] < 1:
                raise PositionError(f"token on deleted vertex {t}")
        if want == 2 and self.tokens[0] == self.tokens[1]:
            raise PositionError("partizan tokens share a vertex")
        top = max(g.heights, default=0)
        if top > var.max_height:
            raise PositionError(f"height {top} exceeds k = {var.max_height}")

    @property
    def token(self) -> int:
        """The active player's token."""
        return self.tokens[self.active_index]

    @property
    def active_index(self) -> int:
        return 1 if (self.variant.partizan and self.to_move is Player.RIGHT) else 0

    @property
    def heights(self) -> tuple[int, ...]:
        return self.graph.heights

    def token_of(self, player: Player) -> int:
        if not self.variant.partizan:
            return self.tokens[0]
        return self.tokens[0] if player is Player.LEFT else self.tokens[1]

    def with_to_move(self, player: Player) -> "Position":
        return Position(self.graph, self.variant, self.tokens, player)

    def to_dict(self) -> dict:
        d = self.graph.to_dict()
        d["variant"] = self.variant.to_dict()
        if self.variant.partizan:
            d["tokens"] = {"left": self.tokens[0], "right": self.tokens[1]}
        else:
            d["tokens"] = {"token": self.tokens[0]}
        d["to_move"] = self.to_move.value
        return d

    @classmethod
    def from_dict(cls, d: Mapping) -> "Position":
        try:
            graph = GameGraph.from_dict(d)
            variant = Variant.from_dict(d["variant"])
            toks = d["tokens"]
            if "token" in toks:
                tokens: tuple[int, ...] = (toks["token"],)
            else:
                tokens = (toks["left"], toks["right"])
            to_move = Player(d.get("to_move", "L"))
        except KeyError as exc:
            raise PositionError(f"position JSON is missing field {exc.args[0]!r}") from None
        except GraphError:
            raise
        except (TypeError, ValueError) as exc:
            raise PositionError(f"position JSON is malformed: {exc}") from None
        return cls(graph, variant, tokens, to_move)


class IllegalMove(ValueError):
    """Raised by apply_move; `reason` is one of the REASON_* codes."""

    def __init__(self, reason: str, detail: str) -> None:
        super().__init__(f"{reason}: {detail}")
        self.reason = reason
        self.detail = detail


BAD_SOURCE = "bad-source"
BAD_TARGET = "bad-target"
HEIGHT_CLIMB = "height-climb"
OCCUPIED_TARGET = "occupied-target"
BAD_DELETION = "bad-deletion"


def legal_moves(p: Position) -> list[Move]:
    """All legal moves, sorted by (target, deleted)."""
    g = p.graph
    h = g.heights
    idx = p.active_index
    v = p.tokens[idx]
    other = p.tokens[1 - idx] if p.variant.partizan else -1
    floor = h[v] - 1
    restricted = p.variant.restricted
    out: list[Move] = []
    for w in g.succ[v]:
        hw = h[w]
        if hw == 0 or hw < floor or w == other:
            continue
        if restricted:
            out.append(Move(v, w, v))
        else:
            for u in g.pred[w]:
                if h[u] and u != other:
                    out.append(Move(v, w, u))
    return out


def apply_move(p: Position, m: Move) -> Position:
    """Play `m`, raising IllegalMove with a reason code if it is not legal."""
    check_move(p, m)
    return _play(p, m)


def _play(p: Position, m: Move) -> Position:
    heights = list(p.graph.heights)
    heights[m.deleted] -= 1
    tokens = list(p.tokens)
    tokens[p.active_index] = m.target
    return Position(p.graph.with_heights(heights), p.variant, tuple(tokens), p.to_move.other)


def check_move(p: Position, m: Move) -> None:
    g = p.graph
    h = g.heights
    v, w, u = m
    idx = p.active_index
    if v != p.tokens[idx]:
        raise IllegalMove(BAD_SOURCE, f"the moving token is on {p.tokens[idx]}, not {v}")
    if not 0 <= w < g.n or w not in g.succ[v] or h[w] == 0:
        raise IllegalMove(BAD_TARGET, f"{w} is not a live successor of {v}")
    if h[w] < h[v] - 1:
        raise IllegalMove(
            HEIGHT_CLIMB, f"cannot climb from height {h[v]} to height {h[w]} (needs >= {h[v] - 1})"
        )
    other = p.tokens[1 - idx] if p.variant.partizan else -1
    if w == other:
        raise IllegalMove(OCCUPIED_TARGET, f"{w} holds the other token")
    if p.variant.restricted:
        if u != v:
            raise IllegalMove(BAD_DELETION, f"restricted deletion must remove {v}, not {u}")
        return
    if not 0 <= u < g.n or u not in g.pred[w] or h[u] == 0:
        raise IllegalMove(BAD_DELETION, f"{u} is not a live predecessor of {w}")
    if u == other:
        raise IllegalMove(BAD_DELETION, f"{u} holds the other token")


def loser_if_stuck(p: Position) -> Player | None:
    return p.to_move if not legal_moves(p) else None


def encode_position(p: Position) -> bytes:
    """Table key: heights, token ids, player to move."""
    return encode_raw(p.graph.heights, p.tokens, p.to_move is Player.RIGHT)


def encode_raw(heights, tokens, right_to_move: bool) -> bytes:
    return bytes(heights) + struct.pack(f"<{len(tokens)}I", *tokens) + (b"R" if right_to_move else b"L")


def replay(p: Position, moves) -> Position:
    for m in moves:
        p = apply_move(p, Move(*m))
    return p
