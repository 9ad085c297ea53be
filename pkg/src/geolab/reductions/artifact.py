"""Reduction outputs: a position plus a role for every vertex."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from ..engine import Player, Position, Variant
from ..graph import Bipartition, GameGraph, Orientation
from ..qbf import QbfInstance, evaluate

KINDS = ("DIF", "DPF", "UPR", "UPF", "UIR4", "U2D", "S2TO1")


@dataclass(frozen=True, order=True)
class Role:
    """Where a vertex sits: gadget family, gadget index, slot inside it."""

    gadget: str
    index: tuple[int, ...] = ()
    slot: str = ""

    def __str__(self) -> str:
        s = self.gadget
        if self.index:
            s += "(" + ",".join(str(i) for i in self.index) + ")"
        if self.slot:
            s += ":" + self.slot
        return s

    @classmethod
    def parse(cls, text: str) -> "Role":
        m = _ROLE.match(text)
        if not m:
            raise ValueError(f"bad role {text!r}")
        gadget, idx, slot = m.groups()
        index = tuple(int(x) for x in idx.split(",")) if idx else ()
        return cls(gadget, index, slot or "")


_ROLE = re.compile(r"^([A-Za-z_]+)(?:\(([-\d,]*)\))?(?::(.*))?$")


class Builder:
    """Allocates vertices in order, recording roles and edges."""

    def __init__(self, orientation: Orientation | str) -> None:
        self.orientation = Orientation(orientation)
        self.heights: list[int] = []
        self.roles: list[Role] = []
        self.edges: list[tuple[int, int]] = []
        self.where: dict[Role, int] = {}

    def add(self, gadget: str, index: Iterable[int] = (), slot: str = "", height: int = 1) -> int:
        role = Role(gadget, tuple(index), str(slot))
        if role in self.where:
            raise ValueError(f"role {role} allocated twice")
        v = len(self.heights)
        self.heights.append(height)
        self.roles.append(role)
        self.where[role] = v
        return v

    def path(self, gadget: str, index: Iterable[int], length: int) -> list[int]:
        """`length` vertices with slots 1..length joined in order."""
        index = tuple(index)
        vs = [self.add(gadget, index, str(k)) for k in range(1, length + 1)]
        for a, b in zip(vs, vs[1:]):
            self.edge(a, b)
        return vs

    def edge(self, a: int, b: int) -> None:
        self.edges.append((a, b))

    def __getitem__(self, key: tuple) -> int:
        gadget, index, slot = key
        return self.where[Role(gadget, tuple(index), str(slot))]

    def graph(self) -> GameGraph:
        labels = {v: str(r) for v, r in enumerate(self.roles)}
        return GameGraph(self.orientation, self.heights, self.edges, labels)


Source = Union[QbfInstance, Position]


@dataclass
class ReductionArtifact:
    kind: str
    position: Position
    roles: tuple[Role, ...]
    source: Source
    claimed_bipartition: Bipartition | None = None
    sizes: dict = field(default_factory=dict)
    where: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown reduction kind {self.kind!r}")
        if len(self.roles) != self.position.graph.n:
            raise ValueError("every vertex needs exactly one role")
        if not self.where:
            self.where = {r: v for v, r in enumerate(self.roles)}

    @property
    def graph(self) -> GameGraph:
        return self.position.graph

    @property
    def variant(self) -> Variant:
        return self.position.variant

    def vertex(self, gadget: str, index: Iterable[int] = (), slot: str | int = "") -> int:
        return self.where[Role(gadget, tuple(index), str(slot))]

    def find(self, gadget: str, index: Iterable[int] = (), slot: str | int = "") -> int | None:
        return self.where.get(Role(gadget, tuple(index), str(slot)))

    def group(self, gadget: str, index: Iterable[int] | None = None) -> list[int]:
        """Vertices of one gadget family, optionally one gadget, in id order."""
        idx = None if index is None else tuple(index)
        return [
            v
            for v, r in enumerate(self.roles)
            if r.gadget == gadget and (idx is None or r.index == idx)
        ]

    def role(self, v: int) -> Role:
        return self.roles[v]

    def expected_winner(self, budget: int | None = None) -> Player:
        """Winner predicted by the source: Left iff the formula is true, or the
        brute-force winner of the source game."""
        if isinstance(self.source, QbfInstance):
            return Player.LEFT if evaluate(self.source) else Player.RIGHT
        from ..solver import solve_brute

        rep = solve_brute(self.source, budget=budget or 10**8, pv=False)
        return rep.winner

    def to_dict(self) -> dict:
        d = self.position.to_dict()
        d["roles"] = {str(v): str(r) for v, r in enumerate(self.roles)}
        if self.claimed_bipartition is not None:
            d["bipartition"] = {
                "A": sorted(self.claimed_bipartition.part_a),
                "B": sorted(self.claimed_bipartition.part_b),
            }
        d["kind"] = self.kind
        if isinstance(self.source, QbfInstance):
            d["source"] = {"qbf": self.source.to_dict()}
        else:
            d["source"] = {"position": self.source.to_dict()}
        if self.sizes:
            d["sizes"] = dict(self.sizes)
        return d

    @classmethod
    def from_dict(cls, d: Mapping) -> "ReductionArtifact":
        pos = Position.from_dict(d)
        roles = tuple(Role.parse(d["roles"][str(v)]) for v in range(pos.graph.n))
        bip = None
        if "bipartition" in d:
            bip = Bipartition(frozenset(d["bipartition"]["A"]), frozenset(d["bipartition"]["B"]))
        src = d["source"]
        source: Source
        if "qbf" in src:
            source = QbfInstance.from_dict(src["qbf"])
        else:
            source = Position.from_dict(src["position"])
        return cls(d["kind"], pos, roles, source, bip, dict(d.get("sizes", {})))


def bipartition_from(roles: Iterable[Role], side) -> Bipartition:
    """Split vertices by `side(role) -> "A" | "B"`."""
    a, b = set(), set()
    for v, r in enumerate(roles):
        (a if side(r) == "A" else b).add(v)
    return Bipartition(frozenset(a), frozenset(b))


def qbf_position(builder: Builder, variant: Variant, tokens, to_move=Player.LEFT) -> Position:
    return Position(builder.graph(), variant, tuple(tokens), to_move)
