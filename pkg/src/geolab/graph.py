"""Game boards: vertices with integer heights joined by arcs or edges.

A vertex whose height has dropped to 0 is deleted.  It keeps its id so that
recorded move histories stay valid, but neighbor queries never return it.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence


class GraphError(ValueError):
    """Malformed graph or a query that violates a graph contract."""


class Orientation(str, Enum):
    DIRECTED = "directed"
    UNDIRECTED = "undirected"


class Direction(str, Enum):
    SUCCESSORS = "successors"
    PREDECESSORS = "predecessors"
    UNDIRECTED = "undirected"


class GameGraph:
    """Immutable board.

    `succ[v]` and `pred[v]` are sorted tuples over *all* vertices, deleted or
    not; the heights decide liveness.  `with_heights` shares this adjacency so
    that positions along a game reuse one structure.
    """

    __slots__ = ("orientation", "heights", "edges", "labels", "succ", "pred")

    def __init__(
        self,
        orientation: Orientation | str,
        heights: Sequence[int],
        edges: Iterable[tuple[int, int]],
        labels: Mapping[int, str] | None = None,
    ) -> None:
        orientation = Orientation(orientation)
        heights = tuple(int(h) for h in heights)
        n = len(heights)
        for v, h in enumerate(heights):
            if h < 0:
                raise GraphError(f"vertex {v} has negative height {h}")
        directed = orientation is Orientation.DIRECTED
        seen: set[tuple[int, int]] = set()
        norm: list[tuple[int, int]] = []
        for e in edges:
            a, b = (int(x) for x in e)
            if not (0 <= a < n and 0 <= b < n):
                raise GraphError(f"edge ({a}, {b}) names a vertex outside 0..{n - 1}")
            if a == b:
                raise GraphError(f"self-loop at vertex {a}")
            key = (a, b) if directed else (min(a, b), max(a, b))
            if key in seen:
                raise GraphError(f"duplicate edge {key}")
            seen.add(key)
            norm.append(key)
        norm.sort()
        succ: list[list[int]] = [[] for _ in range(n)]
        pred: list[list[int]] = [[] for _ in range(n)]
        for a, b in norm:
            succ[a].append(b)
            pred[b].append(a)
            if not directed:
                succ[b].append(a)
                pred[a].append(b)
        self.orientation = orientation
        self.heights = heights
        self.edges = tuple(norm)
        self.labels = {int(k): str(v) for k, v in (labels or {}).items()}
        self.succ = tuple(tuple(sorted(s)) for s in succ)
        self.pred = tuple(tuple(sorted(p)) for p in pred)

    # -- construction helpers -------------------------------------------------

    def with_heights(self, heights: Sequence[int]) -> "GameGraph":
        """Copy with new heights, sharing the adjacency structure."""
        heights = tuple(heights)
        if len(heights) != len(self.heights):
            raise GraphError("height vector length differs from vertex count")
        if any(h < 0 for h in heights):
            raise GraphError("negative height")
        g = object.__new__(GameGraph)
        g.orientation = self.orientation
        g.heights = heights
        g.edges = self.edges
        g.labels = self.labels
        g.succ = self.succ
        g.pred = self.pred
        return g

    @property
    def n(self) -> int:
        return len(self.heights)

    @property
    def directed(self) -> bool:
        return self.orientation is Orientation.DIRECTED

    def alive(self, v: int) -> bool:
        return self.heights[v] > 0

    def live_vertices(self) -> list[int]:
        return [v for v, h in enumerate(self.heights) if h > 0]

    def live_edges(self) -> list[tuple[int, int]]:
        h = self.heights
        return [(a, b) for a, b in self.edges if h[a] and h[b]]

    def label(self, v: int) -> str:
        return self.labels.get(v, str(v))

    def vertex_by_label(self, name: str) -> int:
        for v, lab in self.labels.items():
            if lab == name:
                return v
        try:
            v = int(name)
        except ValueError:
            raise GraphError(f"no vertex labelled {name!r}") from None
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range")
        return v

    def neighbors(self, v: int, direction: Direction | str = Direction.SUCCESSORS) -> list[int]:
        """Live vertices adjacent to live vertex `v` in the requested sense."""
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range")
        if self.heights[v] == 0:
            raise GraphError(f"neighbor query on deleted vertex {v}")
        direction = Direction(direction)
        if not self.directed or direction is Direction.SUCCESSORS:
            adj = self.succ[v]
        elif direction is Direction.PREDECESSORS:
            adj = self.pred[v]
        else:
            adj = sorted(set(self.succ[v]) | set(self.pred[v]))
        h = self.heights
        return [w for w in adj if h[w]]

    def undirected_adjacency(self) -> list[list[int]]:
        """Live-vertex adjacency with direction ignored."""
        h = self.heights
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.edges:
            if h[a] and h[b]:
                adj[a].append(b)
                adj[b].append(a)
        return adj

    # -- equality and serialisation -------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GameGraph):
            return NotImplemented
        return (
            self.orientation == other.orientation
            and self.heights == other.heights
            and self.edges == other.edges
            and self.labels == other.labels
        )

    def __hash__(self) -> int:
        return hash((self.orientation, self.heights, self.edges))

    def __repr__(self) -> str:
        return f"GameGraph({self.orientation.value}, n={self.n}, edges={len(self.edges)})"

    def to_dict(self) -> dict:
        d: dict = {
            "orientation": self.orientation.value,
            "heights": list(self.heights),
            "edges": [list(e) for e in self.edges],
        }
        if self.labels:
            d["labels"] = {str(k): v for k, v in sorted(self.labels.items())}
        return d

    @classmethod
    def from_dict(cls, d: Mapping) -> "GameGraph":
        try:
            return cls(d["orientation"], d["heights"], d.get("edges", []), d.get("labels"))
        except KeyError as exc:
            raise GraphError(f"graph JSON is missing field {exc.args[0]!r}") from None
        except (TypeError, ValueError) as exc:
            if isinstance(exc, GraphError):
                raise
            raise GraphError(f"graph JSON is malformed: {exc}") from None


@dataclass(frozen=True)
class Bipartition:
    part_a: frozenset[int]
    part_b: frozenset[int]

    def violations(self, g: GameGraph) -> list[str]:
        """Reasons this is not a valid bipartition of the live part of `g`."""
        out = []
        both = self.part_a & self.part_b
        if both:
            out.append(f"vertices in both parts: {sorted(both)[:10]}")
        live = set(g.live_vertices())
        missing = live - self.part_a - self.part_b
        if missing:
            out.append(f"live vertices in neither part: {sorted(missing)[:10]}")
        for a, b in g.live_edges():
            if (a in self.part_a and b in self.part_a) or (a in self.part_b and b in self.part_b):
                out.append(f"edge ({a}, {b}) inside one part")
                if len(out) > 20:
                    break
        return out

    def is_valid(self, g: GameGraph) -> bool:
        return not self.violations(g)

    def side(self, v: int) -> str:
        return "A" if v in self.part_a else "B"


@dataclass(frozen=True)
class OddCycle:
    """Closed walk with an odd number of edges; `vertices[0]` is not repeated."""

    vertices: tuple[int, ...]

    def is_valid(self, g: GameGraph) -> bool:
        k = len(self.vertices)
        if k % 2 == 0 or k < 3:
            return False
        edges = set()
        for a, b in g.live_edges():
            edges.add((a, b))
            edges.add((b, a))
        return all(
            (self.vertices[i], self.vertices[(i + 1) % k]) in edges for i in range(k)
        )


def check_bipartite(g: GameGraph) -> Bipartition | OddCycle:
    """Two-colour the live graph, ignoring direction.

    Returns a Bipartition (lowest id of each component in part A) or an odd
    cycle found from a BFS tree.
    """
    adj = g.undirected_adjacency()
    colour: dict[int, int] = {}
    parent: dict[int, int] = {}
    depth: dict[int, int] = {}
    for root in g.live_vertices():
        if root in colour:
            continue
        colour[root] = 0
        parent[root] = -1
        depth[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in colour:
                    colour[y] = 1 - colour[x]
                    parent[y] = x
                    depth[y] = depth[x] + 1
                    queue.append(y)
                elif colour[y] == colour[x]:
                    return OddCycle(_tree_cycle(x, y, parent, depth))
    a = frozenset(v for v, c in colour.items() if c == 0)
    b = frozenset(v for v, c in colour.items() if c == 1)
    return Bipartition(a, b)


def _tree_cycle(x: int, y: int, parent: dict[int, int], depth: dict[int, int]) -> tuple[int, ...]:
    left, right = [x], [y]
    while depth[left[-1]] > depth[right[-1]]:
        left.append(parent[left[-1]])
    while depth[right[-1]] > depth[left[-1]]:
        right.append(parent[right[-1]])
    while left[-1] != right[-1]:
        left.append(parent[left[-1]])
        right.append(parent[right[-1]])
    right.pop()
    return tuple(left + right[::-1])


def is_bipartite(g: GameGraph) -> bool:
    return isinstance(check_bipartite(g), Bipartition)


def max_degree(g: GameGraph) -> tuple[int, int, int]:
    """(max in-degree, max out-degree, max total degree) over live vertices."""
    h = g.heights
    live = g.live_vertices()
    if not live:
        return (0, 0, 0)
    if not g.directed:
        d = max(sum(1 for w in g.succ[v] if h[w]) for v in live)
        return (d, d, d)
    ins = {v: sum(1 for w in g.pred[v] if h[w]) for v in live}
    outs = {v: sum(1 for w in g.succ[v] if h[w]) for v in live}
    return (max(ins.values()), max(outs.values()), max(ins[v] + outs[v] for v in live))


def components(g: GameGraph) -> list[list[int]]:
    """Connected components of the live graph, direction ignored."""
    adj = g.undirected_adjacency()
    seen: set[int] = set()
    out = []
    for root in g.live_vertices():
        if root in seen:
            continue
        seen.add(root)
        comp = [root]
        stack = [root]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        out.append(sorted(comp))
    return out


def is_connected(g: GameGraph) -> bool:
    return len(components(g)) <= 1
