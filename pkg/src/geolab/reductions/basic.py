"""Reductions between Geography variants: edge doubling, unstacking, and
classic Geography into stacked undirected Geography."""
from __future__ import annotations

from ..engine import Deletion, Partisanship, Position, Variant
from ..graph import Bipartition, GameGraph, Orientation, check_bipartite
from .artifact import Builder, ReductionArtifact, Role, bipartition_from

META_HEIGHTS = (2, 4, 3, 1, 1)


def undirect_to_direct(p: Position) -> ReductionArtifact:
    """Replace every edge by two opposite arcs.  Ids, heights, tokens and
    the player to move carry over unchanged."""
    g = p.graph
    if g.directed:
        raise ValueError("undirect_to_direct needs an undirected position")
    arcs = [(a, b) for a, b in g.edges] + [(b, a) for a, b in g.edges]
    out = GameGraph(Orientation.DIRECTED, g.heights, arcs, g.labels)
    var = p.variant
    variant = Variant(Orientation.DIRECTED, var.partisanship, var.deletion, var.max_height)
    roles = tuple(Role("vertex", (v,)) for v in range(g.n))
    return ReductionArtifact("U2D", Position(out, variant, p.tokens, p.to_move), roles, p)


def stack2_to_stack1(p: Position) -> ReductionArtifact:
    """Split each height-2 vertex into two height-1 twins.

    Live vertex v becomes v1 (and v2 when its height is 2); every adjacency
    v~w becomes all copy pairs.  A token on a height-2 vertex lands on the
    second copy.  Deleted vertices get no copies.
    """
    g = p.graph
    if max(g.heights, default=0) > 2 or p.variant.max_height > 2:
        raise ValueError("stack2_to_stack1 needs heights at most 2")
    b = Builder(g.orientation)
    copies: dict[int, list[int]] = {}
    for v in range(g.n):
        copies[v] = [b.add("copy", (v,), str(i)) for i in range(1, g.heights[v] + 1)]
    for x, y in g.edges:
        for cx in copies[x]:
            for cy in copies[y]:
                b.edge(cx, cy)
    tokens = tuple(copies[t][-1] for t in p.tokens)
    var = p.variant
    pos = Position(b.graph(), Variant(var.orientation, var.partisanship, var.deletion, 1), tokens, p.to_move)
    bip = None
    src = check_bipartite(g)
    if isinstance(src, Bipartition):
        bip = bipartition_from(b.roles, lambda r: src.side(r.index[0]))
    return ReductionArtifact("S2TO1", pos, tuple(b.roles), p, bip)


def geography_to_uir4(p: Position) -> ReductionArtifact:
    """Classic Geography into undirected stacked Geography with k = 4.

    Each vertex v becomes a path v1..v5 with heights 2,4,3,1,1 and each arc
    v->w becomes the edge v5-w1.  The token starts on t1.  Deleted input
    vertices keep their five slots, all at height 0, so ids stay 5v+slot-1.
    """
    var = p.variant
    if not (
        var.orientation is Orientation.DIRECTED
        and var.partisanship is Partisanship.IMPARTIAL
        and var.deletion is Deletion.RESTRICTED
        and var.max_height == 1
    ):
        raise ValueError(f"geography_to_uir4 needs a DIR position, got {var.code}")
    g = p.graph
    b = Builder(Orientation.UNDIRECTED)
    for v in range(g.n):
        alive = g.heights[v] > 0
        slots = [
            b.add("meta", (v,), str(i + 1), height=META_HEIGHTS[i] if alive else 0)
            for i in range(5)
        ]
        for x, y in zip(slots, slots[1:]):
            b.edge(x, y)
    for v, w in g.edges:
        b.edge(5 * v + 4, 5 * w)
    pos = Position(b.graph(), Variant.parse("UIR4"), (5 * p.tokens[0],), p.to_move)
    bip = None
    src = check_bipartite(g)
    if isinstance(src, Bipartition):
        flip = {"A": "B", "B": "A"}

        def side(r: Role) -> str:
            s = src.side(r.index[0]) if (g.heights[r.index[0]] > 0) else "A"
            return s if int(r.slot) % 2 == 1 else flip[s]

        bip = bipartition_from(b.roles, side)
        # Deleted meta-vertices are not part of the live graph.
        live = set(pos.graph.live_vertices())
        bip = Bipartition(bip.part_a & live, bip.part_b & live)
    return ReductionArtifact("UIR4", pos, tuple(b.roles), p, bip)
