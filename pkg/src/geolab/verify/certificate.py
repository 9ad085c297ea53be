"""Race certificates for undirected partizan positions.

A certificate is a plan of regular moves that wins no matter what the
opponent does.  It has two parts: a path S that walls the opponent off,
followed by an extension through territory the opponent can never touch.
If the opponent's component after removing S has c vertices, the opponent
has at most c - 1 moves left.  The plan wins whenever |S| + extension > c - 1,
because the planner moves first.

S is safe when the opponent can neither stand on nor (under free deletion)
delete any vertex of S before the planner gets there.  The opponent's route
to the first such vertex cannot pass through any other vertex of S, so one
breadth-first search in G - S - {planner} bounds every arrival time.
"""
from __future__ import annotations

from collections import deque

from ..engine import Move, Position

INF = 1 << 30


def _bfs(adj, live, start: int, blocked: set[int]) -> dict[int, int]:
    dist = {start: 0}
    dq = deque([start])
    while dq:
        x = dq.popleft()
        dx = dist[x] + 1
        for y in adj[x]:
            if y not in dist and live[y] and y not in blocked:
                dist[y] = dx
                dq.append(y)
    return dist


def _articulation_sizes(adj, live, root: int, blocked: set[int]) -> tuple[dict[int, int], int]:
    """For every cut vertex a of root's component (root excluded), the size of
    root's side once a is removed."""
    disc: dict[int, int] = {root: 0}
    low: dict[int, int] = {root: 0}
    size: dict[int, int] = {root: 1}
    cut_off: dict[int, int] = {}
    stack = [(root, -1, iter(adj[root]))]
    t = 1
    while stack:
        x, parent, it = stack[-1]
        advanced = False
        for y in it:
            if not live[y] or y in blocked or y == parent:
                continue
            if y in disc:
                low[x] = min(low[x], disc[y])
            else:
                disc[y] = low[y] = t
                size[y] = 1
                t += 1
                stack.append((y, x, iter(adj[y])))
                advanced = True
                break
        if advanced:
            continue
        stack.pop()
        if parent >= 0:
            low[parent] = min(low[parent], low[x])
            size[parent] += size[x]
            if parent != root and low[x] >= disc[parent]:
                cut_off[parent] = cut_off.get(parent, 0) + size[x]
    total = size[root]
    return {a: total - 1 - cut for a, cut in cut_off.items()}, total


def _extension(adj, region: set[int], start: int) -> list[int]:
    """Greedy long path from `start` through `region` (fewest onward exits first)."""
    path: list[int] = []
    seen = {start}
    x = start
    while True:
        best, best_deg = None, INF
        for y in adj[x]:
            if y in region and y not in seen:
                d = sum(1 for z in adj[y] if z in region and z not in seen and z != y)
                if d < best_deg or (d == best_deg and y < best):
                    best, best_deg = y, d
        if best is None:
            return path
        seen.add(best)
        path.append(best)
        x = best


def race_certificate(p: Position, max_candidates: int = 24) -> list[Move] | None:
    """A provably winning plan of regular moves for the player to move, or None."""
    var = p.variant
    g = p.graph
    if not var.partizan or g.directed or max(g.heights, default=0) > 1:
        return None
    live = [h > 0 for h in g.heights]
    adj = g.succ
    me = p.token
    op = p.tokens[1 - p.active_index]
    free = not var.restricted
    live_count = sum(live)

    to_me = _bfs(adj, live, me, {op})
    parent: dict[int, int] = {}
    for x in to_me:
        if x == me:
            continue
        for y in adj[x]:
            if to_me.get(y) == to_me[x] - 1 and y != op:
                parent[x] = y
                break
    cuts, _ = _articulation_sizes(adj, live, op, {me})
    ranked = sorted((u, to_me[a], a) for a, u in cuts.items() if a in to_me)
    candidates: list[int | None] = [None] + [a for _, _, a in ranked[:max_candidates]]

    for a in candidates:
        S: list[int] = []
        x = a
        while x is not None and x != me:
            S.append(x)
            x = parent.get(x)
        S.reverse()
        blocked = set(S) | {me}
        opp = _bfs(adj, live, op, blocked)
        U = len(opp) - 1
        if len(S) + (live_count - len(opp) - len(blocked)) <= U:
            continue
        if not _safe(adj, S, opp, free):
            continue
        region = {v for v in range(g.n) if live[v] and v not in opp and v not in blocked}
        if free:
            region -= {y for x in opp for y in adj[x]}
        ext = _extension(adj, region, S[-1] if S else me)
        if len(S) + len(ext) > U:
            plan, x = [], me
            for y in S + ext:
                plan.append(Move(x, y, x))
                x = y
            return plan
    return None


def _safe(adj, S: list[int], opp: dict[int, int], free: bool) -> bool:
    for i, s in enumerate(S, 1):
        if s in opp:
            return False
        if i == 1:
            continue
        near = min((opp[y] for y in adj[s] if y in opp), default=INF)
        # restricted: the opponent could stand on s after near + 1 moves;
        # free: he could delete s on the move that reaches a neighbour
        if (near < i) if free else (near + 1 < i):
            return False
    return True
