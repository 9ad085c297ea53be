"""Maximum-cardinality matching on general graphs.

Edmonds' blossom algorithm: grow an alternating BFS forest from one
exposed vertex at a time, shrinking odd cycles into their base vertex, until
an augmenting path is found or the search dies out.  O(V^3) overall, which
is plenty for game boards.

Only live vertices (height >= 1) take part; heights above 1 are ignored.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .graph import GameGraph


class MatchingError(ValueError):
    pass


@dataclass(frozen=True)
class Matching:
    edges: frozenset[tuple[int, int]]

    @classmethod
    def of(cls, edges: Iterable[tuple[int, int]]) -> "Matching":
        return cls(frozenset((min(a, b), max(a, b)) for a, b in edges))

    def __len__(self) -> int:
        return len(self.edges)

    def mate(self, v: int) -> int | None:
        for a, b in self.edges:
            if a == v:
                return b
            if b == v:
                return a
        return None

    def covers(self, v: int) -> bool:
        return self.mate(v) is not None

    def violations(self, g: GameGraph) -> list[str]:
        out = []
        seen: set[int] = set()
        live = set(g.live_edges())
        for a, b in sorted(self.edges):
            if (a, b) not in live:
                out.append(f"({a}, {b}) is not a live edge")
            for x in (a, b):
                if x in seen:
                    out.append(f"vertex {x} is matched twice")
                seen.add(x)
        return out


def _adjacency(g: GameGraph) -> list[list[int]]:
    if g.directed:
        raise MatchingError("matchings are defined on undirected graphs only")
    return g.undirected_adjacency()


def _blossom_matching(n: int, adj: list[list[int]], order: list[int]) -> list[int]:
    match = [-1] * n
    # Greedy start; the augmenting phase fixes any suboptimal choices.
    for v in order:
        if match[v] == -1:
            for w in adj[v]:
                if match[w] == -1:
                    match[v] = w
                    match[w] = v
                    break

    base = list(range(n))
    parent = [-1] * n

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def mark(v: int, b: int, child: int, in_blossom: list[bool]) -> None:
        while base[v] != b:
            in_blossom[base[v]] = True
            in_blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def find_path(root: int) -> int:
        for i in range(n):
            base[i] = i
            parent[i] = -1
        used = [False] * n
        used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    b = lca(v, to)
                    in_blossom = [False] * n
                    mark(v, b, to, in_blossom)
                    mark(to, b, v, in_blossom)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = b
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to
                    used[match[to]] = True
                    queue.append(match[to])
        return -1

    for root in order:
        if match[root] != -1 or not adj[root]:
            continue
        end = find_path(root)
        while end != -1:
            pv = parent[end]
            nxt = match[pv]
            match[end] = pv
            match[pv] = end
            end = nxt
    return match


def maximum_matching(g: GameGraph, seed: int | None = None) -> Matching:
    """A maximum matching of the live graph.

    With `seed` set, vertex and neighbor orders are shuffled first, which can
    change *which* maximum matching comes back but never its size.
    """
    adj = _adjacency(g)
    order = g.live_vertices()
    if seed is not None:
        rng = random.Random(seed)
        rng.shuffle(order)
        adj = [rng.sample(a, len(a)) for a in adj]
    match = _blossom_matching(g.n, adj, order)
    return Matching.of((v, w) for v, w in enumerate(match) if w > v)


def matching_number(g: GameGraph) -> int:
    return len(maximum_matching(g))


def is_essential(g: GameGraph, v: int) -> bool:
    """True iff every maximum matching covers `v`."""
    if g.heights[v] == 0:
        raise MatchingError(f"vertex {v} is deleted")
    full = matching_number(g)
    heights = list(g.heights)
    heights[v] = 0
    return matching_number(g.with_heights(heights)) < full


@dataclass(frozen=True)
class UnionComponent:
    kind: str  # "path" or "cycle"
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    shared: int  # edges present in both matchings

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def in_difference(self) -> bool:
        return self.shared < len(self.edges)


def union_components(m1: Matching, m2: Matching) -> list[UnionComponent]:
    """Components of the union of two matchings, duplicate edges collapsed.

    Every vertex has degree at most 2 in the union, so each component is a
    path or a cycle.
    """
    edges = sorted(m1.edges | m2.edges)
    both = m1.edges & m2.edges
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in edges:
        for x in e:
            adj.setdefault(x, []).append(e)
    seen: set[int] = set()
    out = []
    for start in sorted(adj):
        if start in seen:
            continue
        seen.add(start)
        verts, comp_edges = [start], set()
        stack = [start]
        while stack:
            x = stack.pop()
            for e in adj[x]:
                comp_edges.add(e)
                y = e[0] if e[1] == x else e[1]
                if y not in seen:
                    seen.add(y)
                    verts.append(y)
                    stack.append(y)
        kind = "cycle" if len(comp_edges) == len(verts) else "path"
        out.append(
            UnionComponent(
                kind, tuple(sorted(verts)), tuple(sorted(comp_edges)), len(comp_edges & both)
            )
        )
    return out
