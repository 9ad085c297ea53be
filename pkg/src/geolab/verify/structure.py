"""Structural checks on reduction artifacts, plus fault injection."""
from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass

from ..engine import Position
from ..graph import Bipartition, GameGraph, OddCycle, check_bipartite, is_bipartite, max_degree
from ..reductions import ReductionArtifact, Role
from ..reductions.dif import dif_sizes
from ..reductions.dpf import dpf_sizes
from ..reductions.upf import thirteen_cycle, upf_sizes
from ..reductions.upr import linker_length, upr_sizes
from .report import VerifyReport

EXPECTED_VARIANT = {"DIF": "DIF", "DPF": "DPF", "UPR": "UPR", "UPF": "UPF", "UIR4": "UIR4"}


class _Checks:
    def __init__(self, a: ReductionArtifact) -> None:
        self.a = a
        self.failures: list[str] = []

    def expect(self, ok: bool, msg: str) -> None:
        if not ok:
            self.failures.append(msg)

    def count(self, gadget: str, want: int, index=None, label: str | None = None) -> None:
        got = len(self.a.group(gadget, index))
        self.expect(got == want, f"{label or gadget}: {got} vertices, expected {want}")

    def side(self, v: int) -> str | None:
        bip = self.a.claimed_bipartition
        return None if bip is None else bip.side(v)

    def adjacent(self, x: int, y: int) -> bool:
        return y in self.a.graph.succ[x] or x in self.a.graph.succ[y]


def _path_groups(a: ReductionArtifact, gadget: str) -> dict[tuple, list[int]]:
    out: dict[tuple, list[int]] = {}
    for v, r in enumerate(a.roles):
        if r.gadget == gadget and r.slot.isdigit():
            out.setdefault(r.index, []).append(v)
    return out


def _bipartition(c: _Checks) -> None:
    a = c.a
    bip = a.claimed_bipartition
    if bip is None:
        c.failures.append(f"{a.kind} artifact carries no claimed bipartition")
        return
    for problem in bip.violations(a.graph):
        c.failures.append(f"claimed bipartition: {problem}")
    c.expect(is_bipartite(a.graph), "graph is not bipartite")


def _check_dif(c: _Checks) -> None:
    a, q = c.a, c.a.source
    sizes = dif_sizes(q)
    c.expect(a.graph.n == sizes["total"], f"{a.graph.n} vertices, expected {sizes['total']}")
    for j, want in enumerate(sizes["clause"], 1):
        c.count("clause", want, (j,), f"clause gadget {j}")
    _bipartition(c)
    if a.claimed_bipartition is None:
        return
    for i in range(1, q.n + 1):
        c.expect(c.side(a.vertex("variable", (i,), "top")) == "A", f"top of x{i} should be in A")
        c.expect(c.side(a.vertex("variable", (i,), "bottom")) == "B", f"bottom of x{i} should be in B")
    for j in range(1, q.m + 1):
        c.expect(c.side(a.vertex("clause", (j,), "clause")) == "A", f"clause {j} should be in A")


def _check_dpf(c: _Checks) -> None:
    a, q = c.a, c.a.source
    n, m = q.n, q.m
    sizes = dpf_sizes(n, m)
    c.expect(a.sizes == sizes, f"recorded sizes {a.sizes} differ from {sizes}")
    for g in ("delay", "clause_deletion", "escape"):
        c.count(g, sizes[g])
    c.count("clause", m)
    for idx, path in _path_groups(a, "linker").items():
        c.expect(len(path) == sizes["linker_path"], f"linker {idx}: path of {len(path)}, expected {sizes['linker_path']}")
    c.expect(len(a.group("linker")) == 3 * m * (sizes["linker_path"] + 2), "linker vertex total")
    _bipartition(c)
    if a.claimed_bipartition is None:
        return
    # 2m-3 is odd, so the last delay vertex is in B, opposite the clauses
    c.expect(c.side(a.vertex("delay", (), 2 * m - 3)) == "B", "last delay vertex should be in B")
    for k in range(1, 2 * m - 2, 2):
        c.expect(c.side(a.vertex("clause_deletion", (), k)) == "B", f"deletion vertex {k} should be in B")
    # m-3 is odd, so the vertex before the two linker ends is in B
    for idx, path in _path_groups(a, "linker").items():
        c.expect(c.side(path[-1]) == "B", f"linker {idx}: last path vertex should be in B")
    c.expect(c.side(a.position.tokens[0]) == "A" and c.side(a.position.tokens[1]) == "A", "tokens start on tops in A")


def _check_upr(c: _Checks) -> None:
    a, q = c.a, c.a.source
    n, m = q.n, q.m
    sizes = upr_sizes(n, m)
    c.expect(a.sizes == sizes, f"recorded sizes {a.sizes} differ from {sizes}")
    c.count("delay", sizes["delay_part"], (1,), "delay part I")
    c.count("delay", sizes["delay_part"], (2,), "delay part II")
    c.count("selector", sizes["selectors"])
    c.count("clause", m)
    c.count("exit", 1)
    c.count("escape", sizes["escape"])
    for idx, path in _path_groups(a, "clause_connector").items():
        c.expect(len(path) == sizes["connector"], f"connector {idx}: {len(path)} vertices")
    c.expect(len(_path_groups(a, "clause_connector")) == m, "one connector per clause")
    linkers = _path_groups(a, "linker")
    c.expect(len(linkers) == 6 * m, f"{len(linkers)} linkers, expected {6 * m}")
    for idx, path in linkers.items():
        c.expect(len(path) == linker_length(n, abs(idx[2])), f"linker {idx}: {len(path)} vertices")
    present = {lit for cl in q.clauses for lit in cl}
    c.expect(all(l in present for i in range(1, n + 1) for l in (i, -i)), "some literal never appears")
    g = a.graph
    bottom_n = a.vertex("variable", (n,), "bottom")
    for j in range(1, m + 1):
        c.expect(c.adjacent(a.vertex("clause", (j,), "clause"), bottom_n), f"clause {j} not adjacent to bottom of x{n}")
    _bipartition(c)
    if a.claimed_bipartition is None:
        return
    # n+4 is even: the connector vertex next to a clause is in B
    for idx, path in _path_groups(a, "clause_connector").items():
        c.expect(c.side(path[0]) == "A" and c.side(path[-1]) == "B", f"connector {idx} parity")
    for idx, path in linkers.items():
        var = abs(idx[2])
        end = path[-1]
        # n+2 is even (left-linkers end in A); n+7 is odd (right-linkers end in B)
        want = "A" if var % 2 else "B"
        c.expect(c.side(end) == want, f"linker {idx}: last vertex should be in {want}")
        target = [w for w in g.succ[end] if a.role(w).gadget == "variable"]
        c.expect(len(target) == 1 and c.side(target[0]) != want, f"linker {idx}: variable end parity")
    left, right = a.position.tokens
    c.expect(c.side(left) == "A" and c.side(right) == "B", "Left must start in A and Right in B")


def _check_upf(c: _Checks) -> None:
    a, q = c.a, c.a.source
    n, m = q.n, q.m
    sizes = upf_sizes(n, m)
    c.count("delay", sizes["delay"])
    c.count("escape", sizes["escape"])
    c.count("clause", m)
    c.count("prize", 1)
    paths = _path_groups(a, "clause_deletion")
    c.expect(len(paths) == m, f"{len(paths)} clause-deletion paths, expected {m}")
    for idx, path in paths.items():
        c.expect(len(path) == sizes["deletion_path"], f"deletion path {idx}: {len(path)} vertices")
        hosted = []
        for slot, v in enumerate(path, 1):
            cl = [a.role(w).index[0] for w in a.graph.succ[v] if a.role(w).gadget == "clause"]
            if slot in (1, 2, len(path) - 1, len(path)):
                c.expect(not cl, f"deletion path {idx} slot {slot} must not touch a clause")
            hosted += cl
        want = [j for j in range(1, m + 1) if j != idx[0]]
        c.expect(hosted == want, f"deletion path {idx} hosts clauses {hosted}, expected {want}")
    for idx, path in _path_groups(a, "clause_connector").items():
        c.expect(len(path) == sizes["connector"], f"connector {idx}: {len(path)} vertices")
    linkers = _path_groups(a, "linker")
    c.expect(len(linkers) == 3 * m, f"{len(linkers)} linkers, expected {3 * m}")
    for idx, path in linkers.items():
        c.expect(len(path) == sizes["linker"], f"linker {idx}: {len(path)} vertices")
    h = a.graph.heights
    win = sum(1 for v in a.group("win_path") if h[v])
    rest = len(a.graph.live_vertices()) - win
    c.expect(win == rest + 2, f"win path has {win} vertices; the rest of the graph has {rest}, needs exactly 2 fewer")
    prize = a.vertex("prize")
    c.expect(c.adjacent(prize, a.vertex("escape", (), 3)), "PRIZE must touch escape vertex 3")
    c.expect(c.adjacent(prize, a.vertex("delay", (), m + 7)), f"PRIZE must touch delay vertex {m + 7}")
    if n >= 2:
        cyc = OddCycle(tuple(thirteen_cycle(a)))
        c.expect(len(cyc.vertices) == 13 and cyc.is_valid(a.graph), "13-cycle witness through x1/x2 is not a cycle")
    c.expect(not is_bipartite(a.graph), "UPF graph should contain an odd cycle")
    c.expect(a.claimed_bipartition is None, "UPF artifacts claim no bipartition")


def _check_uir4(c: _Checks) -> None:
    a, src = c.a, c.a.source
    g = src.graph
    c.expect(a.graph.n == 5 * g.n, f"{a.graph.n} vertices, expected {5 * g.n}")
    live = [v for v in range(g.n) if g.heights[v]]
    intra = sum(4 for _ in live)
    cross = sum(1 for x, y in g.edges if g.heights[x] and g.heights[y])
    c.expect(len(a.graph.live_edges()) == intra + cross, "edge count differs from 4 per vertex plus one per arc")
    for v in live:
        hs = [a.graph.heights[5 * v + i] for i in range(5)]
        c.expect(hs == [2, 4, 3, 1, 1], f"meta-vertex {v} heights {hs}")
    src_bip = is_bipartite(g)
    if src_bip:
        _bipartition(c)
    else:
        c.expect(a.claimed_bipartition is None, "non-bipartite source must not claim a bipartition")
    ins, outs, _ = max_degree(g)
    if src_bip and ins <= 2 and outs <= 2 and max_degree(g)[2] <= 3:
        c.expect(max_degree(a.graph)[2] <= 3, f"max degree {max_degree(a.graph)[2]} exceeds 3")


def _check_s2to1(c: _Checks) -> None:
    a, src = c.a, c.a.source
    g = src.graph
    c.expect(a.graph.n == sum(g.heights), f"{a.graph.n} copies for total height {sum(g.heights)}")
    c.expect(max(a.graph.heights, default=0) <= 1, "copies must have height 1")
    if is_bipartite(g):
        _bipartition(c)
    else:
        c.expect(isinstance(check_bipartite(a.graph), OddCycle), "odd-cycle source must give an odd-cycle output")


def _check_u2d(c: _Checks) -> None:
    a, src = c.a, c.a.source
    c.expect(a.graph.heights == src.graph.heights, "heights changed")
    c.expect(len(a.graph.edges) == 2 * len(src.graph.edges), "each edge must become two arcs")


_CHECKS = {
    "DIF": _check_dif,
    "DPF": _check_dpf,
    "UPR": _check_upr,
    "UPF": _check_upf,
    "UIR4": _check_uir4,
    "S2TO1": _check_s2to1,
    "U2D": _check_u2d,
}


def verify_structure(a: ReductionArtifact) -> VerifyReport:
    start = time.perf_counter()
    c = _Checks(a)
    want = EXPECTED_VARIANT.get(a.kind)
    if want is not None:
        c.expect(a.variant.code == want, f"variant {a.variant.code}, expected {want}")
    c.expect(len(a.roles) == a.graph.n, "every vertex needs one role")
    try:
        _CHECKS[a.kind](c)
    except KeyError as exc:
        c.failures.append(f"missing vertex role {exc}")
    rep = VerifyReport(a.kind, instances_run=1, structural_failures=c.failures)
    rep.count(a.kind, "instances")
    rep.seconds = time.perf_counter() - start
    return rep


# Fault injection


def _rebuild(a: ReductionArtifact, g: GameGraph, roles=None) -> ReductionArtifact:
    p = a.position
    pos = Position(g, p.variant, p.tokens, p.to_move)
    return ReductionArtifact(a.kind, pos, tuple(roles or a.roles), a.source, a.claimed_bipartition, dict(a.sizes))


def drop_edge(a: ReductionArtifact, edge: tuple[int, int]) -> ReductionArtifact:
    g = a.graph
    e = tuple(edge) if g.directed else tuple(sorted(edge))
    edges = [x for x in g.edges if x != e]
    if len(edges) == len(g.edges):
        raise ValueError(f"{edge} is not an edge")
    return _rebuild(a, GameGraph(g.orientation, g.heights, edges, g.labels))


def role_edges(a: ReductionArtifact, gadgets=("variable",)) -> list[tuple[Role, Role]]:
    """Edges with both ends in the given gadget families, named by role."""
    return [
        (a.role(x), a.role(y))
        for x, y in a.graph.edges
        if a.role(x).gadget in gadgets and a.role(y).gadget in gadgets
    ]


@dataclass(frozen=True)
class DropRoleEdge:
    """Picklable mutation: remove the edge between two named roles, if the
    artifact has it."""

    tail: str
    head: str

    def __call__(self, a: ReductionArtifact) -> ReductionArtifact:
        x = a.find(*_role_key(self.tail))
        y = a.find(*_role_key(self.head))
        if x is None or y is None:
            return a
        try:
            return drop_edge(a, (x, y))
        except ValueError:
            return a


def _role_key(text: str) -> tuple:
    r = Role.parse(text)
    return r.gadget, r.index, r.slot


def shorten_path(a: ReductionArtifact, gadget: str) -> ReductionArtifact:
    """Delete the last vertex of a path gadget (sets its height to 0)."""
    vs = a.group(gadget)
    if not vs:
        raise ValueError(f"no {gadget} vertices")
    h = list(a.graph.heights)
    h[vs[-1]] = 0
    return _rebuild(a, a.graph.with_heights(h))
