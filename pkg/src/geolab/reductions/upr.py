"""Quantified 3-CNF into undirected partizan Geography with restricted
deletion, on a bipartite graph.

Variables are diamonds top - left/right - bottom.  Left's token walks the
odd diamonds and Right's the even ones, because the bottom of x_i is the top
of x_{i+2}.  Choosing the left vertex and leaving the right one standing
sets x_i true.

Below Right's chain is the clause selection gadget, a complete bipartite
graph between the m clause vertices and m-1 selector vertices.  Every clause
vertex touches the bottom of x_n, and every selector touches the first
escape vertex (a path of 3n+25).  Below Left's chain is the delay graph
K_{D,D} with D = m + n/2 + 5.  Part I touches the bottom of x_{n-1}, and so
does EXIT.  EXIT touches every Part II vertex and starts one clause
connector (n+4 inner vertices) per clause.  Each literal occurrence hangs
two parallel linkers off its clause vertex.  They run to the right vertex of
the diamond for a positive literal and to the left vertex for a negated one.
Linkers into odd diamonds have n+2 vertices and those into even ones n+7.

Ids: diamonds, clause vertices, selectors, Part I, Part II, EXIT,
connectors, linkers, escape path.  Path slots count from the clause end for
linkers and from the EXIT end for connectors.
"""
from __future__ import annotations

from ..engine import Variant
from ..qbf import QbfInstance
from .artifact import Builder, ReductionArtifact, Role, bipartition_from, qbf_position


def upr_sizes(n: int, m: int) -> dict:
    return {
        "delay_part": m + n // 2 + 5,
        "selectors": m - 1,
        "connector": n + 4,
        "left_linker": n + 2,
        "right_linker": n + 7,
        "escape": 3 * n + 25,
    }


def linker_length(n: int, var: int) -> int:
    return n + 2 if var % 2 else n + 7


def diamond_top(b: Builder, i: int) -> int:
    if i <= 2:
        return b["variable", (i,), "top"]
    return b["variable", (i - 2,), "bottom"]


def check_upr_input(q: QbfInstance) -> None:
    if q.n < 4:
        raise ValueError(f"UPR needs at least 4 variables, got {q.n} (pad with normalize_for)")
    if q.m < 2:
        raise ValueError(f"UPR needs at least 2 clauses, got {q.m} (pad with normalize_for)")
    present = {lit for c in q.clauses for lit in c}
    missing = [lit for i in range(1, q.n + 1) for lit in (i, -i) if lit not in present]
    if missing:
        raise ValueError(f"UPR needs every literal to appear; missing {missing} (pad with normalize_for)")


def tqbf_to_upr(q: QbfInstance) -> ReductionArtifact:
    check_upr_input(q)
    n, m = q.n, q.m
    sizes = upr_sizes(n, m)
    b = Builder("undirected")
    for i in range(1, n + 1):
        idx = (i,)
        if i <= 2:
            b.add("variable", idx, "top")
        top = diamond_top(b, i)
        left = b.add("variable", idx, "left")
        right = b.add("variable", idx, "right")
        bottom = b.add("variable", idx, "bottom")
        for x, y in ((top, left), (top, right), (left, bottom), (right, bottom)):
            b.edge(x, y)
    bottom_n = b["variable", (n,), "bottom"]
    bottom_n1 = b["variable", (n - 1,), "bottom"]

    clauses = [b.add("clause", (j,), "clause") for j in range(1, m + 1)]
    selectors = [b.add("selector", (k,)) for k in range(1, m)]
    for c in clauses:
        b.edge(c, bottom_n)
        for s in selectors:
            b.edge(c, s)

    part1 = [b.add("delay", (1,), str(k)) for k in range(1, sizes["delay_part"] + 1)]
    part2 = [b.add("delay", (2,), str(k)) for k in range(1, sizes["delay_part"] + 1)]
    for x in part1:
        b.edge(x, bottom_n1)
        for y in part2:
            b.edge(x, y)
    exit_ = b.add("exit")
    b.edge(exit_, bottom_n1)
    for y in part2:
        b.edge(exit_, y)

    for j, c in enumerate(clauses, 1):
        path = b.path("clause_connector", (j,), sizes["connector"])
        b.edge(exit_, path[0])
        b.edge(path[-1], c)

    for j, clause in enumerate(q.clauses, 1):
        c = clauses[j - 1]
        for k, lit in enumerate(clause, 1):
            target = b["variable", (abs(lit),), "right" if lit > 0 else "left"]
            for copy in (1, 2):
                path = b.path("linker", (j, k, lit, copy), linker_length(n, abs(lit)))
                b.edge(c, path[0])
                b.edge(path[-1], target)

    escape = b.path("escape", (), sizes["escape"])
    for s in selectors:
        b.edge(s, escape[0])

    tokens = (diamond_top(b, 1), diamond_top(b, 2))
    pos = qbf_position(b, Variant.parse("UPR"), tokens)
    bip = bipartition_from(b.roles, upr_side)
    return ReductionArtifact("UPR", pos, tuple(b.roles), q, bip, sizes)


def upr_side(r: Role) -> str:
    g = r.gadget
    if g == "variable":
        odd = r.index[0] % 2 == 1
        corner = r.slot in ("top", "bottom")
        return "A" if odd == corner else "B"
    if g == "delay":
        return "B" if r.index[0] == 1 else "A"
    if g == "exit" or g == "selector":
        return "B"
    if g == "clause":
        return "A"
    if g == "clause_connector" or g == "escape":
        return "A" if int(r.slot) % 2 == 1 else "B"
    if g == "linker":
        return "B" if int(r.slot) % 2 == 1 else "A"
    raise ValueError(f"no side for role {r}")
