"""Quantified 3-CNF into undirected partizan Geography with free deletion.

Each variable x_i gets an 8-cycle (the diamond) and a separate 5-vertex
path.  The diamond runs top, top_left, left, bottom_left, bottom,
bottom_right, right, top_right.  Travelling down the left side deletes the
left vertex and sets x_i true, which leaves the right vertex (where positive
literals link back) standing.  Gadgets are wired bottom_i - path(i+1):1,
path(i):4 - top_{i+1} and bottom_i - path(i):5, so the two players swap
between diamond and path every round.  This produces 13-cycles, and the
graph is not bipartite.

The bottom of the x_n diamond is the top of the clause selection gadget.
From there m clause-deletion paths of m+3 vertices lead to a selection
bottom vertex.  Slots 3..m+1 of path p touch the clause vertices
{1..m} minus {p} in ascending order.  A delay path of m+9 vertices hangs off
path(n):4.  Its last vertex starts a clause connector of m vertices to every
clause.  Every literal occurrence has one linker of m+3 vertices, running
from the clause to the right vertex (positive) or left vertex (negated) of
its diamond.  An escape path of 8m+7 vertices leaves the selection bottom.
PRIZE touches escape vertex 3 and delay vertex m+7.  The win path starts
next to PRIZE and every path(i):5.  It is two longer than the rest of the
graph, so whoever steps onto it wins.

Ids: per variable the 8 diamond vertices (x_n's bottom doubles as the
selection top) and then its 5 path vertices, clause vertices, selection
bottom, deletion paths, delay path, connectors, linkers, escape path, PRIZE
and win path.
"""
from __future__ import annotations

from ..engine import Variant
from ..qbf import QbfInstance
from .artifact import Builder, ReductionArtifact, qbf_position

DIAMOND = ("top", "top_left", "left", "bottom_left", "bottom", "bottom_right", "right", "top_right")


def upf_sizes(n: int, m: int) -> dict:
    other = (
        13 * n
        + m  # clause vertices
        + 1  # selection bottom
        + m * (m + 3)  # deletion paths
        + (m + 9)
        + m * m  # connectors
        + 3 * m * (m + 3)  # linkers
        + (8 * m + 7)
        + 1  # PRIZE
    )
    return {
        "deletion_path": m + 3,
        "delay": m + 9,
        "connector": m,
        "linker": m + 3,
        "escape": 8 * m + 7,
        "non_win": other,
        "win_path": other + 2,
    }


def deletion_slots(m: int, p: int) -> dict[int, int]:
    """Slot -> clause index along clause-deletion path p."""
    others = [j for j in range(1, m + 1) if j != p]
    slots = range(3, m + 2)
    if len(others) != len(slots):
        raise ValueError(f"cannot place {len(others)} clauses on {len(slots)} interior slots (m={m})")
    return dict(zip(slots, others))


def tqbf_to_upf(q: QbfInstance, win_length: int | None = None) -> ReductionArtifact:
    """`win_length` overrides the win path length; only fault injection uses it."""
    n, m = q.n, q.m
    if m < 3:
        raise ValueError(f"UPF needs at least 3 clauses, got {m} (pad with normalize_for)")
    sizes = upf_sizes(n, m)
    b = Builder("undirected")
    for i in range(1, n + 1):
        d = [b.add("variable", (i,), s) for s in DIAMOND]
        for x, y in zip(d, d[1:] + d[:1]):
            b.edge(x, y)
        path = b.path("variable_path", (i,), 5)
        b.edge(d[4], path[4])
        if i > 1:
            b.edge(b["variable", (i - 1,), "bottom"], path[0])
            b.edge(b["variable_path", (i - 1,), "4"], d[0])

    sel_top = b["variable", (n,), "bottom"]
    clauses = [b.add("clause", (j,), "clause") for j in range(1, m + 1)]
    sel_bottom = b.add("selection", (), "bottom")
    for p in range(1, m + 1):
        path = b.path("clause_deletion", (p,), sizes["deletion_path"])
        b.edge(sel_top, path[0])
        b.edge(path[-1], sel_bottom)
        for slot, j in deletion_slots(m, p).items():
            b.edge(path[slot - 1], clauses[j - 1])

    delay = b.path("delay", (), sizes["delay"])
    b.edge(b["variable_path", (n,), "4"], delay[0])
    for j, c in enumerate(clauses, 1):
        path = b.path("clause_connector", (j,), sizes["connector"])
        b.edge(delay[-1], path[0])
        b.edge(path[-1], c)

    for j, clause in enumerate(q.clauses, 1):
        for k, lit in enumerate(clause, 1):
            target = b["variable", (abs(lit),), "right" if lit > 0 else "left"]
            path = b.path("linker", (j, k, lit), sizes["linker"])
            b.edge(clauses[j - 1], path[0])
            b.edge(path[-1], target)

    escape = b.path("escape", (), sizes["escape"])
    b.edge(sel_bottom, escape[0])
    prize = b.add("prize")
    b.edge(prize, escape[2])
    b.edge(prize, delay[m + 6])

    win = b.path("win_path", (), sizes["win_path"] if win_length is None else win_length)
    b.edge(prize, win[0])
    for i in range(1, n + 1):
        b.edge(b["variable_path", (i,), "5"], win[0])

    tokens = (b["variable", (1,), "top"], b["variable_path", (1,), "1"])
    pos = qbf_position(b, Variant.parse("UPF"), tokens)
    return ReductionArtifact("UPF", pos, tuple(b.roles), q, None, sizes)


def thirteen_cycle(a: ReductionArtifact, i: int = 1) -> list[int]:
    """Odd cycle through the gadgets of x_i and x_{i+1}."""
    v = a.vertex
    return [
        v("variable", (i + 1,), "top"),
        v("variable_path", (i,), "4"),
        v("variable_path", (i,), "5"),
        v("variable", (i,), "bottom"),
        *(v("variable_path", (i + 1,), str(s)) for s in range(1, 6)),
        v("variable", (i + 1,), "bottom"),
        v("variable", (i + 1,), "bottom_right"),
        v("variable", (i + 1,), "right"),
        v("variable", (i + 1,), "top_right"),
    ]
