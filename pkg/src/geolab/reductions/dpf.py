"""Quantified 3-CNF into directed partizan Geography with free deletion.

Every variable gets a diamond top -> left/right -> bottom.  Left's token
walks the odd diamonds and Right's the even ones: the bottom of x_i is the
top of x_{i+2}.  Moving onto a bottom, the mover deletes the left vertex to
set x_i true or the right vertex to set it false.

After the diamonds, Left runs down a delay path of 2m-3 vertices whose end
points at every clause vertex, while Right runs down a clause-deletion path
of the same length; every clause vertex points at each odd-numbered
deletion vertex, so Right deletes one clause per move there and finally
leaves one clause standing before entering an escape path of m-1 vertices.
Each literal occurrence hangs a linker off its clause: a path of m-3
vertices ending in two parallel vertices that point at the right (positive)
or left (negative) vertex of the variable's diamond.

Ids: diamonds for x_1..x_n (top allocated only for x_1, x_2), delay path,
deletion path, escape path, then each clause followed by its linkers.
"""
from __future__ import annotations

from ..engine import Variant
from ..qbf import QbfInstance
from .artifact import Builder, ReductionArtifact, Role, bipartition_from, qbf_position


def dpf_sizes(n: int, m: int) -> dict:
    return {"delay": 2 * m - 3, "clause_deletion": 2 * m - 3, "escape": m - 1, "linker_path": m - 3}


def diamond_top(b: Builder, i: int) -> int:
    if i <= 2:
        return b["variable", (i,), "top"]
    return b["variable", (i - 2,), "bottom"]


def tqbf_to_dpf(q: QbfInstance) -> ReductionArtifact:
    n, m = q.n, q.m
    if m < 4:
        raise ValueError(f"DPF needs at least 4 clauses, got {m} (pad with normalize_for)")
    if m % 2:
        raise ValueError(f"DPF needs an even clause count, got {m} (pad with normalize_for)")
    sizes = dpf_sizes(n, m)
    b = Builder("directed")
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
    delay = b.path("delay", (), sizes["delay"])
    deletion = b.path("clause_deletion", (), sizes["clause_deletion"])
    escape = b.path("escape", (), sizes["escape"])
    b.edge(b["variable", (n - 1,), "bottom"], delay[0])
    b.edge(b["variable", (n,), "bottom"], deletion[0])
    b.edge(deletion[-1], escape[0])
    for j, clause in enumerate(q.clauses, 1):
        c = b.add("clause", (j,), "clause")
        b.edge(delay[-1], c)
        for k in range(0, len(deletion), 2):
            b.edge(c, deletion[k])
        for k, lit in enumerate(clause, 1):
            idx = (j, k, lit)
            path = b.path("linker", idx, sizes["linker_path"])
            ends = [b.add("linker", idx, "a"), b.add("linker", idx, "b")]
            target = b["variable", (abs(lit),), "right" if lit > 0 else "left"]
            b.edge(c, path[0])
            for e in ends:
                b.edge(path[-1], e)
                b.edge(e, target)
    tokens = (diamond_top(b, 1), diamond_top(b, 2))
    pos = qbf_position(b, Variant.parse("DPF"), tokens)

    def side(r: Role) -> str:
        if r.gadget == "variable":
            return "A" if r.slot in ("top", "bottom") else "B"
        if r.gadget in ("delay", "clause_deletion"):
            return "A" if int(r.slot) % 2 == 0 else "B"
        if r.gadget == "escape":
            return "A" if int(r.slot) % 2 == 1 else "B"
        if r.gadget == "clause":
            return "A"
        if r.slot in ("a", "b"):
            return "A"
        return "B" if int(r.slot) % 2 == 1 else "A"

    bip = bipartition_from(b.roles, side)
    return ReductionArtifact("DPF", pos, tuple(b.roles), q, bip, sizes)
