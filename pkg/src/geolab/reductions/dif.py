"""Quantified 3-CNF into directed impartial Geography with free deletion.

Vertex ids are allocated variable gadget by variable gadget, then clause by
clause.

Odd x_i (existential) gets a hexagon: top -> left1 -> left2 -> bottom and
top -> right1 -> right2 -> bottom.  Whoever moves onto the bottom deletes
left2 (x_i true) or right2 (x_i false).  Even x_i (universal) gets a diamond
with a pendant: top -> left/right -> join -> bottom; deleting left means
true.  Gadgets are chained bottom -> next top, and the last bottom points
at every clause vertex.

A clause vertex points at two literal vertices per odd-variable occurrence,
and at one extra vertex per even-variable occurrence, which in turn points
at two literal vertices.  Literal vertices point back into the gadget at
the vertex whose survival makes the literal true.
"""
from __future__ import annotations

from ..engine import Variant
from ..qbf import QbfInstance
from .artifact import Builder, ReductionArtifact, Role, bipartition_from, qbf_position

ODD_SLOTS = ("top", "left1", "left2", "right1", "right2", "bottom")
EVEN_SLOTS = ("top", "left", "right", "join", "bottom")


def dif_sizes(q: QbfInstance) -> dict:
    gadget = sum(6 if i % 2 else 5 for i in range(1, q.n + 1))
    per_clause = [1 + sum(2 if abs(x) % 2 else 3 for x in c) for c in q.clauses]
    return {"variable": gadget, "clause": per_clause, "total": gadget + sum(per_clause)}


def literal_target(b: Builder, lit: int) -> int:
    """Gadget vertex that a literal vertex for `lit` points back to."""
    i = abs(lit)
    if i % 2:
        return b["variable", (i,), "left2" if lit > 0 else "right2"]
    return b["variable", (i,), "right" if lit > 0 else "left"]


def tqbf_to_dif(q: QbfInstance) -> ReductionArtifact:
    b = Builder("directed")
    for i in range(1, q.n + 1):
        idx = (i,)
        if i % 2:
            v = {s: b.add("variable", idx, s) for s in ODD_SLOTS}
            b.edge(v["top"], v["left1"])
            b.edge(v["left1"], v["left2"])
            b.edge(v["left2"], v["bottom"])
            b.edge(v["top"], v["right1"])
            b.edge(v["right1"], v["right2"])
            b.edge(v["right2"], v["bottom"])
        else:
            v = {s: b.add("variable", idx, s) for s in EVEN_SLOTS}
            b.edge(v["top"], v["left"])
            b.edge(v["top"], v["right"])
            b.edge(v["left"], v["join"])
            b.edge(v["right"], v["join"])
            b.edge(v["join"], v["bottom"])
        if i > 1:
            b.edge(b["variable", (i - 1,), "bottom"], v["top"])
    last = b["variable", (q.n,), "bottom"]
    for j, clause in enumerate(q.clauses, 1):
        c = b.add("clause", (j,), "clause")
        b.edge(last, c)
        for k, lit in enumerate(clause, 1):
            target = literal_target(b, lit)
            head = c
            if abs(lit) % 2 == 0:
                head = b.add("clause", (j,), f"extra{k}")
                b.edge(c, head)
            for copy in ("a", "b"):
                x = b.add("clause", (j,), f"lit{k}{copy}")
                b.edge(head, x)
                b.edge(x, target)
    pos = qbf_position(b, Variant.parse("DIF"), (b["variable", (1,), "top"],))

    def side(r: Role) -> str:
        if r.gadget == "variable":
            if r.slot in ("top", "left2", "right2", "join"):
                return "A"
            return "B"
        if r.slot == "clause":
            return "A"
        if r.slot.startswith("extra"):
            return "B"
        # literal vertices: A for even-variable occurrences, B for odd ones
        k = int(r.slot[3])
        lit = q.clauses[r.index[0] - 1][k - 1]
        return "A" if abs(lit) % 2 == 0 else "B"

    bip = bipartition_from(b.roles, side)
    return ReductionArtifact("DIF", pos, tuple(b.roles), q, bip, dif_sizes(q))
