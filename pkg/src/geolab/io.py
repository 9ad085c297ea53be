"""File formats: JSON positions and artifacts, QDIMACS formulas, DOT export."""
from __future__ import annotations

import json
from pathlib import Path

from .engine import Position
from .graph import GameGraph
from .reductions import ReductionArtifact

# fill colours by gadget family; anything else is drawn white
PALETTE = {
    "variable": "#9ecae1",
    "variable_path": "#c6dbef",
    "clause": "#fdae6b",
    "linker": "#c7e9c0",
    "delay": "#dadaeb",
    "clause_deletion": "#fcbba1",
    "escape": "#d9d9d9",
    "clause_connector": "#fee391",
    "selector": "#fdd49e",
    "selection": "#fdd49e",
    "exit": "#fb6a4a",
    "prize": "#ffd700",
    "win_path": "#74c476",
    "meta": "#9ecae1",
    "copy": "#9ecae1",
}


class FormatError(ValueError):
    """Input file could not be read as the expected format."""


def read_json(path: str | Path) -> dict:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def load_position(path: str | Path) -> Position:
    """A position JSON, or the position of an artifact JSON."""
    return Position.from_dict(read_json(path))


def load_artifact(path: str | Path) -> ReductionArtifact:
    return ReductionArtifact.from_dict(read_json(path))


def write_json(path: str | Path, data: dict) -> None:
    Path(path).write_text(json.dumps(data, indent=1) + "\n")


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def to_dot(p: Position | ReductionArtifact, name: str = "geography") -> str:
    """Graphviz source.  Vertices are labelled `name:height`; tokens are drawn as
    thick outlines (blue for Left, red for Right, black for the impartial
    token); artifact vertices are filled by gadget family."""
    art = p if isinstance(p, ReductionArtifact) else None
    pos = art.position if art else p
    g: GameGraph = pos.graph
    edge_op = "->" if g.directed else "--"
    lines = [f"{'digraph' if g.directed else 'graph'} {_quote(name)} {{", "  node [shape=circle, style=filled, fillcolor=white];"]
    owner = {}
    if pos.variant.partizan:
        owner = {pos.tokens[0]: ("L", "blue"), pos.tokens[1]: ("R", "red")}
    else:
        owner = {pos.tokens[0]: ("T", "black")}
    for v in range(g.n):
        if not g.heights[v]:
            continue
        text = f"{g.label(v)}:{g.heights[v]}"
        attrs = {}
        if art is not None:
            role = art.role(v)
            attrs["tooltip"] = str(role)
            attrs["fillcolor"] = PALETTE.get(role.gadget, "white")
        if v in owner:
            mark, colour = owner[v]
            text += f" [{mark}]"
            attrs["color"] = colour
            attrs["penwidth"] = "3"
        attrs["label"] = text
        body = ", ".join(f"{k}={_quote(val)}" for k, val in sorted(attrs.items()))
        lines.append(f"  {v} [{body}];")
    for a, b in g.live_edges():
        lines.append(f"  {a} {edge_op} {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
