"""Plain-text digraph files and DOT export.

Format (UTF-8, one directive per line, ``#`` starts a comment line)::

    name petersen-ish        # optional
    vertices 3
    label 0 alpha            # optional, one per vertex at most
    0 1
    1 2

Arcs are 0-based ``u v`` pairs. Serialisation is normalised: comments are
dropped, labels and arcs appear in ascending order, single spaces, and a
trailing newline.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from .digraph import Digraph


class GraphFormatError(ValueError):
    def __init__(self, line: int, reason: str) -> None:
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


@dataclass(frozen=True)
class GraphFile:
    graph: Digraph
    name: str | None = None
    labels: Mapping[int, str] = field(default_factory=dict)


def _int(token: str, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise GraphFormatError(lineno, f"expected an integer, got {token!r}") from None
    if value < 0:
        raise GraphFormatError(lineno, f"negative index {value}")
    return value


def parse_graph_file(text: str) -> GraphFile:
    name = None
    n = None
    labels: dict[int, str] = {}
    arcs: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "name":
            if n is not None or name is not None:
                raise GraphFormatError(lineno, "'name' must come once, before 'vertices'")
            if not rest:
                raise GraphFormatError(lineno, "empty name")
            name = rest
        elif head == "vertices":
            if n is not None:
                raise GraphFormatError(lineno, "duplicate 'vertices' header")
            n = _int(rest, lineno)
        elif head == "label":
            if n is None:
                raise GraphFormatError(lineno, "'label' before 'vertices'")
            idx_tok, _, text_part = rest.partition(" ")
            idx = _int(idx_tok, lineno)
            if idx >= n:
                raise GraphFormatError(lineno, f"label index {idx} out of range")
            if idx in labels:
                raise GraphFormatError(lineno, f"duplicate label for vertex {idx}")
            if not text_part.strip():
                raise GraphFormatError(lineno, "empty label")
            labels[idx] = text_part.strip()
        else:
            if n is None:
                raise GraphFormatError(lineno, "arc before 'vertices' header")
            tokens = line.split()
            if len(tokens) != 2:
                raise GraphFormatError(lineno, f"expected 'u v', got {line!r}")
            u, v = (_int(t, lineno) for t in tokens)
            if u >= n or v >= n:
                raise GraphFormatError(lineno, f"arc ({u}, {v}) out of range for {n} vertices")
            if (u, v) in arcs:
                raise GraphFormatError(lineno, f"duplicate arc ({u}, {v})")
            arcs.add((u, v))
    if n is None:
        raise GraphFormatError(0, "missing 'vertices' header")
    return GraphFile(Digraph(n, arcs), name, labels)


def parse_graph(text: str) -> Digraph:
    return parse_graph_file(text).graph


def serialize_graph(
    graph: Digraph,
    name: str | None = None,
    labels: Mapping[int, str] | None = None,
) -> str:
    lines = []
    if name:
        lines.append(f"name {name}")
    lines.append(f"vertices {graph.n}")
    for idx in sorted(labels or {}):
        lines.append(f"label {idx} {labels[idx]}")
    lines.extend(f"{u} {v}" for u, v in graph.sorted_arcs())
    return "\n".join(lines) + "\n"


def serialize_graph_file(gf: GraphFile) -> str:
    return serialize_graph(gf.graph, gf.name, gf.labels)


def read_graph(path: str | Path) -> GraphFile:
    return parse_graph_file(Path(path).read_text(encoding="utf-8"))


def write_graph(path: str | Path, graph: Digraph, name: str | None = None, labels=None) -> None:
    Path(path).write_text(serialize_graph(graph, name, labels), encoding="utf-8")


def to_dot(graph: Digraph, name: str = "G", annotations: Sequence[str] | None = None) -> str:
    out = [f'digraph "{name}" {{']
    for v in graph.vertices:
        if annotations is not None:
            out.append(f'  {v} [label="{v}\\n{annotations[v]}"];')
        else:
            out.append(f"  {v};")
    out.extend(f"  {u} -> {v};" for u, v in graph.sorted_arcs())
    out.append("}")
    return "\n".join(out) + "\n"
