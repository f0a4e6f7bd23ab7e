"""Serialization: JSON graphs, graph6 strings and Graphviz DOT."""

from __future__ import annotations

import json
from typing import Any, Mapping

from .graph import SimpleGraph

GRAPH6_MAX_N = 62


def graph_to_dict(g: SimpleGraph) -> dict[str, Any]:
    d: dict[str, Any] = {"n": g.n, "edges": [list(e) for e in g.edges]}
    if g.labels is not None:
        d["labels"] = list(g.labels)
    return d


def graph_from_dict(d: Mapping[str, Any]) -> SimpleGraph:
    if "n" not in d or "edges" not in d:
        raise ValueError("graph JSON needs 'n' and 'edges'")
    return SimpleGraph.from_edges(int(d["n"]), d["edges"], d.get("labels"))


def to_json(g: SimpleGraph) -> str:
    return json.dumps(graph_to_dict(g))


def from_json(text: str) -> SimpleGraph:
    return graph_from_dict(json.loads(text))


def to_graph6(g: SimpleGraph) -> str:
    """Encode in graph6 (no ``>>graph6<<`` header)."""
    n = g.n
    if n > GRAPH6_MAX_N:
        raise ValueError(f"graph6 support is limited to n <= {GRAPH6_MAX_N}")
    bits = [int(g.adj[i, j]) for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    chars = [chr(n + 63)]
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k : k + 6]:
            value = (value << 1) | b
        chars.append(chr(value + 63))
    return "".join(chars)


def from_graph6(text: str) -> SimpleGraph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise ValueError("empty graph6 string")
    codes = [ord(c) - 63 for c in s]
    if any(not 0 <= c <= 63 for c in codes):
        raise ValueError("invalid graph6 character")
    n = codes[0]
    if n > GRAPH6_MAX_N:
        raise ValueError(f"graph6 support is limited to n <= {GRAPH6_MAX_N}")
    nbits = n * (n - 1) // 2
    expected = 1 + (nbits + 5) // 6
    if len(codes) != expected:
        raise ValueError(f"graph6 length mismatch: expected {expected} characters, got {len(codes)}")
    bits = []
    for c in codes[1:]:
        bits.extend((c >> (5 - k)) & 1 for k in range(6))
    edges = []
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                edges.append((i, j))
            pos += 1
    return SimpleGraph.from_edges(n, edges)


def parse_graph(text: str) -> SimpleGraph:
    """Parse JSON if the text looks like an object, otherwise graph6."""
    if text.lstrip().startswith("{"):
        return from_json(text)
    return from_graph6(text)


def _node_name(g: SimpleGraph, v: int) -> str:
    return json.dumps(g.labels[v]) if g.labels is not None else str(v)


def to_dot(g: SimpleGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {_node_name(g, v)};" for v in range(g.n)]
    lines += [f"  {_node_name(g, u)} -- {_node_name(g, v)};" for u, v in g.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def colored_to_dot(h: SimpleGraph, k: SimpleGraph, name: str = "HK") -> str:
    """Two-coloured union: ``h`` blue solid, ``k`` red dashed."""
    if h.n != k.n:
        raise ValueError("factors must share a vertex set")
    lines = [f"graph {name} {{"]
    lines += [f"  {_node_name(h, v)};" for v in range(h.n)]
    lines += [f'  {_node_name(h, u)} -- {_node_name(h, v)} [color=blue, style=solid];' for u, v in h.edges]
    lines += [f'  {_node_name(h, u)} -- {_node_name(h, v)} [color=red, style=dashed];' for u, v in k.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"
