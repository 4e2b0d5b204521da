"""JSON wire formats for graphs, diagrams, decompositions, and colorings.

Formats:
    graph          {"n": int, "edges": [[u, v], ...]}            (u < v)
    diagram        {"graph": <graph>, "blocks": [{"order": [...], "closed": bool}]}
    decomposition  {"parts": [{"kind": str, "edges": [[u, v], ...]}]}
    coloring       {"k": int, "mode": str, "colors": [[u, v, c], ...]}

Duplicate edges, self-loops, and out-of-range vertices are rejected at
parse time.
"""

from __future__ import annotations

import json
from typing import Any

from .diagram import Diagram, DiagramBlock, make_diagram, validate
from .errors import PographError
from .graph import Decomposition, Edge, EdgeColoring, Graph, norm_edge


def graph_to_obj(g: Graph) -> dict[str, Any]:
    return {"n": g.n, "edges": [list(e) for e in sorted(g.edges)]}


def graph_from_obj(obj: Any) -> Graph:
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise PographError("graph json needs keys 'n' and 'edges'")
    n = obj["n"]
    if not isinstance(n, int) or n < 0:
        raise PographError("'n' must be a non-negative integer")
    seen: set[Edge] = set()
    for item in obj["edges"]:
        if not (isinstance(item, list) and len(item) == 2):
            raise PographError(f"bad edge entry {item!r}")
        u, v = item
        if u == v:
            raise PographError(f"self-loop at {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise PographError(f"edge {item} out of range for n={n}")
        e = norm_edge(u, v)
        if e in seen:
            raise PographError(f"duplicate edge {list(e)}")
        seen.add(e)
    return Graph(n, frozenset(seen))


def diagram_to_obj(d: Diagram) -> dict[str, Any]:
    return {
        "graph": graph_to_obj(d.graph),
        "blocks": [{"order": list(b.order), "closed": b.closed} for b in d.blocks],
    }


def diagram_from_obj(obj: Any) -> Diagram:
    if not isinstance(obj, dict) or "graph" not in obj or "blocks" not in obj:
        raise PographError("diagram json needs keys 'graph' and 'blocks'")
    g = graph_from_obj(obj["graph"])
    dblocks = []
    for b in obj["blocks"]:
        order = tuple(b["order"])
        closed = bool(b.get("closed", False))
        dblocks.append(DiagramBlock(order, closed))
    d = Diagram(g, tuple(sorted(dblocks, key=lambda b: b.order)))
    rep = validate(d)
    if not rep.valid:
        raise PographError(f"diagram invalid: {'; '.join(rep.violations)}")
    return d


def decomposition_to_obj(dec: Decomposition) -> dict[str, Any]:
    return {
        "parts": [
            {"kind": kind, "edges": [list(e) for e in sorted(es)]}
            for kind, es in dec.parts
        ]
    }


def decomposition_from_obj(obj: Any) -> Decomposition:
    parts = tuple(
        (p["kind"], frozenset(norm_edge(u, v) for u, v in p["edges"]))
        for p in obj["parts"]
    )
    return Decomposition(parts)


def coloring_to_obj(c: EdgeColoring) -> dict[str, Any]:
    return {
        "k": c.k,
        "mode": c.mode,
        "colors": [[u, v, col] for (u, v), col in sorted(c.colors.items())],
    }


def coloring_from_obj(obj: Any) -> EdgeColoring:
    colors = {norm_edge(u, v): c for u, v, c in obj["colors"]}
    return EdgeColoring(obj["k"], obj["mode"], colors)


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
