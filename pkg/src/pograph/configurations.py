"""Unavoidable-configuration catalog and matcher.

The source figure for the seventeen configurations is unavailable; the ten
patterns here are reconstructed from the proof text and from the exact
role, edge, and degree content the coloring reductions consume.  Each
entry records that provenance.  A mis-reconstructed pattern can only cause
a diagnostic failure downstream, never a silently wrong coloring, because
every produced coloring is re-verified.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .diagram import Diagram, surgery, validate
from .errors import PographError
from .graph import Edge, Graph, norm_edge


@dataclass(frozen=True)
class ConfigurationPattern:
    id: str
    roles: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    exact_degree: dict[str, int] = field(default_factory=dict)
    min_degree: dict[str, int] = field(default_factory=dict)
    note: str = "reconstructed from proof text"

    def __post_init__(self):
        rs = set(self.roles)
        for a, b in self.edges:
            if a not in rs or b not in rs or a == b:
                raise ValueError(f"{self.id}: bad pattern edge {(a, b)}")
        for r, d in self.exact_degree.items():
            need = sum(1 for e in self.edges if r in e)
            if d < need:
                raise ValueError(f"{self.id}: role {r} has {need} edges but degree {d}")


_CATALOG: tuple[ConfigurationPattern, ...] = (
    ConfigurationPattern(
        "G1", ("u", "v"), (("u", "v"),),
        exact_degree={"u": 2, "v": 2},
        note="two adjacent 2-vertices",
    ),
    ConfigurationPattern(
        "G2", ("u", "w", "x"), (("u", "w"), ("w", "x"), ("x", "u")),
        exact_degree={"u": 2, "w": 3},
        note="triangle with a 2-vertex and a 3-vertex",
    ),
    ConfigurationPattern(
        "G3", ("u", "v", "x", "y"),
        (("u", "x"), ("u", "y"), ("v", "x"), ("v", "y")),
        exact_degree={"u": 2, "v": 2},
        note="two 2-vertices sharing both neighbors; xy present or addable",
    ),
    ConfigurationPattern(
        "G4", ("u", "x", "y", "v", "w"),
        (("u", "x"), ("u", "y"), ("u", "v"), ("u", "w"), ("x", "v"), ("y", "w")),
        exact_degree={"u": 4, "x": 2, "y": 2},
        note="4-center with two pendant-path 2-vertices",
    ),
    ConfigurationPattern(
        "G5", ("u", "v", "w", "x", "z"),
        (("u", "v"), ("u", "w"), ("v", "w"), ("w", "x"), ("x", "z")),
        exact_degree={"u": 2, "x": 2, "v": 4, "w": 4},
        note="triangle with a 2-vertex apex and a pendant 2-path at w",
    ),
    ConfigurationPattern(
        "G6", ("u", "v", "x0", "y0"),
        (("u", "v"), ("u", "x0"), ("u", "y0"), ("v", "x0"), ("v", "y0")),
        exact_degree={"u": 3, "v": 3},
        min_degree={"x0": 3, "y0": 3},
        note="adjacent 3-vertices with two common neighbors",
    ),
    ConfigurationPattern(
        "G12", ("u", "v", "w", "x", "y"),
        (("u", "v"), ("u", "w"), ("v", "w"), ("v", "x"), ("v", "y"),
         ("w", "x"), ("w", "y")),
        exact_degree={"u": 2, "v": 4, "w": 4},
        note="2-apex over an adjacent 4-4 pair with two common neighbors",
    ),
    ConfigurationPattern(
        "G13", ("u", "v", "w", "x", "y"),
        (("u", "x"), ("u", "v"), ("v", "w"), ("v", "x"), ("v", "y"),
         ("w", "x"), ("w", "y")),
        exact_degree={"u": 2, "v": 4, "w": 3, "x": 4},
        note="2-vertex into a 4-4-3 triangle fan",
    ),
    ConfigurationPattern(
        "G16", ("u", "z", "v", "w", "x", "y"),
        (("u", "x"), ("u", "w"), ("v", "w"), ("v", "x"), ("v", "y"),
         ("v", "z"), ("w", "x"), ("w", "y"), ("y", "z")),
        exact_degree={"u": 2, "z": 2, "v": 4, "w": 4, "x": 4, "y": 4},
        note="two 2-vertices over a 4-regular core",
    ),
    ConfigurationPattern(
        "G17", ("u", "z", "a", "v", "w", "x", "y"),
        (("u", "v"), ("u", "w"), ("v", "w"), ("v", "x"), ("v", "y"),
         ("v", "a"), ("w", "x"), ("w", "y"), ("w", "z"), ("x", "z"),
         ("a", "y")),
        exact_degree={"u": 2, "z": 2, "a": 2, "v": 5, "w": 5, "x": 5, "y": 5},
        note="three 2-vertices over a 5-5 core (maximum degree 5 case)",
    ),
)

COLORING_IDS = ("G3", "G4", "G5", "G6", "G12", "G13", "G16", "G17")
EDGE_COLOR_DISPATCH = ("G3", "G6", "G12", "G13", "G4", "G5", "G16", "G17")


def catalog() -> tuple[ConfigurationPattern, ...]:
    """The ten reconstructed patterns, in catalog order."""
    return _CATALOG


def pattern(pid: str) -> ConfigurationPattern:
    for p in _CATALOG:
        if p.id == pid:
            return p
    raise KeyError(pid)


@dataclass(frozen=True)
class ConfigurationMatch:
    id: str
    roles: dict[str, int]
    edges: frozenset[Edge]
    xy_present: Optional[bool] = None   # G3 only
    xy_addable: Optional[bool] = None   # G3 with xy absent: claim (b) witness

    def role_edge(self, a: str, b: str) -> Edge:
        return norm_edge(self.roles[a], self.roles[b])


def _match_pattern(g: Graph, pat: ConfigurationPattern) -> Iterable[dict[str, int]]:
    """All role assignments of the pattern into g, lexicographic by role order."""
    role_edges: dict[str, list[tuple[str, str]]] = {r: [] for r in pat.roles}
    for a, b in pat.edges:
        role_edges[a].append((a, b))
        role_edges[b].append((a, b))

    assign: dict[str, int] = {}

    def candidates(r: str) -> list[int]:
        exact = pat.exact_degree.get(r)
        lo = pat.min_degree.get(r, 0)
        out = []
        for v in range(g.n):
            d = g.degree(v)
            if exact is not None and d != exact:
                continue
            if d < max(lo, sum(1 for e in pat.edges if r in e)):
                continue
            if v in assign.values():
                continue
            ok = True
            for a, b in role_edges[r]:
                other = b if a == r else a
                if other in assign and not g.has_edge(v, assign[other]):
                    ok = False
                    break
            if ok:
                out.append(v)
        return out

    def rec(i: int):
        if i == len(pat.roles):
            yield dict(assign)
            return
        r = pat.roles[i]
        for v in candidates(r):
            assign[r] = v
            yield from rec(i + 1)
            del assign[r]

    yield from rec(0)


def _g3_addability(d: Diagram, roles: dict[str, int]) -> tuple[Optional[bool], Optional[bool]]:
    """(xy present, xy addable keeping the drawing pseudo-outerplanar)."""
    x, y = roles["x"], roles["y"]
    if d.graph.has_edge(x, y):
        return True, None
    return False, surgery(d, add=[(x, y)]) is not None


def find_configuration(
    d: Diagram, allowed: Optional[Iterable[str]] = None
) -> Optional[ConfigurationMatch]:
    """First configuration matching the diagram's graph, or None.

    Patterns are tried in the order the ids are given (catalog order by
    default); solid (exact) degrees are enforced against the full host
    graph; role assignments take the lowest vertex ids first.  The input
    must validate.
    """
    rep = validate(d)
    if not rep.valid:
        raise PographError(f"invalid diagram: {rep.violations}")
    g = d.graph
    ids = tuple(allowed) if allowed is not None else tuple(p.id for p in _CATALOG)
    for pid in ids:
        pat = pattern(pid)
        for roles in _match_pattern(g, pat):
            edges = frozenset(norm_edge(roles[a], roles[b]) for a, b in pat.edges)
            if pat.id == "G3":
                present, addable = _g3_addability(d, roles)
                return ConfigurationMatch(pat.id, roles, edges, present, addable)
            return ConfigurationMatch(pat.id, roles, edges)
    return None


def find_all_ids(d: Diagram) -> list[str]:
    """Catalog ids with at least one match in the host (diagnostic helper)."""
    g = d.graph
    out = []
    for pat in _CATALOG:
        if next(iter(_match_pattern(g, pat)), None) is not None:
            out.append(pat.id)
    return out
