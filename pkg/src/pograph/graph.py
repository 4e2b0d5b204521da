"""Simple undirected graphs and the structural predicates used everywhere else.

Vertices are the integers ``0 .. n-1``; edges are unordered pairs stored as
``(u, v)`` tuples with ``u < v``.  Graphs are immutable values: every edit
returns a new ``Graph``.  Vertex deletion keeps ``n`` fixed and leaves the
vertex isolated, which keeps labels stable across the recursive
constructions in the rest of the package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional

from .errors import DisconnectedError, GuardExceededError

Edge = tuple[int, int]

PART_KINDS = ("forest", "linear-forest", "star-forest", "matching", "outerplanar-remainder")


def norm_edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"self-loop at {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """A finite simple undirected graph on vertices ``0 .. n-1``."""

    n: int
    edges: frozenset[Edge]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        es = set()
        for u, v in edges:
            e = norm_edge(u, v)
            if not (0 <= e[0] < n and 0 <= e[1] < n):
                raise ValueError(f"edge {e} out of range for n={n}")
            es.add(e)
        return cls(n, frozenset(es))

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(s) for s in adj)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    @cached_property
    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    @cached_property
    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edges

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def active_vertices(self) -> list[int]:
        """Vertices with at least one incident edge."""
        return [v for v in range(self.n) if self.adjacency[v]]

    # --- immutable edits -------------------------------------------------

    def add_edges(self, new: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(self.n, self.edges | {norm_edge(u, v) for u, v in new})

    def remove_edges(self, old: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(self.n, self.edges - {norm_edge(u, v) for u, v in old})

    def isolate_vertices(self, vs: Iterable[int]) -> "Graph":
        """Delete the vertices by dropping their edges; ids stay put."""
        dead = set(vs)
        return Graph(self.n, frozenset(e for e in self.edges if not (e[0] in dead or e[1] in dead)))

    def contract_edge(self, keep: int, drop: int) -> "Graph":
        """Contract edge ``keep``-``drop`` onto ``keep``; ``drop`` ends up isolated."""
        if not self.has_edge(keep, drop):
            raise ValueError(f"no edge {keep}-{drop} to contract")
        es = set()
        for u, v in self.edges:
            u2 = keep if u == drop else u
            v2 = keep if v == drop else v
            if u2 != v2:
                es.add(norm_edge(u2, v2))
        return Graph(self.n, frozenset(es))

    def induced(self, vs: Iterable[int]) -> "Graph":
        keep = set(vs)
        return Graph(self.n, frozenset(e for e in self.edges if e[0] in keep and e[1] in keep))

    # --- connectivity ----------------------------------------------------

    def components(self) -> list[frozenset[int]]:
        seen: set[int] = set()
        comps = []
        for s in range(self.n):
            if s in seen:
                continue
            stack, comp = [s], {s}
            seen.add(s)
            while stack:
                u = stack.pop()
                for w in self.adjacency[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.add(w)
                        stack.append(w)
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def canonical_key(self) -> tuple:
        """Hashable identity for caching: (n, sorted edges)."""
        return (self.n, tuple(sorted(self.edges)))


# --- blocks and cut vertices ---------------------------------------------


@dataclass(frozen=True)
class Block:
    vertices: frozenset[int]
    edges: frozenset[Edge]


def blocks(g: Graph) -> tuple[list[Block], frozenset[int]]:
    """Biconnected components and cut vertices (iterative Hopcroft-Tarjan).

    Every edge lands in exactly one block; a block is 2-connected or a
    single edge.  Cut vertices are exactly the vertices lying in two or
    more blocks.
    """
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    parent: dict[int, Optional[int]] = {}
    edge_stack: list[Edge] = []
    out: list[Block] = []
    counter = itertools.count()

    for root in range(g.n):
        if root in disc or not g.adjacency[root]:
            continue
        parent[root] = None
        work: list[tuple[int, Iterator[int]]] = [(root, iter(sorted(g.adjacency[root])))]
        disc[root] = low[root] = next(counter)
        while work:
            u, it = work[-1]
            advanced = False
            for w in it:
                if w == parent[u]:
                    continue
                if w not in disc:
                    parent[w] = u
                    disc[w] = low[w] = next(counter)
                    edge_stack.append(norm_edge(u, w))
                    work.append((w, iter(sorted(g.adjacency[w]))))
                    advanced = True
                    break
                elif disc[w] < disc[u]:
                    edge_stack.append(norm_edge(u, w))
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            work.pop()
            if work:
                p = work[-1][0]
                low[p] = min(low[p], low[u])
                if low[u] >= disc[p]:
                    comp: set[Edge] = set()
                    while True:
                        e = edge_stack.pop()
                        comp.add(e)
                        if e == norm_edge(p, u):
                            break
                    vs = frozenset(itertools.chain.from_iterable(comp))
                    out.append(Block(vs, frozenset(comp)))

    membership: dict[int, int] = {}
    cuts: set[int] = set()
    for b in out:
        for v in b.vertices:
            membership[v] = membership.get(v, 0) + 1
            if membership[v] >= 2:
                cuts.add(v)
    return out, frozenset(cuts)


def vertex_connectivity(g: Graph) -> int:
    """Exact vertex connectivity by exhaustive cut search.

    Uses the bound kappa <= delta, so at most C(n, delta) subsets are
    examined.  Complete graphs return n - 1.
    """
    if g.n < 2:
        raise ValueError("need at least two vertices")
    if not g.is_connected():
        raise DisconnectedError("disconnected")
    if g.m == g.n * (g.n - 1) // 2:
        return g.n - 1
    delta = g.min_degree
    verts = list(range(g.n))
    for k in range(delta + 1):
        for cut in itertools.combinations(verts, k):
            rest = [v for v in verts if v not in cut]
            if len(rest) <= 1:
                continue
            sub = g.isolate_vertices(cut)
            seen = {rest[0]}
            stack = [rest[0]]
            while stack:
                u = stack.pop()
                for w in sub.adjacency[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) < len(rest):
                return k
    return delta


# --- minors ----------------------------------------------------------------

_MINOR_PATTERNS: dict[str, tuple[int, tuple[tuple[int, int], ...], tuple[tuple[int, ...], ...]]] = {
    # (k, pattern edges, symmetry classes whose branch-set minima must increase)
    "K4": (4, tuple(itertools.combinations(range(4), 2)), ((0, 1, 2, 3),)),
    "K23": (5, ((0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)), ((0, 1), (2, 3, 4))),
}


def has_minor(g: Graph, pattern: str, guard: int = 15) -> bool:
    """Exact minor test by branch-set search, for pattern K4 or K23.

    Searches for disjoint connected branch sets, one per pattern vertex,
    with an edge of g between every pair of sets the pattern joins.
    Intended for desk-scale inputs; refuses to run above ``guard`` active
    vertices.
    """
    if pattern not in _MINOR_PATTERNS:
        raise ValueError(f"unknown pattern {pattern!r}")
    k, pedges, symclasses = _MINOR_PATTERNS[pattern]
    active = g.active_vertices()
    if len(active) > guard:
        raise GuardExceededError(f"too large for exact minor search ({len(active)} > {guard})")
    if len(active) < k or g.m < len(pedges):
        return False

    nbr = [0] * g.n
    for u, v in g.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    all_mask = 0
    for v in active:
        all_mask |= 1 << v

    prereq = [[j for j in range(i) if (j, i) in pedges or (i, j) in pedges] for i in range(k)]
    sym_prev = {}
    for cls in symclasses:
        for a, b in zip(cls, cls[1:]):
            sym_prev[b] = a

    sets: list[int] = [0] * k
    mins: list[int] = [0] * k
    nbrmask: list[int] = [0] * k

    def grown(mask: int) -> int:
        out = 0
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            out |= nbr[v]
            m &= m - 1
        return out & ~mask

    def place(i: int, used: int) -> bool:
        if i == k:
            return True
        floor_min = -1
        if i in sym_prev:
            floor_min = mins[sym_prev[i]]
        req = prereq[i]
        avail = all_mask & ~used
        m = avail
        while m:
            r = (m & -m).bit_length() - 1
            m &= m - 1
            if r <= floor_min:
                continue
            if _try_sets(i, r, avail, req, used):
                return True
        return False

    def _try_sets(i: int, root: int, avail: int, req: list[int], used: int) -> bool:
        # enumerate connected subsets of avail containing root, growing by frontier
        start = 1 << root

        def rec(smask: int, frontier: int, forbidden: int) -> bool:
            touch = grown(smask)
            if all(touch & sets[j] for j in req):
                sets[i] = smask
                mins[i] = root
                if place(i + 1, used | smask):
                    return True
            cand = frontier
            while cand:
                v = (cand & -cand).bit_length() - 1
                cand &= cand - 1
                vbit = 1 << v
                newf = (frontier | (nbr[v] & avail & ~forbidden)) & ~(smask | vbit) & ~forbidden
                if rec(smask | vbit, newf, forbidden):
                    return True
                forbidden |= vbit
                frontier &= ~vbit
            return False

        return rec(start, nbr[root] & avail & ~start, ~avail)

    return place(0, 0)


def is_outerplanar(g: Graph, guard: int = 15) -> bool:
    """True iff g has neither a K4 minor nor a K2,3 minor."""
    return not has_minor(g, "K4", guard) and not has_minor(g, "K23", guard)


# --- small isomorphism ------------------------------------------------------


def is_isomorphic_small(g: Graph, h: Graph, guard: int = 8) -> bool:
    """Exhaustive isomorphism on the active vertices; at most ``guard`` of them."""
    ga, ha = g.active_vertices(), h.active_vertices()
    if len(ga) != len(ha) or g.m != h.m:
        return False
    if len(ga) > guard:
        raise GuardExceededError(f"isomorphism limited to {guard} active vertices")
    if sorted(g.degree(v) for v in ga) != sorted(h.degree(v) for v in ha):
        return False
    hedges = {frozenset(e) for e in h.edges}
    for perm in itertools.permutations(ha):
        mapping = dict(zip(ga, perm))
        if all(frozenset((mapping[u], mapping[v])) in hedges for u, v in g.edges):
            return True
    return False


def complete_graph(k: int) -> Graph:
    return Graph.from_edges(k, itertools.combinations(range(k), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def cycle_graph(k: int) -> Graph:
    return Graph.from_edges(k, ((i, (i + 1) % k) for i in range(k)))


def path_graph(k: int) -> Graph:
    return Graph.from_edges(k, ((i, i + 1) for i in range(k - 1)))


def is_hamiltonian(g: Graph, vertices: Optional[Iterable[int]] = None) -> Optional[list[int]]:
    """Find a hamiltonian cycle of the given vertex set (default: active), or None.

    Plain backtracking; desk scale only.
    """
    vs = sorted(vertices) if vertices is not None else g.active_vertices()
    k = len(vs)
    if k < 3:
        return None
    vset = set(vs)
    start = vs[0]
    path = [start]
    used = {start}

    def rec() -> Optional[list[int]]:
        if len(path) == k:
            if g.has_edge(path[-1], start):
                return list(path)
            return None
        for w in sorted(g.adjacency[path[-1]]):
            if w in vset and w not in used:
                used.add(w)
                path.append(w)
                got = rec()
                if got:
                    return got
                path.pop()
                used.remove(w)
        return None

    return rec()


# --- subgraph kinds ---------------------------------------------------------


@dataclass(frozen=True)
class SubgraphKinds:
    is_forest: bool
    is_linear_forest: bool
    is_star_forest: bool
    is_matching: bool


def classify_subgraph(g: Graph, s: Iterable[tuple[int, int]]) -> SubgraphKinds:
    """Classify the edge subset s of g as forest / linear forest / star forest / matching."""
    es = {norm_edge(u, v) for u, v in s}
    bad = es - g.edges
    if bad:
        raise ValueError(f"not edges of the graph: {sorted(bad)}")
    deg: dict[int, int] = {}
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    forest = True
    for u, v in es:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
        parent.setdefault(u, u)
        parent.setdefault(v, v)
        ru, rv = find(u), find(v)
        if ru == rv:
            forest = False
        else:
            parent[ru] = rv
    maxdeg = max(deg.values(), default=0)
    linear = forest and maxdeg <= 2
    star = forest and all(deg[u] == 1 or deg[v] == 1 for u, v in es)
    matching = maxdeg <= 1
    return SubgraphKinds(forest, linear, star, matching)


def star_roots(s: Iterable[Edge]) -> set[int]:
    """Roots of a star forest: centers of each star; both ends of a K2."""
    es = list(s)
    deg: dict[int, int] = {}
    for u, v in es:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    roots = {v for v, d in deg.items() if d >= 2}
    for u, v in es:
        if deg[u] == 1 and deg[v] == 1:
            roots.add(u)
            roots.add(v)
    return roots


# --- decompositions ---------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    """Ordered parts (kind, edge set) partitioning the edges of a graph."""

    parts: tuple[tuple[str, frozenset[Edge]], ...]

    def __post_init__(self):
        for kind, _ in self.parts:
            if kind not in PART_KINDS:
                raise ValueError(f"unknown part kind {kind!r}")

    def part_edges(self) -> list[frozenset[Edge]]:
        return [es for _, es in self.parts]


def verify_decomposition(g: Graph, dec: Decomposition, outerplanar_check=None) -> list[str]:
    """Return a list of violations (empty = valid).

    ``outerplanar_check`` replaces the default minor-search outerplanarity
    test for the outerplanar-remainder part, e.g. with a diagram witness
    at sizes beyond the minor-search guard.
    """
    problems = []
    seen: set[Edge] = set()
    for i, (kind, es) in enumerate(dec.parts):
        if es & seen:
            problems.append(f"part {i} overlaps earlier parts")
        seen |= es
        if not es <= g.edges:
            problems.append(f"part {i} contains non-edges")
            continue
        if kind == "outerplanar-remainder":
            check = outerplanar_check or (lambda h: is_outerplanar(h))
            if not check(Graph(g.n, es)):
                problems.append(f"part {i} is not outerplanar")
        else:
            kinds = classify_subgraph(g, es)
            ok = {
                "forest": kinds.is_forest,
                "linear-forest": kinds.is_linear_forest,
                "star-forest": kinds.is_star_forest,
                "matching": kinds.is_matching,
            }[kind]
            if not ok:
                problems.append(f"part {i} is not a {kind}")
    if seen != g.edges:
        problems.append("parts do not cover the edge set")
    return problems


# --- edge colorings ---------------------------------------------------------


@dataclass(frozen=True)
class EdgeColoring:
    """A total map edge -> color in 1..k, tagged proper or linear-forest."""

    k: int
    mode: str  # "proper" | "linear-forest"
    colors: dict[Edge, int] = field(compare=False)

    def __post_init__(self):
        if self.mode not in ("proper", "linear-forest"):
            raise ValueError(f"unknown mode {self.mode!r}")

    def color_classes(self) -> dict[int, list[Edge]]:
        out: dict[int, list[Edge]] = {c: [] for c in range(1, self.k + 1)}
        for e, c in self.colors.items():
            out.setdefault(c, []).append(e)
        return out


@dataclass(frozen=True)
class ColoringReport:
    valid: bool
    violations: tuple[str, ...]


def verify_edge_coloring(g: Graph, c: EdgeColoring) -> ColoringReport:
    """Check that every color class is a matching (proper) or linear forest."""
    missing = g.edges - set(c.colors)
    extra = set(c.colors) - g.edges
    if missing or extra:
        raise ValueError(
            f"assignment not total on E(g): missing {sorted(missing)}, extra {sorted(extra)}"
        )
    bad: list[str] = []
    for e, col in c.colors.items():
        if not (1 <= col <= c.k):
            bad.append(f"edge {e} colored {col} outside 1..{c.k}")
    for col, es in c.color_classes().items():
        kinds = classify_subgraph(g, es)
        if c.mode == "proper" and not kinds.is_matching:
            deg: dict[int, int] = {}
            for u, v in es:
                deg[u] = deg.get(u, 0) + 1
                deg[v] = deg.get(v, 0) + 1
            culprits = sorted(v for v, d in deg.items() if d >= 2)
            bad.append(f"color {col} is not a matching (vertices {culprits})")
        if c.mode == "linear-forest" and not kinds.is_linear_forest:
            bad.append(f"color {col} is not a linear forest")
    return ColoringReport(not bad, tuple(bad))


# --- class membership -------------------------------------------------------


@dataclass(frozen=True)
class ClassFlags:
    outerplanar: bool
    k4_minor_free: bool
    k23_minor_free: bool
    pseudo_outerplanar: bool
    quasi_hamiltonian_po: bool


def class_membership(g: Graph, guard: int = 15) -> ClassFlags:
    """Membership flags for the graph classes compared in the theory.

    Quasi-hamiltonian pseudo-outerplanar means pseudo-outerplanar with
    every block hamiltonian (2-vertex blocks count trivially).
    """
    from .diagram import recognize  # local import; diagram builds on this module

    k4free = not has_minor(g, "K4", guard)
    k23free = not has_minor(g, "K23", guard)
    d = recognize(g)
    po = d is not None
    quasi = False
    if po:
        blks, _ = blocks(g)
        quasi = all(len(b.vertices) <= 2 or is_hamiltonian(g, b.vertices) is not None for b in blks)
    return ClassFlags(
        outerplanar=k4free and k23free,
        k4_minor_free=k4free,
        k23_minor_free=k23free,
        pseudo_outerplanar=po,
        quasi_hamiltonian_po=quasi,
    )
