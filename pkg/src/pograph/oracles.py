"""Independent brute-force ground truth for the constructive algorithms.

Everything here is plain backtracking or exhaustive enumeration, kept
deliberately separate in strategy from the structural constructions it
cross-checks.  Budgets turn runaway searches into a reported outcome
(BudgetExceededError), never into a wrong answer.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Iterator, Optional

import networkx as nx

from .diagram import Diagram, recognize
from .errors import BudgetExceededError, GuardExceededError
from .graph import Edge, Graph, norm_edge


@dataclass
class SearchBudget:
    """Caps for the exhaustive searches; exceeding one raises, never lies."""

    max_nodes: int = 20_000_000
    time_limit: Optional[float] = None  # seconds
    nodes: int = field(default=0, repr=False)
    _deadline: Optional[float] = field(default=None, repr=False)

    def start(self) -> "SearchBudget":
        self.nodes = 0
        self._deadline = time.monotonic() + self.time_limit if self.time_limit else None
        return self

    def tick(self, amount: int = 1) -> None:
        self.nodes += amount
        if self.nodes > self.max_nodes:
            raise BudgetExceededError(f"search exceeded {self.max_nodes} nodes")
        if self._deadline is not None and self.nodes % 4096 == 0:
            if time.monotonic() > self._deadline:
                raise BudgetExceededError(f"search exceeded {self.time_limit}s")


def _to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def outerplanar_by_planarity(g: Graph) -> bool:
    """Exact outerplanarity via planarity of the apex-augmented graph.

    A graph is outerplanar iff adding a vertex joined to everything leaves
    it planar.  Fast at any size; used as the independent cross-check and
    for instances beyond the minor-search guard.
    """
    h = _to_nx(g)
    apex = g.n
    h.add_edges_from((apex, v) for v in range(g.n))
    ok, _ = nx.check_planarity(h, counterexample=False)
    return ok


# --- exact proper edge coloring ---------------------------------------------


def _edge_color_exists(g: Graph, k: int, budget: SearchBudget) -> Optional[dict[Edge, int]]:
    """Backtracking: proper k-edge-coloring or None.  Colors canonicalized."""
    edges = sorted(g.edges, key=lambda e: -(g.degree(e[0]) + g.degree(e[1])))
    m = len(edges)
    incident: list[list[int]] = [[] for _ in range(m)]
    for i, e in enumerate(edges):
        for j in range(i):
            f = edges[j]
            if set(e) & set(f):
                incident[i].append(j)
    assigned = [0] * m

    def rec(i: int, used_max: int) -> bool:
        if i == m:
            return True
        budget.tick()
        blocked = {assigned[j] for j in incident[i]}
        top = min(k, used_max + 1)
        for c in range(1, top + 1):
            if c in blocked:
                continue
            assigned[i] = c
            if rec(i + 1, max(used_max, c)):
                return True
        assigned[i] = 0
        return False

    if rec(0, 0):
        return {e: assigned[i] for i, e in enumerate(edges)}
    return None


def brute_chromatic_index(g: Graph, budget: Optional[SearchBudget] = None) -> int:
    """Exact chromatic index: only Delta and Delta+1 are candidates."""
    budget = (budget or SearchBudget()).start()
    if g.m == 0:
        return 0
    delta = g.max_degree
    if _edge_color_exists(g, delta, budget) is not None:
        return delta
    if _edge_color_exists(g, delta + 1, budget) is not None:
        return delta + 1
    raise AssertionError("Vizing bound violated; coloring search is broken")


# --- exact linear arboricity --------------------------------------------------


class _ForestState:
    """Union-find with rollback, one per color class, plus per-vertex load."""

    def __init__(self, n: int, k: int):
        self.parent = [list(range(n)) for _ in range(k)]
        self.load = [[0] * n for _ in range(k)]
        self.trail: list[tuple[int, int, int]] = []

    def find(self, c: int, x: int) -> int:
        p = self.parent[c]
        while p[x] != x:
            x = p[x]
        return x

    def try_add(self, c: int, u: int, v: int) -> bool:
        """Add edge u-v to class c if it keeps a linear forest; records undo info."""
        if self.load[c][u] >= 2 or self.load[c][v] >= 2:
            return False
        ru, rv = self.find(c, u), self.find(c, v)
        if ru == rv:
            return False
        self.parent[c][ru] = rv
        self.load[c][u] += 1
        self.load[c][v] += 1
        self.trail.append((c, ru, u * len(self.load[0]) + v))
        return True

    def mark(self) -> int:
        return len(self.trail)

    def undo(self, mark: int) -> None:
        n = len(self.load[0])
        while len(self.trail) > mark:
            c, ru, uv = self.trail.pop()
            self.parent[c][ru] = ru
            u, v = divmod(uv, n)
            self.load[c][u] -= 1
            self.load[c][v] -= 1


def _tree_color_exists(g: Graph, k: int, budget: SearchBudget) -> Optional[dict[Edge, int]]:
    """Backtracking: partition into k linear forests, or None."""
    if k <= 0:
        return {} if g.m == 0 else None
    edges = sorted(g.edges, key=lambda e: -(g.degree(e[0]) + g.degree(e[1])))
    m = len(edges)
    state = _ForestState(g.n, k)
    assigned = [0] * m

    def rec(i: int, used_max: int) -> bool:
        if i == m:
            return True
        budget.tick()
        u, v = edges[i]
        for c in range(min(k, used_max + 1)):
            mark = state.mark()
            if state.try_add(c, u, v):
                assigned[i] = c
                if rec(i + 1, max(used_max, c + 1)):
                    return True
                state.undo(mark)
        return False

    if rec(0, 0):
        return {e: assigned[i] + 1 for i, e in enumerate(edges)}
    return None


def brute_linear_arboricity(g: Graph, budget: Optional[SearchBudget] = None) -> int:
    """Exact linear arboricity by increasing k from the ceil(Delta/2) lower bound."""
    budget = (budget or SearchBudget()).start()
    if g.m == 0:
        return 0
    k = max(1, (g.max_degree + 1) // 2)
    while True:
        if _tree_color_exists(g, k, budget) is not None:
            return k
        k += 1


# --- removal decompositions -----------------------------------------------------


def _is_kind(edges: list[Edge], kind: str) -> bool:
    deg: dict[int, int] = {}
    parent: dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    acyclic = True
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
        ru, rv = find(u), find(v)
        if ru == rv:
            acyclic = False
        else:
            parent[ru] = rv
    maxd = max(deg.values(), default=0)
    if kind == "matching":
        return maxd <= 1
    if kind == "linear-forest":
        return acyclic and maxd <= 2
    if kind == "star-forest":
        return acyclic and all(deg[u] == 1 or deg[v] == 1 for u, v in edges)
    raise ValueError(kind)


def exists_removal_decomposition(
    g: Graph, kind: str, budget: Optional[SearchBudget] = None
) -> Optional[frozenset[Edge]]:
    """Find S of the given kind with g - S outerplanar, or prove none exists.

    Monotone in S (supersets of a working S work), so only inclusion-maximal
    kind-sets need the outerplanarity check; the search walks the
    include/exclude tree over edges and tests at subtree-maximal sets.
    """
    budget = (budget or SearchBudget()).start()
    edges = sorted(g.edges, key=lambda e: -(g.degree(e[0]) + g.degree(e[1])))
    m = len(edges)
    chosen: list[Edge] = []

    def admissible(e: Edge) -> bool:
        return _is_kind(chosen + [e], kind)

    def rec(i: int) -> Optional[list[Edge]]:
        budget.tick()
        nxt = None
        for j in range(i, m):
            if admissible(edges[j]):
                nxt = j
                break
        if nxt is None:
            # maximal within this subtree: the only candidate worth testing
            rest = [e for e in edges if e not in chosen]
            if outerplanar_by_planarity(Graph(g.n, frozenset(rest))):
                return list(chosen)
            return None
        e = edges[nxt]
        chosen.append(e)
        got = rec(nxt + 1)
        if got is not None:
            return got
        chosen.pop()
        return rec(nxt + 1)

    got = rec(0)
    return frozenset(got) if got is not None else None


# --- forest partitions ------------------------------------------------------------


def exists_k_forest_partition(
    g: Graph, k: int, budget: Optional[SearchBudget] = None
) -> Optional[list[frozenset[Edge]]]:
    """Partition E into at most k forests, or prove impossibility.

    The forest capacity count |E| <= k (n - components) is applied first,
    mirroring the counting argument of the two-forest lower bound; then
    plain backtracking with union-find.
    """
    budget = (budget or SearchBudget()).start()
    if k < 0:
        return None
    if g.m == 0:
        return [frozenset() for _ in range(k)]
    comp = len([c for c in g.components() if len(c) > 1])
    capacity = k * (len(g.active_vertices()) - comp)
    if g.m > capacity:
        return None
    edges = sorted(g.edges, key=lambda e: -(g.degree(e[0]) + g.degree(e[1])))
    m = len(edges)
    parents = [list(range(g.n)) for _ in range(k)]
    assigned = [-1] * m

    def find(c: int, x: int) -> int:
        p = parents[c]
        while p[x] != x:
            x = p[x]
        return p[x]

    def rec(i: int, used_max: int) -> bool:
        if i == m:
            return True
        budget.tick()
        u, v = edges[i]
        for c in range(min(k, used_max + 1)):
            ru, rv = find(c, u), find(c, v)
            if ru == rv:
                continue
            parents[c][ru] = rv
            assigned[i] = c
            if rec(i + 1, max(used_max, c + 1)):
                return True
            parents[c][ru] = ru
            assigned[i] = -1
        return False

    if not rec(0, 0):
        return None
    out: list[set[Edge]] = [set() for _ in range(k)]
    for i, e in enumerate(edges):
        out[assigned[i]].add(e)
    return [frozenset(s) for s in out]


# --- corpus enumeration ---------------------------------------------------------


def enumerate_po(n: int, guard: int = 7) -> Iterator[tuple[Graph, Diagram]]:
    """All connected graphs on n vertices, one per isomorphism class, that recognize as PO.

    Backed by the networkx graph atlas (complete for n <= 7), which already
    enumerates isomorphism classes; each graph is paired with its
    minimum-crossing diagram.
    """
    if n > guard or n > 7:
        raise GuardExceededError(f"corpus enumeration limited to n <= {min(guard, 7)}")
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() != n:
            continue
        if n > 0 and not nx.is_connected(h):
            continue
        g = Graph.from_edges(n, ((int(u), int(v)) for u, v in h.edges()))
        d = recognize(g)
        if d is not None:
            yield g, d


def enumerate_connected(n: int, guard: int = 7) -> Iterator[Graph]:
    """All connected graphs on n vertices up to isomorphism (atlas-backed)."""
    if n > guard or n > 7:
        raise GuardExceededError(f"corpus enumeration limited to n <= {min(guard, 7)}")
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() != n:
            continue
        if n > 0 and not nx.is_connected(h):
            continue
        yield Graph.from_edges(n, ((int(u), int(v)) for u, v in h.edges()))
