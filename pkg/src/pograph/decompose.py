"""Constructive edge decompositions of pseudo-outerplanar graphs.

Implements the crossed-chord forest extraction on hamiltonian block
diagrams, whole-graph outerplanar-plus-forest covers, peeling of maximal
diagrams into glued triangles and K4s, and the two-forests-plus-matching
decomposition built on top of the peeling.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .diagram import (
    Diagram,
    DiagramBlock,
    block_geometry,
    block_subdiagram,
    make_diagram,
    maximal_completion,
    quasi_hamiltonize,
    recognize,
    surgery,
    validate,
)
from .errors import NotPseudoOuterplanarError, PographError
from .graph import (
    Decomposition,
    Edge,
    Graph,
    blocks,
    classify_subgraph,
    norm_edge,
    star_roots,
)


@dataclass(frozen=True)
class ExtractionResult:
    """A crossed-chord forest plus the uncrossed remainder diagram."""

    forest: frozenset[Edge]
    remainder: Diagram


# --- the hamiltonian-block extraction recursion -----------------------------


def _circular_nbrs(order: tuple[int, ...], y: int) -> tuple[int, int]:
    pos = {v: i for i, v in enumerate(order)}
    b = len(order)
    i = pos[y]
    return order[(i - 1) % b], order[(i + 1) % b]  # predecessor (x), successor (z)


def _arc(order: tuple[int, ...], start: int, stop: int) -> tuple[int, ...]:
    pos = {v: i for i, v in enumerate(order)}
    b = len(order)
    i = pos[start]
    out = [start]
    while out[-1] != stop:
        i = (i + 1) % b
        out.append(order[i])
    return tuple(out)


def _induced_plus(edges: frozenset[Edge], verts: tuple[int, ...], extra: tuple[Edge, ...]) -> frozenset[Edge]:
    keep = set(verts)
    sub = {e for e in edges if e[0] in keep and e[1] in keep}
    sub.update(extra)
    return frozenset(sub)


def _extract_linear(order: tuple[int, ...], edges: frozenset[Edge], y: int) -> set[Edge]:
    """Linear forest extraction on one closed hamiltonian block drawing.

    The three proof cases drive the recursion: degree-2 contraction, the
    flank-chord split at the crossing partner's endpoint, and the split at
    y's second clockwise neighbor (with its two null sub-cases).  Helper
    edges always close an arc, so they sit on the boundary of the piece
    that receives them and never reach the crossed chords.
    """
    geo = block_geometry(order, edges)
    if not geo.crossing_pairs:
        return set()
    b = len(order)
    x, z = _circular_nbrs(order, y)
    nbrs_y = {e[0] if e[1] == y else e[1] for e in edges if y in e}
    d_y = len(nbrs_y)
    xz = norm_edge(x, z)

    if d_y == 2:
        # drop y, close the boundary with xz, recurse with x as the new center
        new_order = tuple(v for v in order if v != y)
        new_edges = frozenset(e for e in edges if y not in e) | {xz}
        return _extract_linear(new_order, new_edges, x)

    if xz in edges:
        if d_y != 3:
            raise PographError(f"flank chord {xz} with center degree {d_y} is undrawable")
        w = next(iter(nbrs_y - {x, z}))
        pos = {v: i for i, v in enumerate(order)}
        after_z = order[(pos[z] + 1) % b]
        before_x = order[(pos[x] - 1) % b]
        if after_z == w:
            sub = _arc(order, w, x)
            t = _extract_linear(sub, _induced_plus(edges, sub, (norm_edge(w, x),)), x)
        elif before_x == w:
            sub = _arc(order, z, w)
            t = _extract_linear(sub, _induced_plus(edges, sub, (norm_edge(z, w),)), z)
        else:
            sub1 = _arc(order, z, w)
            sub2 = _arc(order, w, x)
            t = _extract_linear(sub1, _induced_plus(edges, sub1, (norm_edge(z, w),)), z)
            t |= _extract_linear(sub2, _induced_plus(edges, sub2, (norm_edge(w, x),)), x)
        t.add(xz)
        return t

    # d_y >= 3 and xz not an edge: split at y's second clockwise neighbor
    pos = {v: i for i, v in enumerate(order)}
    clockwise = [order[(pos[y] + i) % b] for i in range(1, b)]
    ynbrs_cw = [v for v in clockwise if v in nbrs_y]
    y2 = ynbrs_cw[1]
    yy2 = norm_edge(y, y2)
    partner = None
    for e, f in geo.crossing_pairs:
        if e == yy2:
            partner = f
        elif f == yy2:
            partner = e
    if partner is None:
        sub1 = _arc(order, y, y2)
        sub2 = _arc(order, y2, y)
        t = _extract_linear(sub1, _induced_plus(edges, sub1, ()), y)
        t |= _extract_linear(sub2, _induced_plus(edges, sub2, ()), y)
        return t

    between = set(_arc(order, y, y2)[1:-1])
    if partner[0] not in between and partner[1] not in between:
        raise PographError(f"chord {partner} fails to interleave {yy2}")
    l, r = (partner[0], partner[1]) if partner[0] in between else (partner[1], partner[0])

    t: set[Edge] = set()
    if l != z:
        sub1 = _arc(order, y, l)
        t |= _extract_linear(sub1, _induced_plus(edges, sub1, (norm_edge(y, l),)), y)
    sub2 = (y,) + _arc(order, l, r)
    t |= _extract_linear(sub2, _induced_plus(edges, sub2, (norm_edge(y, l), norm_edge(y, r))), y)
    if r != x:
        sub3 = _arc(order, r, y)
        t |= _extract_linear(sub3, _induced_plus(edges, sub3, (norm_edge(y, r),)), y)
    return t


def _extract_star(order: tuple[int, ...], edges: frozenset[Edge], y: int) -> set[Edge]:
    """Star forest extraction by exact search over crossing-pair selections.

    The remainder is uncrossed exactly when the extraction hits every
    crossing pair, and any valid extraction shrinks to one chord per pair,
    so the search space is one binary choice per pair.  Plain DFS with
    star-shape pruning; the mirrored three-case recursion is unsound here
    (two split joints can share a bridging chord), so the guaranteed
    existence is realized by search instead.
    """
    geo = block_geometry(order, edges)
    pairs = sorted(geo.crossing_pairs)
    if not pairs:
        return set()
    x, z = _circular_nbrs(order, y)
    chosen: list[Edge] = []
    deg: dict[int, int] = {}
    adj: dict[int, set[int]] = {}
    parent: dict[int, int] = {}

    def find(a: int) -> int:
        parent.setdefault(a, a)
        root = a
        while parent[root] != root:
            root = parent[root]
        return root

    def ok_to_add(u: int, v: int) -> bool:
        if y in (u, v):
            return False
        if find(u) == find(v):
            return False
        du, dv = deg.get(u, 0), deg.get(v, 0)
        if du >= 1 and dv >= 1:
            return False  # edge would join two star centers
        if du >= 1 and any(deg[t] >= 2 for t in adj.get(u, ())):
            return False  # u is a leaf of a bigger star and may not grow
        if dv >= 1 and any(deg[t] >= 2 for t in adj.get(v, ())):
            return False
        return True

    def flanks_ok() -> bool:
        roots = star_roots(chosen)
        for fl in (x, z):
            if deg.get(fl, 0) > 0 and fl not in roots:
                return False
        return True

    def rec(i: int) -> bool:
        if i == len(pairs):
            return flanks_ok()
        for cand in pairs[i]:
            u, v = cand
            if not ok_to_add(u, v):
                continue
            ru, rv = find(u), find(v)
            parent[ru] = rv
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
            chosen.append(cand)
            if rec(i + 1):
                return True
            chosen.pop()
            adj[u].discard(v)
            adj[v].discard(u)
            deg[u] -= 1
            deg[v] -= 1
            parent[ru] = ru
        return False

    if not rec(0):
        raise PographError("no star-forest selection hits every crossing pair")
    return set(chosen)


def _extract_star_weak(order: tuple[int, ...], edges: frozenset[Edge], y: int) -> set[Edge]:
    """Star forest avoiding y whose removal leaves an outerplanar graph.

    Fallback for blocks where no star forest hits every crossing pair in
    the given drawing (the forced partner chords of y's crossed chords can
    interlock).  Pairs may then survive in the drawing as long as the
    remainder graph itself is outerplanar, which is all the whole-graph
    cover promises.
    """
    from .oracles import outerplanar_by_planarity

    geo = block_geometry(order, edges)
    pairs = sorted(geo.crossing_pairs)
    chosen: list[Edge] = []
    deg: dict[int, int] = {}
    adj: dict[int, set[int]] = {}
    parent: dict[int, int] = {}

    def find(a: int) -> int:
        parent.setdefault(a, a)
        root = a
        while parent[root] != root:
            root = parent[root]
        return root

    def ok_to_add(u: int, v: int) -> bool:
        if y in (u, v) or find(u) == find(v):
            return False
        du, dv = deg.get(u, 0), deg.get(v, 0)
        if du >= 1 and dv >= 1:
            return False
        if du >= 1 and any(deg[t] >= 2 for t in adj.get(u, ())):
            return False
        if dv >= 1 and any(deg[t] >= 2 for t in adj.get(v, ())):
            return False
        return True

    def remainder_ok() -> bool:
        rest = frozenset(edges - set(chosen))
        n = max(order) + 1
        return outerplanar_by_planarity(Graph(n, rest))

    def rec(i: int) -> bool:
        if i == len(pairs):
            return remainder_ok()
        options: list[Optional[Edge]] = [cand for cand in pairs[i] if y not in cand]
        options.append(None)  # leave the pair crossed in the drawing
        for cand in options:
            if cand is None:
                if rec(i + 1):
                    return True
                continue
            u, v = cand
            if not ok_to_add(u, v):
                continue
            ru, rv = find(u), find(v)
            parent[ru] = rv
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
            chosen.append(cand)
            if rec(i + 1):
                return True
            chosen.pop()
            adj[u].discard(v)
            adj[v].discard(u)
            deg[u] -= 1
            deg[v] -= 1
            parent[ru] = ru
        return False

    if not rec(0):
        raise PographError("no star forest leaves this block outerplanar")
    return set(chosen)


def _check_extraction(d: Diagram, y: int, x: int, z: int, t: set[Edge], star: bool) -> ExtractionResult:
    blk = d.blocks[0]
    g = d.graph
    if not t <= d.crossed_chords:
        raise PographError(f"extraction left the crossed chords: {sorted(t - d.crossed_chords)}")
    kinds = classify_subgraph(g, t)
    deg: dict[int, int] = {}
    for u, v in t:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    if deg.get(y, 0) != 0:
        raise PographError(f"center {y} touched by extraction")
    if star:
        if not kinds.is_star_forest:
            raise PographError("extraction is not a star forest")
        roots = star_roots(t)
        for fl in (x, z):
            if deg.get(fl, 0) > 0 and fl not in roots:
                raise PographError(f"flank {fl} appears as a non-root")
    else:
        if not kinds.is_linear_forest:
            raise PographError("extraction is not a linear forest")
        if max(deg.get(x, 0), deg.get(z, 0)) > 1:
            raise PographError("flank degree exceeds 1")
    rest = Graph(g.n, g.edges - t)
    remainder = make_diagram(rest, [blk.order] if len(blk.order) else [])
    if remainder.crossing_count() != 0:
        raise PographError("remainder still has crossings")
    return ExtractionResult(frozenset(t), remainder)


def _single_block(d: Diagram) -> DiagramBlock:
    if len(d.blocks) != 1:
        raise PographError("operation expects a single 2-connected block diagram")
    return d.blocks[0]


def extract_linear_forest(d: Diagram, y: int, x: int, z: int) -> ExtractionResult:
    """Linear forest inside the crossed chords avoiding y, nearly avoiding x and z.

    The block must be 2-connected and drawn in a closed disk with x, z the
    circular neighbors of y.  The remainder redraws with zero crossings.
    """
    blk = _prepare_block(d, y, x, z)
    t = _extract_linear(blk.order, _block_edges(d, blk), y)
    return _check_extraction(d, y, x, z, t, star=False)


def extract_star_forest(d: Diagram, y: int, x: int, z: int) -> ExtractionResult:
    """Star forest inside the crossed chords avoiding y; x, z only ever as roots."""
    blk = _prepare_block(d, y, x, z)
    t = _extract_star(blk.order, _block_edges(d, blk), y)
    return _check_extraction(d, y, x, z, t, star=True)


def _block_edges(d: Diagram, blk: DiagramBlock) -> frozenset[Edge]:
    keep = set(blk.order)
    return frozenset(e for e in d.graph.edges if e[0] in keep and e[1] in keep)


def _prepare_block(d: Diagram, y: int, x: int, z: int) -> DiagramBlock:
    blk = _single_block(d)
    if not blk.closed:
        raise PographError("extraction needs a closed (hamiltonian) disk")
    a, b = _circular_nbrs(blk.order, y)
    if {a, b} != {x, z}:
        raise PographError(f"{x},{z} are not the boundary neighbors of {y}")
    return blk


# --- whole-graph covers -------------------------------------------------------


def _block_forest(g: Graph) -> list[tuple[int, Optional[int]]]:
    """Blocks of g as (block index, parent cut vertex) in processing order."""
    blks, cuts = blocks(g)
    by_vertex: dict[int, list[int]] = {}
    for i, b in enumerate(blks):
        for v in b.vertices:
            by_vertex.setdefault(v, []).append(i)
    seen: set[int] = set()
    out: list[tuple[int, Optional[int]]] = []
    for start in sorted(range(len(blks)), key=lambda i: sorted(blks[i].vertices)):
        if start in seen:
            continue
        seen.add(start)
        queue: list[tuple[int, Optional[int]]] = [(start, None)]
        while queue:
            i, pv = queue.pop(0)
            out.append((i, pv))
            for v in sorted(blks[i].vertices):
                if v not in cuts:
                    continue
                for j in by_vertex[v]:
                    if j not in seen:
                        seen.add(j)
                        queue.append((j, v))
    return out


def cover_outerplanar_plus(g: Graph, kind: str, diagram: Optional[Diagram] = None) -> Decomposition:
    """Split E(g) into a linear or star forest plus an outerplanar remainder.

    Works block by block on the quasi-hamiltonian closure, rooting the block
    forest so every extraction centers on the cut vertex toward the parent;
    the boundary helpers never enter the forest and are stripped at the end.
    """
    if kind not in ("linear-forest", "star-forest"):
        raise ValueError("kind must be linear-forest or star-forest")
    d = diagram if diagram is not None else recognize(g)
    if d is None:
        raise NotPseudoOuterplanarError("not pseudo-outerplanar")
    dq, helpers = quasi_hamiltonize(d)
    blks, _ = blocks(dq.graph)
    order_of = {frozenset(b.order): b.order for b in dq.blocks}
    t: set[Edge] = set()
    for idx, parent_cut in _block_forest(dq.graph):
        blk = blks[idx]
        if len(blk.vertices) < 3:
            continue
        order = order_of[blk.vertices]
        block_edges = frozenset(blk.edges)
        if kind == "linear-forest":
            y = parent_cut if parent_cut is not None else min(order)
            t |= _extract_linear(order, block_edges, y)
            continue
        # Star kind: centering on a cut vertex can make hitting every
        # crossing pair impossible (its crossed chords force an interlocked
        # partner set), so root blocks scan centers and cut-vertex centers
        # fall back to a remainder that is outerplanar as a graph.
        centers = [parent_cut] if parent_cut is not None else sorted(order)
        got: Optional[set[Edge]] = None
        for y in centers:
            try:
                got = _extract_star(order, block_edges, y)
                break
            except PographError:
                continue
        if got is None:
            got = _extract_star_weak(order, block_edges, centers[0])
        t |= got
    if t & helpers:
        raise PographError("helper edges leaked into the forest")
    dec = Decomposition(((kind, frozenset(t)), ("outerplanar-remainder", g.edges - t)))
    return dec


# --- peeling maximal diagrams ---------------------------------------------------


@dataclass(frozen=True)
class PeelStep:
    piece_kind: str               # "K3" | "K4"
    piece: tuple[int, ...]        # K3: (x, apex, y); K4: (x, u, v, y)
    glue: Edge
    smaller: Diagram


def peel_maximal(d: Diagram, avoid_inner: Optional[int] = None) -> PeelStep:
    """Split one glued K3 or K4 off a maximal 2-connected diagram.

    Scans for a degree-2 apex over an uncrossed short chord (K3) or four
    consecutive vertices with crossed inner chords and degree-3 inner pair
    (K4).  ``avoid_inner`` deprioritizes K4 peels that would delete the
    given vertex (used to keep matching edges off cut vertices).
    """
    blk = _single_block(d)
    order = blk.order
    b = len(order)
    if b < 3:
        raise PographError("atomic")
    g = d.graph
    geo = d.geometries[0]

    k3_sites = []
    for p in range(b):
        v = order[p]
        a, c = order[(p - 1) % b], order[(p + 1) % b]
        e = norm_edge(a, c)
        if g.degree(v) == 2 and e in g.edges and e not in geo.crossed:
            k3_sites.append((v, a, c))
    if k3_sites:
        v, a, c = min(k3_sites)
        smaller = surgery(d, remove=[v])
        if smaller is None:  # pragma: no cover - vertex removal keeps validity
            raise PographError("peel removal failed to redraw")
        x, y = min(a, c), max(a, c)
        return PeelStep("K3", (x, v, y), norm_edge(a, c), smaller)

    k4_sites = []
    for p in range(b):
        vi, vk, vj, vl = (order[p], order[(p + 1) % b], order[(p + 2) % b], order[(p + 3) % b])
        if len({vi, vk, vj, vl}) < 4:
            continue
        if norm_edge(vi, vj) in g.edges and norm_edge(vk, vl) in g.edges \
                and norm_edge(vi, vl) in g.edges \
                and g.degree(vk) == 3 and g.degree(vj) == 3:
            penalty = 1 if avoid_inner in (vk, vj) else 0
            k4_sites.append((penalty, min(vi, vl), vi, vk, vj, vl))
    if not k4_sites:
        raise PographError("no K3 or K4 peel available; diagram is not maximal")
    _, _, vi, vk, vj, vl = min(k4_sites)
    smaller = surgery(d, remove=[vk, vj])
    if smaller is None:  # pragma: no cover
        raise PographError("peel removal failed to redraw")
    x, y = (vi, vl) if vi < vl else (vl, vi)
    u, v = (vk, vj) if vi < vl else (vj, vk)
    return PeelStep("K4", (x, u, v, y), norm_edge(vi, vl), smaller)


# --- two forests plus a matching --------------------------------------------------


def two_forests_plus_matching(g: Graph, diagram: Optional[Diagram] = None) -> Decomposition:
    """Partition E(g) into two forests and a matching.

    Per block: complete to a maximal diagram, peel glued K3s and K4s,
    assigning the triangle legs to the two forests and each K4's inner pair
    edge to the matching, then restrict away the completion helpers.  K4
    peels avoid deleting the parent cut vertex so matching edges never
    collide at cut vertices.
    """
    d = diagram if diagram is not None else recognize(g)
    if d is None:
        raise NotPseudoOuterplanarError("not pseudo-outerplanar")
    blks, _ = blocks(g)
    order_of = {frozenset(b.order): b.order for b in d.blocks}
    f1: set[Edge] = set()
    f2: set[Edge] = set()
    mat: set[Edge] = set()
    for idx, parent_cut in _block_forest(g):
        blk = blks[idx]
        if len(blk.edges) == 1:
            f1 |= blk.edges
            continue
        # fixed-order maximality is all the peel's case analysis relies on
        sub = make_diagram(Graph(g.n, blk.edges), [order_of[frozenset(blk.vertices)]])
        cur, _added = maximal_completion(sub, recognize_guard=0)
        while len(cur.graph.active_vertices()) >= 3:
            step = peel_maximal(cur, avoid_inner=parent_cut)
            if step.piece_kind == "K3":
                x, apex, y = step.piece
                f1.add(norm_edge(x, apex))
                f2.add(norm_edge(y, apex))
            else:
                x, u, v, y = step.piece
                f1.add(norm_edge(x, u))
                f1.add(norm_edge(x, v))
                f2.add(norm_edge(y, u))
                f2.add(norm_edge(y, v))
                mat.add(norm_edge(u, v))
            cur = step.smaller
        f1 |= cur.graph.edges  # the final glue edge
    dec = Decomposition((
        ("forest", frozenset(f1 & g.edges)),
        ("forest", frozenset(f2 & g.edges)),
        ("matching", frozenset(mat & g.edges)),
    ))
    return dec
