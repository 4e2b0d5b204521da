"""Pseudo-outerplanar diagrams: circular block layouts with chords crossing at most once.

A diagram assigns every block of a graph a circular vertex order.  Edges
between circularly consecutive vertices are boundary edges; all others are
chords.  Two chords of a block cross when their endpoints interleave around
the circle, and a diagram is valid when every chord is crossed at most once.
A block is drawn in a closed disk when its full bounding circuit is present
as edges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import GuardExceededError, PographError
from .graph import Block, Edge, Graph, blocks, norm_edge


def interleaved(pos: dict[int, int], e: Edge, f: Edge) -> bool:
    """True iff chords e and f of one circle cross (endpoints alternate)."""
    if e[0] in f or e[1] in f:
        return False
    i, j = sorted((pos[e[0]], pos[e[1]]))
    a, b = pos[f[0]], pos[f[1]]
    return (i < a < j) != (i < b < j)


@dataclass(frozen=True)
class BlockGeometry:
    """Derived layout data for one block's circular order."""

    order: tuple[int, ...]
    boundary: frozenset[Edge]
    chords: frozenset[Edge]
    crossing_pairs: frozenset[tuple[Edge, Edge]]
    crossed: frozenset[Edge]
    overcrossed: tuple[Edge, ...]  # chords crossed two or more times

    @property
    def valid(self) -> bool:
        return not self.overcrossed


def block_geometry(order: Sequence[int], edges: Iterable[Edge]) -> BlockGeometry:
    order = tuple(order)
    b = len(order)
    pos = {v: i for i, v in enumerate(order)}
    es = [e for e in edges if e[0] in pos and e[1] in pos]
    boundary, chords = set(), []
    for e in es:
        gap = abs(pos[e[0]] - pos[e[1]])
        if b >= 2 and (gap == 1 or gap == b - 1):
            boundary.add(e)
        else:
            chords.append(e)
    pairs = set()
    count: dict[Edge, int] = {}
    for e, f in itertools.combinations(chords, 2):
        if interleaved(pos, e, f):
            pairs.add(tuple(sorted((e, f))))
            count[e] = count.get(e, 0) + 1
            count[f] = count.get(f, 0) + 1
    crossed = frozenset(itertools.chain.from_iterable(pairs))
    over = tuple(sorted(e for e, c in count.items() if c >= 2))
    return BlockGeometry(order, frozenset(boundary), frozenset(chords),
                         frozenset(pairs), crossed, over)


@dataclass(frozen=True)
class DiagramBlock:
    order: tuple[int, ...]
    closed: bool


@dataclass(frozen=True)
class Diagram:
    """A drawn pseudo-outerplanar layout of a graph: one circular order per block."""

    graph: Graph
    blocks: tuple[DiagramBlock, ...]

    @cached_property
    def geometries(self) -> tuple[BlockGeometry, ...]:
        return tuple(block_geometry(b.order, self.graph.edges) for b in self.blocks)

    @cached_property
    def crossing_pairs(self) -> frozenset[tuple[Edge, Edge]]:
        out: set[tuple[Edge, Edge]] = set()
        for geo in self.geometries:
            out |= geo.crossing_pairs
        return frozenset(out)

    @cached_property
    def crossed_chords(self) -> frozenset[Edge]:
        return frozenset(itertools.chain.from_iterable(self.crossing_pairs))

    def crossing_count(self) -> int:
        return len(self.crossing_pairs)

    def block_of(self, v: int) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if v in b.order]

    def block_containing(self, vertices: Iterable[int]) -> Optional[int]:
        want = set(vertices)
        for i, b in enumerate(self.blocks):
            if want <= set(b.order):
                return i
        return None


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple[str, ...]


def _canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    """Normalize a circular sequence: start at the minimum, lesser neighbor second."""
    seq = list(seq)
    if len(seq) <= 2:
        return tuple(sorted(seq))
    i = seq.index(min(seq))
    rot = seq[i:] + seq[:i]
    if rot[1] > rot[-1]:
        rot = [rot[0]] + rot[1:][::-1]
    return tuple(rot)


def make_diagram(g: Graph, block_orders: Iterable[Sequence[int]]) -> Diagram:
    """Assemble a Diagram from per-block circular orders; closed flags derived."""
    dblocks = []
    for order in block_orders:
        order = _canonical_cycle(order)
        geo = block_geometry(order, g.edges)
        closed = len(order) >= 3 and all(
            norm_edge(order[i], order[(i + 1) % len(order)]) in g.edges
            for i in range(len(order))
        )
        dblocks.append(DiagramBlock(order, closed))
    dblocks.sort(key=lambda b: b.order)
    return Diagram(g, tuple(dblocks))


def validate(d: Diagram) -> ValidationReport:
    """Check all diagram invariants; violations name the offending block or chords."""
    g = d.graph
    problems: list[str] = []
    actual, _ = blocks(g)
    actual_sets = sorted(sorted(b.vertices) for b in actual)
    stored_sets = sorted(sorted(b.order) for b in d.blocks)
    if actual_sets != stored_sets:
        problems.append(
            f"stored blocks {stored_sets} do not match graph blocks {actual_sets}"
        )
    for b, geo in zip(d.blocks, d.geometries):
        if len(set(b.order)) != len(b.order):
            problems.append(f"block {b.order}: repeated vertices")
            continue
        for e in geo.overcrossed:
            partners = sorted(
                f for pair in geo.crossing_pairs for f in pair if e in pair and f != e
            )
            problems.append(f"block {b.order}: chord {e} crossed twice (by {partners})")
        if b.closed:
            if len(b.order) < 3:
                problems.append(f"block {b.order}: closed disk needs >= 3 vertices")
            else:
                for i in range(len(b.order)):
                    e = norm_edge(b.order[i], b.order[(i + 1) % len(b.order)])
                    if e not in g.edges:
                        problems.append(
                            f"block {b.order}: closed but boundary pair {e} missing"
                        )
    return ValidationReport(not problems, tuple(problems))


def crossing_pairs(d: Diagram) -> frozenset[tuple[Edge, Edge]]:
    """All interleaved chord pairs, per block.  Input must validate."""
    rep = validate(d)
    if not rep.valid:
        raise PographError(f"invalid diagram: {rep.violations}")
    return d.crossing_pairs


# --- recognition ------------------------------------------------------------


def _best_block_order(g: Graph, verts: list[int], guard: int) -> Optional[tuple[int, ...]]:
    """Minimum-crossing circular order of one block, or None.

    Exhaustive over circular orders up to rotation and reflection.  Ties are
    broken first toward closed disks, then toward the lexicographically
    least sequence (the enumeration is lexicographic, so the first optimum
    wins).
    """
    b = len(verts)
    if b > guard:
        raise GuardExceededError(f"block with {b} vertices exceeds recognition guard {guard}")
    verts = sorted(verts)
    if b <= 3:
        return tuple(verts)
    es = [e for e in g.edges if e[0] in set(verts) and e[1] in set(verts)]
    first = verts[0]
    best: Optional[tuple[int, int, tuple[int, ...]]] = None
    for rest in itertools.permutations(verts[1:]):
        if rest[0] > rest[-1]:
            continue  # reflection
        order = (first,) + rest
        pos = {v: i for i, v in enumerate(order)}
        chords = [e for e in es if 1 < abs(pos[e[0]] - pos[e[1]]) < b - 1]
        count: dict[Edge, int] = {}
        crossings = 0
        ok = True
        for e, f in itertools.combinations(chords, 2):
            if interleaved(pos, e, f):
                crossings += 1
                count[e] = count.get(e, 0) + 1
                count[f] = count.get(f, 0) + 1
                if count[e] > 1 or count[f] > 1:
                    ok = False
                    break
        if not ok:
            continue
        if best is not None and crossings > best[0]:
            continue
        open_flag = 0 if all(
            norm_edge(order[i], order[(i + 1) % b]) in g.edges for i in range(b)
        ) else 1
        key = (crossings, open_flag, order)
        if best is None or key < best:
            best = key
    return best[2] if best else None


def recognize(g: Graph, guard: int = 10) -> Optional[Diagram]:
    """Find a minimum-crossing pseudo-outerplanar diagram, or None.

    Per block, exhaustively searches circular orders (up to rotation and
    reflection) for one in which every chord is crossed at most once, with
    as few crossings as possible.  Blocks above ``guard`` vertices raise
    GuardExceededError.
    """
    blks, _ = blocks(g)
    orders = []
    for blk in blks:
        order = _best_block_order(g, sorted(blk.vertices), guard)
        if order is None:
            return None
        orders.append(order)
    d = make_diagram(g, orders)
    rep = validate(d)
    if not rep.valid:  # pragma: no cover - recognize output always validates
        raise PographError(f"recognize produced invalid diagram: {rep.violations}")
    return d


# --- hamiltonian rebuilding -------------------------------------------------


def _arc(order: Sequence[int], start: int, stop: int) -> list[int]:
    """Clockwise arc of a circular order from start to stop, inclusive."""
    pos = {v: i for i, v in enumerate(order)}
    b = len(order)
    i = pos[start]
    out = [start]
    while out[-1] != stop:
        i = (i + 1) % b
        out.append(order[i])
    return out


def _ham_split_check(order: tuple[int, ...], edges: frozenset[Edge], cycle: list[int]) -> None:
    """Run the recursive crossing-split of the hamiltonian rebuild, validating structure.

    Splits the drawing at a pair of crossing cycle edges into the two disk
    pieces, recursing until the cycle lies on the boundary.  Raises if the
    drawing violates the structure the split relies on.
    """
    k = len(cycle)
    if k <= 3:
        return
    pos = {v: i for i, v in enumerate(order)}
    cyc_edges = [norm_edge(cycle[i], cycle[(i + 1) % k]) for i in range(k)]
    crossing = None
    for e, f in itertools.combinations(sorted(cyc_edges), 2):
        if interleaved(pos, e, f):
            crossing = (e, f)
            break
    if crossing is None:
        # cycle edges pairwise non-crossing: with all of V on one circle this
        # forces the cycle to be the boundary, nothing left to do
        return
    e, f = crossing
    succ = {cycle[i]: cycle[(i + 1) % k] for i in range(k)}

    found = None
    for direction in (1, -1):
        s = succ if direction == 1 else {v: u for u, v in succ.items()}
        for a in e:
            a2 = s[a]
            if norm_edge(a, a2) != e:
                continue
            for bb in f:
                b2 = s[bb]
                if norm_edge(bb, b2) != f:
                    continue
                for orient in (order, tuple(reversed(order))):
                    # need circular pattern a, bb, ..., a2, b2, ... (arcs between
                    # a-bb and a2-b2 empty)
                    arc_ab = _arc(orient, a, bb)
                    if len(arc_ab) != 2:
                        continue
                    arc_a2b2 = _arc(orient, a2, b2)
                    if len(arc_a2b2) != 2:
                        continue
                    found = (a, a2, bb, b2, orient, s)
                    break
                if found:
                    break
            if found:
                break
        if found:
            break
    if found is None:
        raise PographError(
            f"crossing cycle edges {e}, {f} lack the junction arc structure"
        )
    a, a2, bb, b2, orient, s = found
    u_arc = _arc(orient, b2, a)     # [v_{k+1} .. v_j]
    w_arc = _arc(orient, bb, a2)    # hmm: [v_k .. v_{j+1}] reversed arc
    if set(u_arc) & set(w_arc) or len(u_arc) + len(w_arc) != len(order):
        raise PographError("crossing split arcs do not partition the block")
    u_set, w_set = set(u_arc), set(w_arc)
    allowed = {e, f, norm_edge(a, bb), norm_edge(a2, b2)}
    for ed in edges:
        if (ed[0] in u_set) != (ed[1] in u_set) and ed not in allowed:
            raise PographError(f"unexpected edge {ed} between the split sides")
    # cycle intervals: b2 -> a along succ, a2 -> bb along succ
    cyc1 = [b2]
    while cyc1[-1] != a:
        cyc1.append(s[cyc1[-1]])
    cyc2 = [a2]
    while cyc2[-1] != bb:
        cyc2.append(s[cyc2[-1]])
    if set(cyc1) != u_set or set(cyc2) != w_set:
        raise PographError("cycle intervals do not match the split arcs")
    for arc, piece, helper in ((u_arc, cyc1, norm_edge(a, b2)), (w_arc, cyc2, norm_edge(a2, bb))):
        sub_edges = frozenset(
            ed for ed in edges if ed[0] in set(arc) and ed[1] in set(arc)
        ) | {helper}
        if len(piece) >= 3:
            _ham_split_check(tuple(arc), sub_edges, piece)


def to_hamiltonian_diagram(d: Diagram, cycle: Sequence[int]) -> Diagram:
    """Redraw one 2-connected block so the given hamiltonian cycle is its boundary.

    The drawing is rebuilt by recursively splitting at pairs of crossing
    cycle edges; the rest of the diagram is untouched.  The edge set never
    changes and the output validates.
    """
    cyc = list(cycle)
    if len(cyc) >= 2 and cyc[0] == cyc[-1]:
        cyc = cyc[:-1]
    if len(cyc) < 3 or len(set(cyc)) != len(cyc):
        raise PographError("cycle must list at least three distinct vertices")
    g = d.graph
    for i in range(len(cyc)):
        if not g.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]):
            raise PographError(f"not a cycle: missing edge {cyc[i]}-{cyc[(i + 1) % len(cyc)]}")
    idx = next(
        (i for i, b in enumerate(d.blocks) if set(b.order) == set(cyc)), None
    )
    if idx is None:
        raise PographError("cycle is not a hamiltonian cycle of any block")
    blk = d.blocks[idx]
    block_edges = frozenset(
        e for e in g.edges if e[0] in set(blk.order) and e[1] in set(blk.order)
    )
    _ham_split_check(blk.order, block_edges, cyc)
    new_blocks = list(d.blocks)
    new_blocks[idx] = DiagramBlock(_canonical_cycle(cyc), True)
    new_blocks.sort(key=lambda b: b.order)
    out = Diagram(g, tuple(new_blocks))
    rep = validate(out)
    if not rep.valid:
        raise PographError(f"hamiltonian redraw failed to validate: {rep.violations}")
    return out


# --- quasi-hamiltonian closure ----------------------------------------------


def quasi_hamiltonize(d: Diagram) -> tuple[Diagram, frozenset[Edge]]:
    """Close every block's circumferential boundary by adding missing boundary edges.

    Helper edges run between circularly consecutive vertices, so they never
    create crossings.  Blocks on two vertices need no helpers.
    """
    helpers: set[Edge] = set()
    for b in d.blocks:
        if len(b.order) < 3:
            continue
        for i in range(len(b.order)):
            e = norm_edge(b.order[i], b.order[(i + 1) % len(b.order)])
            if e not in d.graph.edges:
                helpers.add(e)
    g2 = d.graph.add_edges(helpers)
    out = make_diagram(g2, (b.order for b in d.blocks))
    rep = validate(out)
    if not rep.valid:  # pragma: no cover - boundary edges cannot cross
        raise PographError(f"quasi-hamiltonize broke the diagram: {rep.violations}")
    return out, frozenset(helpers)


# --- maximal completion -------------------------------------------------------


def _fixed_order_completion(d: Diagram) -> tuple[Diagram, set[Edge]]:
    """Greedily add edges between existing circular positions while valid."""
    g = d.graph
    added: set[Edge] = set()
    orders = [b.order for b in d.blocks]
    for order in orders:
        vs = sorted(order)
        pos = {v: i for i, v in enumerate(order)}
        b = len(order)
        geo = block_geometry(order, g.edges)
        chords = set(geo.chords)
        crossed = set(geo.crossed)
        new_edges: set[Edge] = set()
        changed = True
        while changed:
            changed = False
            for u, v in itertools.combinations(vs, 2):
                e = norm_edge(u, v)
                if e in g.edges or e in new_edges:
                    continue
                gap = abs(pos[u] - pos[v])
                if b >= 3 and (gap == 1 or gap == b - 1):
                    new_edges.add(e)
                    changed = True
                    continue
                partners = [f for f in chords if interleaved(pos, e, f)]
                if len(partners) > 1:
                    continue
                if partners and partners[0] in crossed:
                    continue
                new_edges.add(e)
                chords.add(e)
                if partners:
                    crossed.add(e)
                    crossed.add(partners[0])
                changed = True
        if new_edges:
            g = g.add_edges(new_edges)
            added |= new_edges
    return make_diagram(g, orders), added


def maximal_completion(d: Diagram, recognize_guard: int = 10) -> tuple[Diagram, frozenset[Edge]]:
    """Add edges until no further edge keeps the drawing pseudo-outerplanar.

    First completes greedily at the fixed circular orders, then, when every
    block is within the recognition guard, confirms graph-level maximality
    by re-recognizing each candidate extension and iterates to a fixed
    point.  Above the guard (or with the guard set to 0) the fixed-order
    completion is the result.  Candidate edges join vertices that already
    carry an edge.
    """
    cur, added = _fixed_order_completion(d)
    confirmable = recognize_guard > 0
    while confirmable:
        g = cur.graph
        active = g.active_vertices()
        if not active:
            break
        extension = None
        for u, v in itertools.combinations(active, 2):
            if g.has_edge(u, v):
                continue
            try:
                d2 = recognize(g.add_edges([(u, v)]), guard=recognize_guard)
            except GuardExceededError:
                confirmable = False  # too large to confirm; keep fixed-order result
                break
            if d2 is not None:
                extension = (u, v, d2)
                break
        if extension is None:
            break
        u, v, d2 = extension
        added.add(norm_edge(u, v))
        cur, more = _fixed_order_completion(d2)
        added |= more
    return cur, frozenset(added)


# --- surgery ------------------------------------------------------------------


def surgery(
    d: Diagram,
    remove: Iterable[int] = (),
    add: Iterable[tuple[int, int]] = (),
    contract: Iterable[tuple[int, int]] = (),
    drop_edges: Iterable[tuple[int, int]] = (),
) -> Optional[Diagram]:
    """Edit a diagram in place on its circular orders; None if the result cannot be drawn.

    Removed vertices leave their block order; added edges must join vertices
    whose surviving positions lie in one common old block (or involve a
    vertex left isolated by the removals, which re-enters at its old
    position).  Contractions keep the first vertex's position.  The new
    block structure is re-derived and each new block inherits the induced
    sub-order.  Returns None when some new block straddles two old orders
    or the result fails validation.
    """
    g = d.graph
    remove = set(remove)
    g2 = g.isolate_vertices(remove)
    g2 = g2.remove_edges(drop_edges)
    g2 = g2.add_edges(add)
    dropped: set[int] = set()
    for keep, drop in contract:
        g2 = g2.contract_edge(keep, drop)
        dropped.add(drop)
    surviving_orders = []
    for b in d.blocks:
        order = tuple(v for v in b.order if v not in remove and v not in dropped)
        if len(order) >= 1:
            surviving_orders.append(order)
    new_blocks, _ = blocks(g2)
    orders_out = []
    for blk in new_blocks:
        host = None
        for order in surviving_orders:
            if blk.vertices <= set(order):
                host = order
                break
        if host is None:
            return None
        orders_out.append(tuple(v for v in host if v in blk.vertices))
    out = make_diagram(g2, orders_out)
    rep = validate(out)
    if not rep.valid:
        return None
    return out


def block_subdiagram(d: Diagram, index: int) -> Diagram:
    """The single-block diagram spanned by one block of d (same vertex ids)."""
    b = d.blocks[index]
    keep = set(b.order)
    g2 = Graph(d.graph.n, frozenset(
        e for e in d.graph.edges if e[0] in keep and e[1] in keep
    ))
    return make_diagram(g2, [b.order])
