"""Constructors for the graph families used as examples and counterexamples.

Each generator returns the graph together with a hand-built diagram that is
validated before being returned, so downstream code can rely on the drawing
without re-running recognition.
"""

from __future__ import annotations

import random
from typing import Optional

from .diagram import Diagram, block_geometry, interleaved, make_diagram, validate
from .errors import PographError
from .graph import Graph, norm_edge


def _checked(g: Graph, orders) -> Diagram:
    d = make_diagram(g, orders)
    rep = validate(d)
    if not rep.valid:  # pragma: no cover - generators are fixed constructions
        raise PographError(f"generator produced invalid diagram: {rep.violations}")
    return d


def gen_pn(n: int) -> tuple[Graph, Diagram]:
    """Class-2 family with maximum degree 3: a prism-like belt of order 2n+5.

    Cycle x0..xn w yn..y0 v u x0 plus rungs x_i y_i (1 <= i <= n) and the
    two extra edges x0 v and y0 u.  3n+7 edges.
    """
    if n < 1:
        raise ValueError("n >= 1")
    xs = list(range(n + 1))              # x0..xn
    w = n + 1
    ys = list(range(n + 2, 2 * n + 3))   # yn..y0 in cycle order
    v = 2 * n + 3
    u = 2 * n + 4
    ring = xs + [w] + ys + [v, u]
    edges = [(ring[i], ring[(i + 1) % len(ring)]) for i in range(len(ring))]
    y_by_index = {n - i: ys[i] for i in range(n + 1)}  # ys runs yn..y0
    edges += [(xs[i], y_by_index[i]) for i in range(1, n + 1)]
    edges += [(xs[0], v), (y_by_index[0], u)]
    g = Graph.from_edges(2 * n + 5, edges)
    return g, _checked(g, [ring])


def gen_qn(n: int) -> tuple[Graph, Diagram]:
    """Tight linear-arboricity family: ring of triangles, 5n vertices, 9n edges.

    Cycle z1..z2n with disjoint triangles u_i v_i w_i, each attached by the
    four edges v_i z_{2i-1}, v_i z_{2i}, w_i z_{2i-1}, w_i z_{2i}.  Maximum
    degree 4; for odd n the linear arboricity is 3, one above the trivial
    lower bound.  9n edges, except n=1 where the two-vertex "cycle"
    degenerates to a single edge (8 edges).
    """
    if n < 1:
        raise ValueError("n >= 1")
    zs = list(range(2 * n))                      # z_1..z_2n -> ids 0..2n-1
    tri = [(2 * n + 3 * i, 2 * n + 3 * i + 1, 2 * n + 3 * i + 2) for i in range(n)]
    edges = [(zs[i], zs[(i + 1) % (2 * n)]) for i in range(2 * n)]
    order: list[int] = []
    for i in range(n):
        u_i, v_i, w_i = tri[i]
        z_odd, z_even = zs[2 * i], zs[2 * i + 1]   # z_{2i-1}, z_{2i}
        edges += [(u_i, v_i), (v_i, w_i), (w_i, u_i)]
        edges += [(v_i, z_odd), (v_i, z_even), (w_i, z_odd), (w_i, z_even)]
        order += [z_odd, v_i, u_i, w_i, z_even]
    g = Graph.from_edges(5 * n, edges)
    return g, _checked(g, [order])


def gen_gn(n: int) -> tuple[Graph, Diagram]:
    """Two-forest counterexample family: cycle plus a fan and even-index chords.

    Cycle v1..vn, chords v1 v_i for 3 <= i <= n-1 and v_{2i} v_{2i+2} for
    1 <= i <= floor(n/2)-1; size floor(5n/2)-4.
    """
    if n < 6:
        raise ValueError("n >= 6")
    edges = [(i, (i + 1) % n) for i in range(n)]            # v_k = id k-1
    edges += [(0, i - 1) for i in range(3, n)]              # v1 v_i
    edges += [(2 * i - 1, 2 * i + 1) for i in range(1, n // 2)]  # v_{2i} v_{2i+2}
    g = Graph.from_edges(n, edges)
    assert g.m == (5 * n) // 2 - 4
    return g, _checked(g, [list(range(n))])


MAT12_SETS = tuple(
    tuple(norm_edge(a % 12, b % 12) for a, b in
          ((i, i + 1), (i, i + 2), (i, i + 3), (i + 1, i + 3), (i + 2, i + 3)))
    for i in (0, 3, 6, 9)  # v_1, v_4, v_7, v_10 zero-based
)


def gen_mat12() -> tuple[Graph, Diagram]:
    """The 12-vertex graph with no outerplanar-plus-matching decomposition.

    Four overlapping 5-edge clusters S_1, S_4, S_7, S_10 around the circle
    plus the two long diagonals v1 v7 and v4 v10; 22 edges.
    """
    edges = {e for s in MAT12_SETS for e in s}
    edges |= {norm_edge(0, 6), norm_edge(3, 9)}
    g = Graph.from_edges(12, edges)
    assert g.m == 22
    return g, _checked(g, [list(range(12))])


def gen_fig1() -> tuple[Graph, Diagram]:
    """K4 and K2,3 sharing exactly one vertex: two blocks, one cut vertex.

    The K4 block sits in a closed disk; the K2,3 block only fits an open
    disk.  8 vertices, 12 edges.
    """
    # K4 on 0..3; K2,3 with parts {0, 4} and {5, 6, 7}; shared vertex 0
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    edges += [(0, 5), (0, 6), (0, 7), (4, 5), (4, 6), (4, 7)]
    g = Graph.from_edges(8, edges)
    return g, _checked(g, [(0, 1, 2, 3), (5, 0, 6, 4, 7)])


def gen_random_po(n: int, seed: int, chord_density: float) -> Diagram:
    """Seeded random closed-disk diagram: shuffled boundary cycle plus random chords.

    Candidate chords are accepted only while every chord stays crossed at
    most once, so the output always validates.  Deterministic in (n, seed,
    chord_density).
    """
    if n < 3:
        raise ValueError("n >= 3")
    if not 0.0 <= chord_density <= 1.0:
        raise ValueError("density in [0, 1]")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    pos = {v: i for i, v in enumerate(order)}
    edges = {norm_edge(order[i], order[(i + 1) % n]) for i in range(n)}
    candidates = [
        norm_edge(u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if norm_edge(u, v) not in edges
    ]
    rng.shuffle(candidates)
    chords: list[tuple[int, int]] = []
    crossed: set[tuple[int, int]] = set()
    for cand in candidates:
        if rng.random() >= chord_density:
            continue
        partners = [c for c in chords if interleaved(pos, cand, c)]
        if len(partners) > 1:
            continue
        if partners and (partners[0] in crossed):
            continue
        chords.append(cand)
        if partners:
            crossed.add(cand)
            crossed.add(partners[0])
        edges.add(cand)
    g = Graph.from_edges(n, edges)
    return _checked(g, [order])


FAMILIES = ("pn", "qn", "gn", "mat12", "fig1", "random")


def generate(family: str, n: Optional[int] = None, seed: int = 0,
             density: float = 0.3) -> tuple[Graph, Diagram]:
    """Dispatch a family name to its generator (CLI entry point)."""
    if family == "pn":
        return gen_pn(n if n is not None else 1)
    if family == "qn":
        return gen_qn(n if n is not None else 3)
    if family == "gn":
        return gen_gn(n if n is not None else 6)
    if family == "mat12":
        return gen_mat12()
    if family == "fig1":
        return gen_fig1()
    if family == "random":
        d = gen_random_po(n if n is not None else 10, seed, density)
        return d.graph, d
    raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")
