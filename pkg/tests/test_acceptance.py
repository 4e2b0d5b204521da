"""Acceptance suite: every headline guarantee, exercised end to end.

Each criterion prints one PASS/FAIL line (run pytest -s to watch).  All
checks are exact; the random instance sets are seeded and fixed.
"""

import pytest

from pograph.colorings import chromatic_index, po_edge_color, po_linear_arboricity
from pograph.configurations import COLORING_IDS, find_configuration
from pograph.decompose import cover_outerplanar_plus, two_forests_plus_matching
from pograph.diagram import recognize, to_hamiltonian_diagram, validate
from pograph.generators import gen_gn, gen_mat12, gen_pn, gen_qn, gen_random_po
from pograph.graph import (
    complete_graph,
    is_hamiltonian,
    is_isomorphic_small,
    norm_edge,
    verify_decomposition,
    verify_edge_coloring,
    vertex_connectivity,
)
from pograph.oracles import (
    SearchBudget,
    brute_chromatic_index,
    brute_linear_arboricity,
    enumerate_connected,
    exists_k_forest_partition,
    exists_removal_decomposition,
    outerplanar_by_planarity,
)


def report(num: int, name: str, ok: bool, detail: str = "") -> None:
    suffix = f" ({detail})" if detail else ""
    print(f"criterion {num:2d} [{'PASS' if ok else 'FAIL'}] {name}{suffix}")
    assert ok, f"criterion {num}: {name}{suffix}"


def random_cover_instances():
    """200 seeded random diagrams, n <= 40."""
    out = []
    for i in range(200):
        n = 8 + (i * 17 + 5) % 33
        out.append(gen_random_po(n, 1000 + i, 0.2 + (i % 5) * 0.12))
    return out


def test_criterion_01_edge_coloring_optimality(po_corpus_7):
    checked = 0
    for g, d in po_corpus_7:
        if g.max_degree < 4:
            continue
        checked += 1
        col, trace = po_edge_color(d)
        assert col.k == g.max_degree
        assert verify_edge_coloring(g, col).valid
        assert brute_chromatic_index(g) == g.max_degree
    report(1, "po_edge_color gives verified Delta-colorings matching the oracle",
           checked > 0, f"{checked} graphs with Delta >= 4, n <= 7")


def test_criterion_02_class_two_family():
    ok = True
    for n in (1, 2):
        g, d = gen_pn(n)
        ok &= brute_chromatic_index(g) == 4
        value, col = chromatic_index(g, d)
        ok &= value == 4 and verify_edge_coloring(g, col).valid
    report(2, "the Delta-3 belt family is class 2 (chi' = 4)", ok)


def test_criterion_03_linear_arboricity(po_corpus_7):
    low = 0
    for g, d in po_corpus_7:
        if g.max_degree != 3:
            continue
        low += 1
        k, col, _ = po_linear_arboricity(d)
        assert k == 2 and verify_edge_coloring(g, col).valid and col.mode == "linear-forest"
    found = 0
    seed = 0
    while found < 50:
        seed += 1
        assert seed < 6000, "could not assemble 50 even-degree instances"
        n = 14 + (seed % 17)
        d = gen_random_po(n, 5000 + seed, 0.5 + (seed % 4) * 0.1)
        g = d.graph
        if g.max_degree < 6 or g.max_degree % 2:
            continue
        found += 1
        k, col, trace = po_linear_arboricity(d)
        assert k == g.max_degree // 2
        assert verify_edge_coloring(g, col).valid
        assert not any(s.detail == "configuration miss" for s in trace.steps)
    report(3, "ceil(Delta/2) linear forests (Delta=3 corpus + 50 even-Delta randoms)",
           True, f"{low} corpus graphs, {found} random instances")


def test_criterion_04_tightness():
    g, d = gen_qn(3)
    budget = SearchBudget(max_nodes=50_000_000, time_limit=300.0)
    brute = brute_linear_arboricity(g, budget)
    k, col, _ = po_linear_arboricity(d)
    report(4, "the triangle-belt family needs 3 linear forests",
           brute == 3 and k == 3 and verify_edge_coloring(g, col).valid)


def test_criterion_05_outerplanar_plus_forest_covers(po_corpus_7):
    failures = 0
    for g, d in po_corpus_7:
        for kind in ("linear-forest", "star-forest"):
            dec = cover_outerplanar_plus(g, kind, d)
            if verify_decomposition(g, dec):  # minor-search outerplanarity at n <= 7
                failures += 1
    randoms = random_cover_instances()
    for d in randoms:
        for kind in ("linear-forest", "star-forest"):
            dec = cover_outerplanar_plus(d.graph, kind, d)
            if verify_decomposition(d.graph, dec, outerplanar_check=outerplanar_by_planarity):
                failures += 1
    report(5, "outerplanar + forest covers verified everywhere",
           failures == 0, f"{len(po_corpus_7)} corpus + {len(randoms)} random, both kinds")


def test_criterion_06_two_forests_plus_matching(po_corpus_7):
    failures = 0
    items = [(g, d) for g, d in po_corpus_7]
    randoms = random_cover_instances()
    items += [(d.graph, d) for d in randoms]
    for g, d in items:
        dec = two_forests_plus_matching(g, d)
        if verify_decomposition(g, dec):
            failures += 1
        if exists_k_forest_partition(g, 3) is None:
            failures += 1
    report(6, "two forests + matching and 3-forest partitions everywhere",
           failures == 0, f"{len(items)} instances")


def test_criterion_07_negative_results():
    g, _ = gen_mat12()
    no_matching = exists_removal_decomposition(g, "matching") is None
    ok = no_matching
    for n in range(6, 11):
        gn, _ = gen_gn(n)
        ok &= exists_k_forest_partition(gn, 2) is None
    report(7, "matching removal impossible on the 12-vertex witness; "
              "two forests impossible for the dense family", ok)


def test_criterion_08_structure(po_corpus_7):
    k4 = complete_graph(4)
    ok = True
    for g, _ in po_corpus_7:
        ok &= g.min_degree <= 3
        if g.n >= 2 and g.is_connected() and vertex_connectivity(g) >= 3:
            ok &= is_isomorphic_small(g, k4)
    report(8, "min degree <= 3 and connectivity <= 2 unless K4", ok,
           f"{len(po_corpus_7)} corpus graphs")


def test_criterion_09_hamiltonian_diagrams():
    done = 0
    seed = 0
    while done < 100:
        seed += 1
        assert seed < 3000, "could not assemble 100 hamiltonian instances"
        n = 6 + (seed % 7)
        d = gen_random_po(n, 9000 + seed, 0.45)
        cyc = is_hamiltonian(d.graph)
        if cyc is None:
            continue
        done += 1
        out = to_hamiltonian_diagram(d, cyc)
        assert validate(out).valid
        assert out.graph.edges == d.graph.edges
        order = out.blocks[0].order
        boundary = {norm_edge(order[i], order[(i + 1) % n]) for i in range(n)}
        wanted = {norm_edge(cyc[i], cyc[(i + 1) % n]) for i in range(n)}
        assert boundary == wanted
    report(9, "hamiltonian cycles redraw as boundaries", True, f"{done} instances, n <= 12")


def test_criterion_10_unavoidability(po_corpus_7):
    tested = 0
    misses = 0
    diag = 0
    for g, d in po_corpus_7:
        if g.max_degree < 4:
            continue
        _, trace = po_edge_color(d)
        diag += sum(1 for s in trace.steps if s.detail == "configuration miss")
        if g.min_degree < 2:
            continue
        delta = g.max_degree
        if not all(g.degree(u) + g.degree(v) >= delta + 2 for u, v in g.edges):
            continue
        tested += 1
        if find_configuration(d, COLORING_IDS) is None:
            misses += 1
    report(10, "the eight coloring configurations are unavoidable; no diagnostic fires",
           misses == 0 and diag == 0, f"{tested} critical hosts")


def test_criterion_11_class_relations(connected_corpus_6):
    from pograph.graph import class_membership

    bad = []
    k4 = complete_graph(4)
    for g in connected_corpus_6:
        fl = class_membership(g)
        if fl.quasi_hamiltonian_po and fl.k4_minor_free and not fl.outerplanar:
            bad.append(("quasi-hamiltonian PO and K4-minor-free but not outerplanar", g))
        if fl.k23_minor_free and not fl.quasi_hamiltonian_po:
            bad.append(("K23-minor-free but not quasi-hamiltonian PO", g))
        if g.n >= 3 and fl.k23_minor_free and vertex_connectivity(g) >= 2:
            if not fl.outerplanar and not is_isomorphic_small(g, k4):
                bad.append(("2-connected K23-minor-free, neither outerplanar nor K4", g))
    report(11, "the class inclusions hold on the n <= 6 corpus",
           not bad, f"{len(connected_corpus_6)} connected graphs")
