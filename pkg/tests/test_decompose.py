import pytest

from pograph.decompose import (
    cover_outerplanar_plus,
    extract_linear_forest,
    extract_star_forest,
    peel_maximal,
    two_forests_plus_matching,
)
from pograph.diagram import make_diagram, maximal_completion, recognize
from pograph.errors import NotPseudoOuterplanarError, PographError
from pograph.generators import gen_fig1, gen_gn, gen_mat12, gen_pn, gen_qn, gen_random_po
from pograph.graph import (
    Graph,
    classify_subgraph,
    complete_graph,
    cycle_graph,
    star_roots,
    verify_decomposition,
)
from pograph.oracles import outerplanar_by_planarity


def five_cycle_with_crossing():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (1, 4)])
    return recognize(g)


class TestExtraction:
    def test_k4_linear(self):
        d = recognize(complete_graph(4))
        res = extract_linear_forest(d, 0, 3, 1)
        assert res.forest == frozenset({(1, 3)})
        assert res.remainder.crossing_count() == 0

    def test_k4_star(self):
        d = recognize(complete_graph(4))
        res = extract_star_forest(d, 0, 3, 1)
        assert res.forest == frozenset({(1, 3)})

    def test_outerplanar_empty(self):
        d = recognize(cycle_graph(6))
        assert extract_linear_forest(d, 0, 5, 1).forest == frozenset()
        assert extract_star_forest(d, 0, 5, 1).forest == frozenset()

    def test_five_cycle_contract(self):
        d = five_cycle_with_crossing()
        # y=3: T avoids 3, hits the single crossing pair, flanks at most 1
        res = extract_linear_forest(d, 3, 2, 4)
        assert res.forest <= {(0, 2), (1, 4)} and len(res.forest) == 1
        res = extract_star_forest(d, 3, 2, 4)
        assert res.forest <= {(0, 2), (1, 4)} and len(res.forest) == 1

    def test_contract_over_all_centers(self):
        # the linear recursion satisfies its contract for every center choice
        d = five_cycle_with_crossing()
        order = d.blocks[0].order
        for i, y in enumerate(order):
            x, z = order[i - 1], order[(i + 1) % len(order)]
            res = extract_linear_forest(d, y, x, z)
            deg = {}
            for u, v in res.forest:
                deg[u] = deg.get(u, 0) + 1
                deg[v] = deg.get(v, 0) + 1
            assert deg.get(y, 0) == 0
            assert max(deg.get(x, 0), deg.get(z, 0)) <= 1
            assert classify_subgraph(d.graph, res.forest).is_linear_forest

    def test_bad_flanks_rejected(self):
        d = recognize(complete_graph(4))
        with pytest.raises(PographError):
            extract_linear_forest(d, 0, 2, 1)  # 2 is not a boundary neighbor of 0

    def test_open_disk_rejected(self):
        from pograph.graph import complete_bipartite

        d = recognize(complete_bipartite(2, 3))
        blk = d.blocks[0]
        y = blk.order[0]
        with pytest.raises(PographError):
            extract_linear_forest(d, y, blk.order[-1], blk.order[1])

    def test_star_forced_interlock_raises(self):
        # centering mat12's closure at vertex 0 forces a path of partner
        # chords, so no star selection exists there (but center 1 works)
        from pograph.diagram import quasi_hamiltonize

        _, d = gen_mat12()
        dq, _ = quasi_hamiltonize(d)
        with pytest.raises(PographError):
            extract_star_forest(dq, 0, 11, 1)
        res = extract_star_forest(dq, 1, 0, 2)
        assert classify_subgraph(dq.graph, res.forest).is_star_forest

    def test_star_roots_contract_random(self):
        checked = 0
        for seed in range(40):
            d = gen_random_po(9 + seed % 6, 7100 + seed, 0.45)
            order = d.blocks[0].order
            y, x, z = order[0], order[-1], order[1]
            try:
                res = extract_star_forest(d, y, x, z)
            except PographError:
                continue
            checked += 1
            roots = star_roots(res.forest)
            touched = {v for e in res.forest for v in e}
            assert y not in touched
            for fl in (x, z):
                if fl in touched:
                    assert fl in roots
            assert res.remainder.crossing_count() == 0
        assert checked >= 30


class TestCovers:
    @pytest.mark.parametrize("kind", ["linear-forest", "star-forest"])
    def test_named_families(self, kind):
        for g, d in (gen_fig1(), gen_qn(3), gen_pn(2), gen_mat12(), gen_gn(8)):
            dec = cover_outerplanar_plus(g, kind, d)
            assert not verify_decomposition(g, dec, outerplanar_check=outerplanar_by_planarity)

    @pytest.mark.parametrize("kind", ["linear-forest", "star-forest"])
    def test_outerplanar_input_trivial(self, kind):
        g = cycle_graph(6)
        dec = cover_outerplanar_plus(g, kind)
        t = dict(dec.parts)[kind]
        assert t == frozenset()

    def test_forest_within_crossed_chords(self):
        g, d = gen_qn(3)
        dec = cover_outerplanar_plus(g, "linear-forest", d)
        t = dict(dec.parts)["linear-forest"]
        assert t <= d.crossed_chords

    def test_not_po_rejected(self):
        with pytest.raises(NotPseudoOuterplanarError):
            cover_outerplanar_plus(complete_graph(5), "linear-forest")

    def test_bad_kind(self):
        with pytest.raises(ValueError):
            cover_outerplanar_plus(cycle_graph(4), "matching")


class TestPeel:
    def test_triangle(self):
        step = peel_maximal(recognize(cycle_graph(3)))
        assert step.piece_kind == "K3"
        assert step.smaller.graph.m == 1
        assert step.glue in step.smaller.graph.edges

    def test_completed_c4(self):
        d, _ = maximal_completion(recognize(cycle_graph(4)))
        step = peel_maximal(d)
        assert step.piece_kind == "K4"
        assert step.smaller.graph.m == 1

    def test_completed_c6_invariants(self):
        d, _ = maximal_completion(recognize(cycle_graph(6)))
        step = peel_maximal(d)
        assert step.piece_kind in ("K3", "K4")
        # the glue edge survives on the smaller diagram's boundary
        assert step.glue in step.smaller.graph.edges
        # and the smaller diagram is again maximal
        _, added = maximal_completion(step.smaller)
        assert not added

    def test_atomic(self):
        d = recognize(Graph.from_edges(2, [(0, 1)]))
        with pytest.raises(PographError):
            peel_maximal(d)

    def test_peel_terminates(self):
        d, _ = maximal_completion(gen_random_po(9, 77, 0.5))
        seen = 0
        while len(d.graph.active_vertices()) >= 3:
            step = peel_maximal(d)
            assert len(step.smaller.graph.active_vertices()) < len(d.graph.active_vertices())
            d = step.smaller
            seen += 1
            assert seen <= 20


class TestTwoForestsPlusMatching:
    def test_k4_exact_assignment(self):
        dec = two_forests_plus_matching(complete_graph(4))
        kinds = [k for k, _ in dec.parts]
        assert kinds == ["forest", "forest", "matching"]
        f1, f2, m = (es for _, es in dec.parts)
        assert f1 == frozenset({(0, 1), (0, 2), (0, 3)})
        assert f2 == frozenset({(1, 3), (2, 3)})
        assert m == frozenset({(1, 2)})

    def test_c5_valid(self):
        dec = two_forests_plus_matching(cycle_graph(5))
        assert not verify_decomposition(cycle_graph(5), dec)

    @pytest.mark.parametrize("maker", [gen_fig1, gen_mat12, lambda: gen_qn(3), lambda: gen_gn(6), lambda: gen_pn(2)])
    def test_named_families(self, maker):
        g, d = maker()
        dec = two_forests_plus_matching(g, d)
        assert not verify_decomposition(g, dec)

    def test_matching_degree_bound(self):
        # (2,1)-coverability: the third part has maximum degree 1
        g, d = gen_mat12()
        dec = two_forests_plus_matching(g, d)
        m = dict((k, es) for k, es in dec.parts)["matching"]
        deg = {}
        for u, v in m:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        assert all(c <= 1 for c in deg.values())

    def test_random(self):
        for seed in range(40):
            d = gen_random_po(8 + seed % 20, 8800 + seed, 0.2 + (seed % 5) * 0.15)
            dec = two_forests_plus_matching(d.graph, d)
            assert not verify_decomposition(d.graph, dec)

    def test_not_po_rejected(self):
        with pytest.raises(NotPseudoOuterplanarError):
            two_forests_plus_matching(complete_graph(5))
