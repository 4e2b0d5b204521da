import pytest

from pograph.diagram import (
    block_geometry,
    make_diagram,
    maximal_completion,
    quasi_hamiltonize,
    recognize,
    surgery,
    to_hamiltonian_diagram,
    validate,
)
from pograph.errors import GuardExceededError, PographError
from pograph.generators import gen_fig1, gen_random_po
from pograph.graph import Graph, complete_bipartite, complete_graph, cycle_graph, norm_edge


class TestValidate:
    def test_k4_one_crossing(self):
        d = make_diagram(complete_graph(4), [(0, 1, 2, 3)])
        assert validate(d).valid
        assert d.crossing_pairs == frozenset({((0, 2), (1, 3))})

    def test_c5_zero_crossings(self):
        d = make_diagram(cycle_graph(5), [(0, 1, 2, 3, 4)])
        assert validate(d).valid and d.crossing_count() == 0

    def test_triple_interleaving_rejected(self):
        g = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)] + [(0, 3), (1, 4), (2, 5)])
        rep = validate(make_diagram(g, [tuple(range(6))]))
        assert not rep.valid
        assert any("crossed twice" in v for v in rep.violations)

    def test_block_mismatch_detected(self):
        g = cycle_graph(4)
        d = make_diagram(g, [(0, 1, 2)])  # wrong vertex set
        assert not validate(d).valid


class TestRecognize:
    def test_k4(self):
        d = recognize(complete_graph(4))
        assert d is not None and d.crossing_count() == 1
        assert d.blocks[0].closed

    def test_k5_rejected(self):
        assert recognize(complete_graph(5)) is None

    def test_k23_open_disk(self):
        d = recognize(complete_bipartite(2, 3))
        assert d is not None and d.crossing_count() == 1
        assert not d.blocks[0].closed

    def test_guard(self):
        with pytest.raises(GuardExceededError):
            recognize(cycle_graph(12), guard=10)

    def test_determinism(self, po_corpus_6):
        for g, d in po_corpus_6[:30]:
            assert recognize(g) == d

    def test_corpus_membership_matches_search(self, po_corpus_6):
        # recognize succeeds exactly on the graphs the corpus kept
        from pograph.oracles import enumerate_connected

        kept = {g.canonical_key() for g, _ in po_corpus_6}
        for n in range(2, 7):
            for g in enumerate_connected(n):
                assert (recognize(g) is not None) == (g.canonical_key() in kept)


class TestHamiltonize:
    def test_c4_scrambled(self):
        d = make_diagram(cycle_graph(4), [(0, 2, 1, 3)])
        assert d.crossing_count() == 1
        out = to_hamiltonian_diagram(d, [0, 1, 2, 3])
        assert out.blocks[0].order == (0, 1, 2, 3)
        assert out.crossing_count() == 0

    def test_already_boundary_unchanged(self):
        d = recognize(complete_graph(4))
        out = to_hamiltonian_diagram(d, [0, 1, 2, 3])
        assert out.blocks == d.blocks

    def test_junction_edge_carried(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])
        d = make_diagram(g, [(0, 2, 1, 3, 4)])
        assert validate(d).valid
        out = to_hamiltonian_diagram(d, [0, 1, 2, 3, 4])
        assert validate(out).valid and out.graph.edges == g.edges

    def test_non_cycle_rejected(self):
        d = recognize(complete_graph(4))
        with pytest.raises(PographError):
            to_hamiltonian_diagram(d, [0, 1, 2])  # not spanning the block

    def test_random_rebuilds(self):
        from pograph.graph import is_hamiltonian

        done = 0
        seed = 0
        while done < 25 and seed < 300:
            seed += 1
            d = gen_random_po(6 + seed % 6, 4200 + seed, 0.5)
            cyc = is_hamiltonian(d.graph)
            if cyc is None:
                continue
            done += 1
            out = to_hamiltonian_diagram(d, cyc)
            assert validate(out).valid
            assert out.graph.edges == d.graph.edges
            order = out.blocks[0].order
            n = len(order)
            boundary = {norm_edge(order[i], order[(i + 1) % n]) for i in range(n)}
            wanted = {norm_edge(cyc[i], cyc[(i + 1) % n]) for i in range(n)}
            assert boundary == wanted
        assert done == 25


class TestQuasiHamiltonize:
    def test_k23_helpers(self):
        d = recognize(complete_bipartite(2, 3))
        out, helpers = quasi_hamiltonize(d)
        # helpers = exactly the missing consecutive pairs of the recognized order
        blk = d.blocks[0]
        missing = {
            norm_edge(blk.order[i], blk.order[(i + 1) % 5])
            for i in range(5)
        } - d.graph.edges
        assert helpers == missing and len(helpers) == 1
        assert out.blocks[0].closed
        assert out.crossing_pairs == d.crossing_pairs

    def test_closed_disk_no_helpers(self):
        d = recognize(complete_graph(4))
        _, helpers = quasi_hamiltonize(d)
        assert not helpers

    def test_two_vertex_blocks_skipped(self):
        from pograph.graph import path_graph

        d = recognize(path_graph(3))
        _, helpers = quasi_hamiltonize(d)
        assert not helpers

    def test_crossings_never_added(self):
        for seed in range(20):
            d = gen_random_po(12, 600 + seed, 0.4)
            out, _ = quasi_hamiltonize(d)
            assert out.crossing_pairs == d.crossing_pairs


class TestMaximalCompletion:
    def test_c4_becomes_k4(self):
        d = recognize(cycle_graph(4))
        out, added = maximal_completion(d)
        assert out.graph.edges == complete_graph(4).edges
        assert added == frozenset({(0, 2), (1, 3)})

    def test_k4_unchanged(self):
        d = recognize(complete_graph(4))
        out, added = maximal_completion(d)
        assert not added and out.graph.edges == d.graph.edges

    def test_single_edge_unchanged(self):
        d = recognize(Graph.from_edges(2, [(0, 1)]))
        out, added = maximal_completion(d)
        assert not added

    def test_no_single_extension_remains(self):
        import itertools

        for seed in (1, 2, 3):
            d = gen_random_po(7, seed, 0.3)
            out, _ = maximal_completion(d)
            g = out.graph
            for u, v in itertools.combinations(g.active_vertices(), 2):
                if not g.has_edge(u, v):
                    assert recognize(g.add_edges([(u, v)])) is None


class TestSurgery:
    def test_vertex_removal_always_valid(self):
        for seed in range(10):
            d = gen_random_po(10, 50 + seed, 0.4)
            out = surgery(d, remove=[0])
            assert out is not None and validate(out).valid
            assert out.graph.degree(0) == 0

    def test_add_conflicting_chord_fails(self):
        g = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)] + [(0, 3), (1, 4)])
        d = make_diagram(g, [tuple(range(6))])
        assert validate(d).valid
        # (2,5) would be a second crossing on both existing chords
        assert surgery(d, add=[(2, 5)]) is None

    def test_contract_keeps_position(self):
        d = recognize(cycle_graph(5))
        out = surgery(d, contract=[(0, 4)])
        assert out is not None
        assert out.graph.degree(4) == 0
        assert out.graph.has_edge(0, 3)

    def test_fig1_block_structure(self):
        g, d = gen_fig1()
        assert len(d.blocks) == 2
        out = surgery(d, remove=[4])  # the non-shared K2,3 hub
        assert out is not None and validate(out).valid


def test_block_geometry_boundary_vs_chords():
    g = complete_graph(4)
    geo = block_geometry((0, 1, 2, 3), g.edges)
    assert geo.boundary == {(0, 1), (1, 2), (2, 3), (0, 3)}
    assert geo.chords == {(0, 2), (1, 3)}
    assert geo.crossed == {(0, 2), (1, 3)}
