import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pograph.colorings import (
    ColorTrace,
    chromatic_index,
    po_edge_color,
    po_linear_arboricity,
    vizing_color,
)
from pograph.diagram import recognize
from pograph.errors import NotPseudoOuterplanarError, PographError
from pograph.generators import gen_pn, gen_qn, gen_random_po
from pograph.graph import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    path_graph,
    verify_edge_coloring,
)
from pograph.oracles import brute_chromatic_index, brute_linear_arboricity


def arbitrary_graphs():
    return st.integers(2, 9).flatmap(
        lambda n: st.sets(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1]),
            max_size=n * (n - 1) // 2,
        ).map(lambda es: Graph.from_edges(n, es))
    )


class TestVizing:
    @given(arbitrary_graphs())
    @settings(max_examples=120, deadline=None)
    def test_valid_within_delta_plus_one(self, g):
        col = vizing_color(g)
        assert col.k <= g.max_degree + 1
        assert verify_edge_coloring(g, col).valid

    def test_examples(self):
        assert vizing_color(cycle_graph(5)).k == 3
        assert vizing_color(complete_bipartite(1, 4)).k <= 4
        assert vizing_color(complete_graph(4)).k <= 4


class TestPoEdgeColor:
    def test_fan_delta5(self):
        fan = Graph.from_edges(6, [(0, i) for i in range(1, 6)] + [(i, i + 1) for i in range(1, 5)])
        d = recognize(fan)
        col, trace = po_edge_color(d)
        assert col.k == 5
        assert verify_edge_coloring(fan, col).valid
        assert brute_chromatic_index(fan) == 5

    def test_q3(self):
        g, d = gen_qn(3)
        col, trace = po_edge_color(d)
        assert col.k == 4 and verify_edge_coloring(g, col).valid
        assert trace.replay() == col.colors

    def test_delta3_rejected(self):
        _, d = gen_pn(1)
        with pytest.raises(PographError, match="delta below four"):
            po_edge_color(d)

    def test_trace_replay_bit_exact(self, po_corpus_6):
        for g, d in po_corpus_6:
            if g.max_degree < 4:
                continue
            col, trace = po_edge_color(d)
            assert trace.replay() == col.colors

    def test_no_diagnostic_on_corpus(self, po_corpus_7):
        for g, d in po_corpus_7:
            if g.max_degree < 4:
                continue
            _col, trace = po_edge_color(d)
            assert not any(s.detail == "configuration miss" for s in trace.steps)

    def test_matches_oracle_on_corpus_slice(self, po_corpus_6):
        for g, d in po_corpus_6:
            if g.max_degree < 4:
                continue
            col, _ = po_edge_color(d)
            assert col.k == g.max_degree == brute_chromatic_index(g)
            assert verify_edge_coloring(g, col).valid


class TestChromaticIndex:
    def test_p1_and_p2_class_two(self):
        for n in (1, 2):
            g, d = gen_pn(n)
            value, col = chromatic_index(g, d)
            assert value == 4
            assert verify_edge_coloring(g, col).valid and col.k == 4

    def test_c6(self):
        value, col = chromatic_index(cycle_graph(6))
        assert value == 2 and verify_edge_coloring(cycle_graph(6), col).valid

    def test_c5_odd_cycle(self):
        value, _ = chromatic_index(cycle_graph(5))
        assert value == 3

    def test_q3(self):
        g, d = gen_qn(3)
        value, _ = chromatic_index(g, d)
        assert value == 4

    def test_single_edge(self):
        value, _ = chromatic_index(Graph.from_edges(2, [(0, 1)]))
        assert value == 1

    def test_not_po(self):
        with pytest.raises(NotPseudoOuterplanarError):
            chromatic_index(complete_graph(5))

    def test_agrees_with_oracle(self, po_corpus_6):
        for g, d in po_corpus_6:
            value, col = chromatic_index(g, d)
            assert value == brute_chromatic_index(g)
            assert verify_edge_coloring(g, col).valid


class TestLinearArboricity:
    def test_p1(self):
        g, d = gen_pn(1)
        k, col, _ = po_linear_arboricity(d)
        assert k == 2 and verify_edge_coloring(g, col).valid

    def test_q3_needs_three(self):
        g, d = gen_qn(3)
        k, col, _ = po_linear_arboricity(d)
        assert k == 3 and verify_edge_coloring(g, col).valid

    def test_q2_even_gets_two(self):
        # Q_2 has an even attachment cycle, so two forests suffice
        g, d = gen_qn(2)
        k, col, _ = po_linear_arboricity(d)
        assert k == 2 and verify_edge_coloring(g, col).valid

    def test_path(self):
        d = recognize(path_graph(5))
        k, col, _ = po_linear_arboricity(d)
        assert k == 1

    def test_cycle_needs_two(self):
        d = recognize(cycle_graph(6))
        k, _, _ = po_linear_arboricity(d)
        assert k == 2

    def test_matches_oracle_on_corpus(self, po_corpus_6):
        for g, d in po_corpus_6:
            k, col, _ = po_linear_arboricity(d)
            assert k == brute_linear_arboricity(g)
            assert verify_edge_coloring(g, col).valid

    def test_constructive_even_branch(self):
        found = 0
        seed = 0
        while found < 12 and seed < 600:
            seed += 1
            d = gen_random_po(16 + seed % 10, 31000 + seed, 0.55)
            g = d.graph
            if g.max_degree < 6 or g.max_degree % 2:
                continue
            found += 1
            k, col, trace = po_linear_arboricity(d)
            assert k == g.max_degree // 2
            assert verify_edge_coloring(g, col).valid
            assert trace.replay() == col.colors
        assert found == 12

    def test_trace_replay(self):
        g, d = gen_qn(3)
        k, col, trace = po_linear_arboricity(d)
        assert trace.replay() == col.colors


def test_trace_structure():
    g, d = gen_qn(3)
    col, trace = po_edge_color(d)
    kinds = {s.kind for s in trace.steps}
    assert kinds <= {"low-edge-degree", "block-split", "config", "vizing-base", "exact-fallback"}
    t = ColorTrace()
    t.add("config", "x", assign={(0, 1): 2})
    t.add("config", "y", recolor={(0, 1): 3})
    assert t.replay() == {(0, 1): 3}
