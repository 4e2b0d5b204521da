from collections import Counter

import pytest

from pograph.diagram import recognize, validate
from pograph.generators import (
    MAT12_SETS,
    gen_fig1,
    gen_gn,
    gen_mat12,
    gen_pn,
    gen_qn,
    gen_random_po,
    generate,
)
from pograph.graph import blocks, vertex_connectivity


class TestPn:
    @pytest.mark.parametrize("n", [1, 2, 3, 5, 10])
    def test_closed_forms(self, n):
        g, d = gen_pn(n)
        assert g.n == 2 * n + 5
        assert g.m == 3 * n + 7
        assert g.max_degree == 3
        assert validate(d).valid

    def test_degree_profile(self):
        g, _ = gen_pn(2)
        assert set(g.degrees()) == {2, 3}

    def test_two_connected(self):
        for n in (1, 2, 3):
            g, _ = gen_pn(n)
            assert vertex_connectivity(g) == 2

    def test_bad_parameter(self):
        with pytest.raises(ValueError):
            gen_pn(0)


class TestQn:
    @pytest.mark.parametrize("n", [2, 3, 4, 10])
    def test_closed_forms(self, n):
        g, d = gen_qn(n)
        assert g.n == 5 * n
        assert g.m == 9 * n
        assert g.max_degree == 4
        assert validate(d).valid

    def test_q3_is_order_15(self):
        g, _ = gen_qn(3)
        assert g.n == 15 and g.m == 27

    def test_degree_audit_n1(self):
        g, _ = gen_qn(1)
        # u_1 has degree 2; v_1 and w_1 have degree 4
        assert sorted(Counter(g.degrees()).items()) == [(2, 1), (3, 2), (4, 2)]


class TestGn:
    @pytest.mark.parametrize("n", range(6, 11))
    def test_size_formula(self, n):
        g, d = gen_gn(n)
        assert g.m == (5 * n) // 2 - 4
        assert g.m > 2 * n - 2
        assert validate(d).valid

    def test_bad_parameter(self):
        with pytest.raises(ValueError):
            gen_gn(5)


class TestMat12:
    def test_reconstruction(self):
        g, d = gen_mat12()
        assert g.n == 12 and g.m == 22
        assert len(MAT12_SETS) == 4 and all(len(s) == 5 for s in MAT12_SETS)
        assert validate(d).valid

    def test_crossing_pairs(self):
        _, d = gen_mat12()
        assert d.crossing_pairs == frozenset({
            ((0, 2), (1, 3)),
            ((3, 5), (4, 6)),
            ((6, 8), (7, 9)),
            ((0, 10), (9, 11)),
            ((0, 6), (3, 9)),
        })


class TestFig1:
    def test_shape(self):
        g, d = gen_fig1()
        assert g.n == 8 and g.m == 12
        bl, cuts = blocks(g)
        assert len(bl) == 2 and len(cuts) == 1
        assert g.min_degree == 2
        assert validate(d).valid

    def test_k23_block_open(self):
        _, d = gen_fig1()
        flags = sorted(b.closed for b in d.blocks)
        assert flags == [False, True]


class TestRandomPo:
    def test_zero_density_is_cycle(self):
        d = gen_random_po(10, 1, 0.0)
        assert d.graph.m == 10 and d.crossing_count() == 0

    def test_determinism(self):
        assert gen_random_po(20, 7, 0.5) == gen_random_po(20, 7, 0.5)

    def test_always_valid_closed(self):
        for seed in range(25):
            d = gen_random_po(6 + seed, seed, (seed % 10) / 10)
            assert validate(d).valid
            assert d.blocks[0].closed

    def test_bad_parameters(self):
        with pytest.raises(ValueError):
            gen_random_po(2, 1, 0.5)
        with pytest.raises(ValueError):
            gen_random_po(5, 1, 1.5)


def test_generated_graphs_recognize(po_corpus_6):
    # generator output within the recognition guard is recognized PO
    for g, _ in (gen_pn(1), gen_fig1(), gen_gn(6)):
        assert recognize(g) is not None


def test_generate_dispatch():
    g, d = generate("qn", 2)
    assert g.n == 10
    with pytest.raises(ValueError):
        generate("nope")
