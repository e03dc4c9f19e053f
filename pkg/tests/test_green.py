import pytest

from skewlat.algebra import Algebra
from skewlat.errors import NotASkewLattice
from skewlat.fixtures import F4R, L2, LR2, M2, RR2, chain, rectangular
from skewlat.green import Partition, as_relation, components, compose, green, natural_order


def blocks(p):
    return [set(b) for b in p.blocks]


class TestGreen:
    def test_lattice_has_singleton_classes(self):
        assert blocks(green(L2, "D")) == [{0}, {1}]

    def test_rr2(self):
        assert blocks(green(RR2, "D")) == [{0, 1}]
        assert blocks(green(RR2, "R")) == [{0, 1}]
        assert blocks(green(RR2, "L")) == [{0}, {1}]

    def test_lr2_mirrors_rr2(self):
        assert blocks(green(LR2, "L")) == [{0, 1}]
        assert blocks(green(LR2, "R")) == [{0}, {1}]

    def test_f4r_middle_class(self):
        assert blocks(green(F4R, "D")) == [{0}, {1, 2}, {3}]

    def test_h_is_trivial(self):
        for alg in (F4R, M2, RR2, rectangular(2, 3)):
            assert len(green(alg, "H")) == alg.n

    def test_rectangle_rows_and_columns(self):
        rect = rectangular(2, 3)
        assert len(green(rect, "R")) == 2
        assert len(green(rect, "L")) == 3
        assert len(green(rect, "D")) == 1

    def test_unknown_relation(self):
        with pytest.raises(ValueError):
            green(L2, "Q")

    def test_requires_skew_lattice(self):
        with pytest.raises(NotASkewLattice):
            green(Algebra(2, [[1, 1], [1, 1]], [[0, 0], [0, 0]]), "D")

    def test_d_is_r_then_l(self, small_skew_lattices):
        for alg in small_skew_lattices:
            r, l, d = green(alg, "R"), green(alg, "L"), green(alg, "D")
            rl = compose(alg.n, r.same, l.same)
            lr = compose(alg.n, l.same, r.same)
            assert rl == lr == as_relation(d)


class TestNaturalOrder:
    def test_rr2_elements_are_incomparable_but_preordered(self):
        o = natural_order(RR2)
        assert not o.leq[0][1] and not o.leq[1][0]
        assert o.preceq[0][1] and o.preceq[1][0]

    def test_f4r(self):
        o = natural_order(F4R)
        a, b, top = 1, 2, 3
        assert o.leq[a][top] and o.leq[0][a]
        assert not o.leq[a][b] and not o.leq[b][a]
        assert sorted(o.covers()) == [(0, 1), (0, 2), (1, 3), (2, 3)]

    def test_m2_and_f4r_share_their_order(self):
        assert natural_order(M2).leq == natural_order(F4R).leq

    def test_chain_covers(self):
        assert natural_order(chain(4)).covers() == [(0, 1), (1, 2), (2, 3)]

    def test_ge(self):
        assert natural_order(L2).ge(1, 0)


class TestComponents:
    def test_examples(self):
        assert len(components(L2)) == 1
        assert blocks(components(RR2)) == [{0}, {1}]
        assert len(components(F4R)) == 1


class TestPartition:
    def test_from_blocks_orders_by_least_element(self):
        p = Partition.from_blocks(4, [[3, 1], [2, 0]])
        assert p.blocks == ((0, 2), (1, 3))
        assert p.block(3) == (1, 3)

    def test_from_blocks_rejects_overlap_and_gaps(self):
        with pytest.raises(ValueError):
            Partition.from_blocks(3, [[0, 1], [1, 2]])
        with pytest.raises(ValueError):
            Partition.from_blocks(3, [[0, 1]])

    def test_refinement_and_meet(self):
        fine = Partition.identity(3)
        coarse = Partition.full(3)
        assert fine.refines(coarse) and not coarse.refines(fine)
        mid = Partition.from_blocks(3, [[0, 1], [2]])
        assert mid.meet(Partition.from_blocks(3, [[0], [1, 2]])) == fine
