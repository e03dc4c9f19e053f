import pytest

from skewlat.algebra import Morphism, are_isomorphic
from skewlat.decompose import (component_decomposition, fibered_product, first_decomposition,
                               order_check, second_decomposition)
from skewlat.errors import NotAHomomorphism, TargetMismatch
from skewlat.fixtures import F4R, L2, M2, RR2, TRIVIAL, chain, rectangular


def part_sets(dec):
    return [set(emb) for _, emb in dec.parts]


class TestFirst:
    def test_m2(self):
        dec = first_decomposition(M2)
        assert part_sets(dec) == [{0}, {1}, {2}, {3}]
        assert are_isomorphic(dec.quotient, M2) is not None

    def test_rr2(self):
        dec = first_decomposition(RR2)
        assert part_sets(dec) == [{0, 1}]
        assert dec.quotient == TRIVIAL

    def test_f4r(self):
        dec = first_decomposition(F4R)
        assert part_sets(dec) == [{0}, {1, 2}, {3}]
        assert dec.quotient == chain(3)
        assert dec.quotient_profile.lattice


class TestComponent:
    def test_f4r(self):
        dec = component_decomposition(F4R)
        assert part_sets(dec) == [{0, 1, 2, 3}] and dec.quotient == TRIVIAL

    def test_rr2(self):
        dec = component_decomposition(RR2)
        assert part_sets(dec) == [{0}, {1}] and dec.quotient == RR2
        assert dec.quotient_profile.rectangular

    def test_l2(self):
        assert len(component_decomposition(L2).parts) == 1


class TestFiberedProduct:
    def test_identities(self):
        ident = Morphism(L2, L2, (0, 1))
        prod, pairs = fibered_product(L2, L2, ident, ident)
        assert pairs == ((0, 0), (1, 1)) and prod == L2

    def test_over_trivial_target_is_direct_product(self):
        to_point = Morphism(L2, TRIVIAL, (0, 0))
        rr_point = Morphism(RR2, TRIVIAL, (0, 0))
        prod, pairs = fibered_product(L2, RR2, to_point, rr_point)
        assert len(pairs) == 4
        assert prod.meet[pairs.index((1, 0))][pairs.index((0, 1))] == pairs.index((0, 1))

    def test_target_mismatch(self):
        with pytest.raises(TargetMismatch):
            fibered_product(L2, L2, Morphism(L2, L2, (0, 1)), Morphism(L2, TRIVIAL, (0, 0)))

    def test_requires_homomorphisms(self):
        swap = Morphism(L2, L2, (1, 0))
        with pytest.raises(NotAHomomorphism):
            fibered_product(L2, L2, swap, swap)


class TestSecond:
    def test_l2(self):
        dec = second_decomposition(L2)
        assert dec.factors["L"] == L2 and dec.factors["R"] == L2 and dec.product == L2

    def test_rr2(self):
        dec = second_decomposition(RR2)
        assert dec.factors["L"] == RR2
        assert dec.factors["R"] == TRIVIAL
        assert are_isomorphic(dec.product, RR2) is not None

    def test_f4r(self):
        dec = second_decomposition(F4R)
        assert dec.witness.is_homomorphism()
        assert dec.factors["R"] == chain(3)
        assert are_isomorphic(dec.product, F4R) is not None

    def test_rectangle(self):
        dec = second_decomposition(rectangular(2, 3))
        assert dec.factors["L"].n == 3 and dec.factors["R"].n == 2


def test_order_check_on_fixtures():
    for alg in (F4R, M2, RR2, rectangular(3, 2)):
        order_check(alg)
