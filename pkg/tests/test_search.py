import pytest

from oracle import brute_isomorphic, naive_skew_lattices
from skewlat.algebra import Algebra, are_isomorphic
from skewlat.cosets import is_categorical
from skewlat.errors import BudgetExceeded, SizeLimit
from skewlat.fixtures import F4R, L2, LR2, M2, RR2, chain, rectangular
from skewlat.identities import check_identity, classify, identity_list
from skewlat.search import (ModelQuery, canonical_form, canonical_key, chain_layout,
                            chain_layouts, compositions, distributive_lattices, enumerate_models,
                            find_model, general_layouts, parse_skeleton, search_layouts,
                            table_bytes)


def as_pairs(catalog):
    return sorted((tuple(map(tuple, a.meet)), tuple(map(tuple, a.join))) for a in catalog.algebras)


class TestCanonicalForm:
    def test_l2_is_already_least(self):
        assert canonical_form(L2) == L2

    def test_invariant_under_relabeling(self):
        assert canonical_form(RR2.relabel((1, 0))) == canonical_form(RR2)
        for perm in ((1, 0, 3, 2), (3, 2, 1, 0), (2, 0, 3, 1)):
            assert canonical_key(F4R.relabel(perm)) == canonical_key(F4R)

    def test_separates_rr2_and_lr2(self):
        assert canonical_key(RR2) != canonical_key(LR2)

    def test_agrees_with_brute_force_minimum(self):
        for rep in naive_skew_lattices(3):
            alg = Algebra(3, rep[0], rep[1])
            assert table_bytes(canonical_form(alg)) == table_bytes(alg)

    def test_size_limit(self):
        with pytest.raises(SizeLimit):
            canonical_form(chain(10))


class TestEnumeration:
    @pytest.mark.parametrize("n, count", [(1, 1), (2, 3), (3, 7)])
    def test_matches_naive_oracle(self, n, count):
        oracle = naive_skew_lattices(n)
        assert len(oracle) == count
        assert as_pairs(enumerate_models(n, "SKEW")) == oracle

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_lattices_match_oracle(self, n):
        assert as_pairs(enumerate_models(n, "SKEW,S7,S8")) == naive_skew_lattices(n, True)

    def test_counts_to_five(self, skew_catalogs):
        assert [len(skew_catalogs[n]) for n in range(1, 6)] == [1, 3, 7, 21, 53]
        lattices = [sum(e.profile.lattice for e in skew_catalogs[n]) for n in range(1, 6)]
        assert lattices == [1, 1, 1, 2, 5]

    def test_n2_models(self, skew_catalogs):
        found = skew_catalogs[2].algebras
        for fixture in (L2, RR2, LR2):
            assert sum(brute_isomorphic(fixture, a) for a in found) == 1

    def test_pairwise_non_isomorphic(self, skew_catalogs):
        for n in (3, 4):
            algs = skew_catalogs[n].algebras
            for i, a in enumerate(algs):
                for b in algs[i + 1:]:
                    assert are_isomorphic(a, b) is None

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_pruning_changes_nothing(self, n):
        pruned = enumerate_models(n, "SKEW")
        bare = enumerate_models(n, "SKEW", lnh=False, propagate=False)
        assert as_pairs(pruned) == as_pairs(bare)

    def test_workers_do_not_change_output(self):
        assert as_pairs(enumerate_models(4, "SKEW", workers=2)) == as_pairs(
            enumerate_models(4, "SKEW"))

    def test_falsify_filters(self):
        cat = enumerate_models(3, "SKEW", falsify="S7")
        assert len(cat) == 6 and not any(e.profile.lattice for e in cat)

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            enumerate_models(7, "SKEW", budget=0.01)


class TestFindModel:
    def test_commutative_meet_forces_commutative_join(self):
        assert find_model(ModelQuery(2, "SKEW,S7", "S8")) is None

    def test_finds_non_lattice(self):
        found = find_model(ModelQuery(3, "SKEW", "S7"))
        assert found is not None and not check_identity(found, "S7")

    def test_with_skeleton(self):
        found = find_model(ModelQuery(4, "SKEW", skeleton="1>2>1"))
        assert found is not None
        assert classify(found).skew_chain

    def test_structural_requirement(self):
        found = find_model(ModelQuery(4, "SKEW", structural={"normal": False}))
        assert found is not None and not classify(found).normal

    def test_budget(self):
        q = ModelQuery(9, "SKEW,S19", "S20", budget=0.05)
        with pytest.raises(BudgetExceeded):
            find_model(q)

    def test_skeleton_must_sum_to_n(self):
        with pytest.raises(ValueError):
            ModelQuery(5, "SKEW", skeleton="2>2")

    @pytest.mark.slow
    def test_non_categorical_eight(self):
        q = ModelQuery(8, "SKEW", skeleton="2>4>2", structural={"categorical": False})
        found = find_model(q)
        assert found is not None and is_categorical(found).label == "neither"


class TestSkeletons:
    def test_parse_chain(self):
        layout = parse_skeleton("2>4>2")
        assert layout.sizes == (2, 4, 2) and layout.is_chain()
        assert layout.describe() == "2>4>2"

    def test_parse_diamond(self):
        layout = parse_skeleton("1;2,2;1")
        assert layout.n == 6 and not layout.is_chain()
        assert layout.describe() == "1;2,2;1"

    @pytest.mark.parametrize("bad", ["", "2>x", "1;2;1", "0>2"])
    def test_parse_errors(self, bad):
        with pytest.raises(ValueError):
            parse_skeleton(bad)

    def test_variants_cover_all_shapes(self):
        shapes = [sk.shapes for sk in chain_layout((1, 4)).variants()]
        assert shapes == [((1, 1), (1, 4)), ((1, 1), (2, 2)), ((1, 1), (4, 1))]

    def test_compositions_order(self):
        assert list(compositions(3)) == [(3,), (1, 2), (2, 1), (1, 1, 1)]

    def test_chain_layouts(self):
        assert [l.sizes for l in chain_layouts(3)] == [(1, 2), (2, 1), (1, 1, 1)]

    def test_distributive_lattice_counts(self):
        assert [len(distributive_lattices(k)) for k in range(1, 8)] == [1, 1, 1, 2, 3, 5, 8]
        for lat in distributive_lattices(6):
            assert classify(lat).lattice and check_identity(lat, "S19")

    def test_general_layouts_put_non_chains_first(self):
        layouts = list(general_layouts(6))
        assert not layouts[0].is_chain() and layouts[-1].is_chain()
        assert all(l.n == 6 for l in layouts)

    def test_search_layouts_returns_skeleton(self):
        q = ModelQuery(4, "SKEW", "S7")
        found, sk = search_layouts(q, [parse_skeleton("1>2>1")])
        assert sk.sizes == (1, 2, 1) and classify(found).skew_lattice
