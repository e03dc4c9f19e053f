import pytest

from oracle import brute_holds
from skewlat.errors import NotASkewLattice, TermSyntaxError, UnboundVariable
from skewlat.fixtures import F4R, L2, LR2, M2, RR2, chain, rectangular
from skewlat.identities import (CATALOG, GROUPS, Identity, center, check_identity, classify,
                                first_failure, identity, identity_list)
from skewlat.terms import (Op, Var, dual_term, eval_term, format_term, join, meet, parse_equation,
                           parse_term)

x, y, z = Var(0), Var(1), Var(2)


class TestParsing:
    def test_absorption_term(self):
        assert parse_term("x ^ (x v y)") == meet(x, join(x, y))

    def test_single_variable(self):
        assert parse_term("x") == Var(0)

    def test_left_association(self):
        assert parse_term("((x ^ y) ^ z)") == parse_term("x ^ y ^ z")

    def test_indexed_variables_and_unicode(self):
        assert parse_term("x5 ∧ (x0 ∨ x1)") == meet(Var(5), join(Var(0), Var(1)))

    def test_mixed_operators_need_parentheses(self):
        with pytest.raises(TermSyntaxError) as err:
            parse_term("x ^ y v z")
        assert err.value.position == 6

    @pytest.mark.parametrize("text", ["", "x ^", "(x", "x y", "x ^ q", "x)"])
    def test_syntax_errors(self, text):
        with pytest.raises(TermSyntaxError):
            parse_term(text)

    def test_round_trip_through_formatting(self):
        for ident in CATALOG.values():
            assert parse_term(format_term(ident.lhs)) == ident.lhs
            assert parse_term(format_term(ident.rhs)) == ident.rhs

    def test_equation(self):
        lhs, rhs = parse_equation("x ^ y = y ^ x")
        assert lhs == meet(x, y) and rhs == meet(y, x)


class TestEvaluation:
    def test_examples(self):
        assert eval_term(L2, parse_term("x ^ (x v y)"), {0: 0, 1: 1}) == 0
        assert eval_term(RR2, parse_term("x ^ y ^ x"), {0: 0, 1: 1}) == 0
        assert eval_term(F4R, parse_term("x v y v x"), {0: 1, 1: 2}) == 1

    def test_unbound(self):
        with pytest.raises(UnboundVariable):
            eval_term(L2, parse_term("x ^ y"), {0: 0})


class TestDuals:
    def test_examples(self):
        assert dual_term(meet(x, y)) == join(x, y)
        s19 = CATALOG["S19"].lhs
        assert dual_term(dual_term(s19)) == s19
        assert dual_term(CATALOG["S3"].lhs) == CATALOG["S5"].lhs

    def test_catalog_is_closed_under_duals(self):
        pairs = [("S1", "S2"), ("S3", "S5"), ("S4", "S6"), ("S7", "S8"), ("S13", "S14"),
                 ("S15", "S18"), ("S16", "S17"), ("S19", "S20"), ("S25", "S26")]
        for a, b in pairs:
            d = CATALOG[a].dual()
            assert (d.lhs, d.rhs) == (CATALOG[b].lhs, CATALOG[b].rhs)


class TestChecking:
    def test_rr2_commutativity_counterexample(self):
        v = check_identity(RR2, "S7")
        assert not v.holds
        assert v.counterexample == {0: 0, 1: 1}
        assert (v.lhs_value, v.rhs_value) == (1, 0)

    def test_l2_is_a_lattice(self):
        for code in GROUPS["LATTICE"]:
            assert check_identity(L2, code)

    def test_inline_identity(self):
        assert check_identity(RR2, "x ^ y = y")
        assert not check_identity(RR2, "x ^ y = x")

    def test_against_brute_force(self):
        s19_lhs = lambda m, j, a, b, c: m[m[a][j[b][c]]][a]
        s19_rhs = lambda m, j, a, b, c: j[m[m[a][b]][a]][m[m[a][c]][a]]
        for alg in (F4R, M2, RR2, chain(3), rectangular(2, 2)):
            assert check_identity(alg, "S19").holds == brute_holds(alg, s19_lhs, s19_rhs, 3)

    def test_first_failure(self):
        ident, verdict = first_failure(RR2, identity_list("LATTICE"))
        assert ident.code == "S7" and verdict.counterexample == {0: 0, 1: 1}

    def test_identity_lists(self):
        assert [i.code for i in identity_list("S1-S6")] == list(GROUPS["SKEW"])
        assert [i.code for i in identity_list("SKEW,S7")] == list(GROUPS["SKEW"]) + ["S7"]
        assert identity("x = x").code is None


class TestClassify:
    def test_rr2(self):
        p = classify(RR2)
        assert p.skew_lattice and p.right_handed and p.rectangular and p.regular
        assert not p.lattice and not p.left_handed

    def test_m2_is_a_distributive_lattice(self):
        # the four-element Boolean lattice is distributive, so S19 and S20 hold
        p = classify(M2)
        assert p.lattice and p.symmetric and p.normal
        assert p.middle_distributive and p.bidistributive
        assert p.diamond

    def test_f4r(self):
        p = classify(F4R)
        assert p.skew_lattice and p.right_handed and p.symmetric
        assert not p.lattice and not p.normal
        assert p.strictly_categorical and p.skew_chain

    def test_non_skew_lattice_profile(self):
        bad = Identity.parse("x = x")
        from skewlat.algebra import Algebra
        a = Algebra(2, [[1, 1], [1, 1]], [[0, 0], [0, 0]])
        p = classify(a)
        assert not p.skew_lattice and p.categorical is None
        assert check_identity(a, bad)


class TestCenter:
    def test_examples(self):
        assert center(L2) == {0, 1}
        assert center(RR2) == frozenset()
        assert center(F4R) == {0, 3}

    def test_requires_skew_lattice(self):
        from skewlat.algebra import Algebra
        with pytest.raises(NotASkewLattice):
            center(Algebra(2, [[1, 1], [1, 1]], [[0, 0], [0, 0]]))
