import random
from fractions import Fraction

import pytest

from knotbench.braids import BraidWord, seifert_matrix_from_braid
from knotbench.errors import PossiblySingularError, PreconditionError
from knotbench.invariants import (
    alexander_polynomial,
    algebraically_concordant_test,
    arf,
    arf_via_determinant,
    d0,
    determinant,
    fibered_obstruction,
    fox_milnor_test,
    levine_tristram,
    signature_csv,
    signature_function,
)
from knotbench.polynomials import LaurentPoly
from knotbench.seifert import SeifertMatrix, UNKNOT, connected_sum, mirror

from conftest import random_seifert
from oracles import sample_levine_tristram_float

K61 = SeifertMatrix([[1, 1], [0, -2]])


class TestAlexander:
    def test_trefoil_by_direct_determinant(self, trefoil):
        # oracle: expand det([[t-1, 1], [-t, t-1]]) by hand
        tm1 = LaurentPoly({1: 1, 0: -1})
        direct = tm1 * tm1 + LaurentPoly({1: 1})
        assert direct == LaurentPoly({2: 1, 1: -1, 0: 1})
        assert alexander_polynomial(trefoil) == direct.unit_normalize_symmetric()
        assert alexander_polynomial(trefoil) == LaurentPoly({1: 1, 0: -1, -1: 1})

    def test_unknot(self):
        assert alexander_polynomial(UNKNOT) == LaurentPoly.constant(1)

    def test_figure_eight(self, figure_eight):
        assert alexander_polynomial(figure_eight) == LaurentPoly(
            {1: -1, 0: 3, -1: -1})

    def test_normalization_properties(self, corpus):
        for name, v in corpus.items():
            delta = alexander_polynomial(v)
            assert delta.is_symmetric(), name
            assert delta(1) == 1, name

    def test_determinant_odd(self, corpus):
        for name, v in corpus.items():
            assert determinant(v) % 2 == 1, name

    def test_multiplicative_under_connected_sum(self, trefoil, figure_eight):
        s = connected_sum(trefoil, figure_eight)
        assert alexander_polynomial(s) == (
            alexander_polynomial(trefoil) * alexander_polynomial(figure_eight)
        ).unit_normalize_symmetric()

    def test_mirror_invariant(self, trefoil):
        assert alexander_polynomial(mirror(trefoil)) == alexander_polynomial(trefoil)


class TestD0AndDeterminant:
    def test_examples(self, trefoil, figure_eight):
        assert d0(UNKNOT) == 0
        assert d0(trefoil) == 2
        assert d0(connected_sum(trefoil, trefoil)) == 4
        assert determinant(UNKNOT) == 1
        assert determinant(trefoil) == 3
        assert determinant(figure_eight) == 5

    def test_d0_bounded_by_twice_genus(self, corpus):
        for name, v in corpus.items():
            assert d0(v) <= 2 * v.genus, name


class TestArf:
    def test_examples(self, trefoil):
        assert arf(UNKNOT) == 0
        assert arf(trefoil) == 1
        assert arf(K61) == 0  # |Delta(-1)| = 9 = 1 mod 8

    def test_dual_computations_agree_on_corpus(self, corpus):
        for name, v in corpus.items():
            assert arf(v) == arf_via_determinant(v), name

    def test_dual_computations_agree_random(self):
        rng = random.Random(13)
        for _ in range(200):
            v = random_seifert(rng, rng.randint(1, 3))
            assert arf(v) == arf_via_determinant(v)

    def test_additive_mod_2(self, trefoil, figure_eight):
        s = connected_sum(trefoil, figure_eight)
        assert arf(s) == (arf(trefoil) + arf(figure_eight)) % 2


class TestLevineTristram:
    def test_unknot_everywhere_zero(self):
        for q in (Fraction(1, 3), Fraction(1, 2), Fraction(7, 13)):
            assert levine_tristram(UNKNOT, q) == 0

    def test_trefoil_values(self, trefoil):
        assert levine_tristram(trefoil, Fraction(1, 2)) == -2
        assert levine_tristram(trefoil, Fraction(1, 12)) == 0
        assert levine_tristram(trefoil, Fraction(1, 4)) == -2

    def test_jump_point_rejected(self, trefoil):
        with pytest.raises(PossiblySingularError, match="possibly singular"):
            levine_tristram(trefoil, Fraction(1, 6))

    def test_theta_domain(self, trefoil):
        with pytest.raises(PreconditionError):
            levine_tristram(trefoil, Fraction(0))
        with pytest.raises(PreconditionError):
            levine_tristram(trefoil, Fraction(3, 2))

    def test_values_even_and_bounded(self, corpus):
        for name, v in corpus.items():
            for q in (Fraction(1, 3), Fraction(1, 2), Fraction(4, 9)):
                try:
                    s = levine_tristram(v, q)
                except PossiblySingularError:
                    continue
                assert s % 2 == 0, name
                assert abs(s) <= 2 * v.genus, name

    def test_matches_float_oracle(self):
        rng = random.Random(31)
        for _ in range(40):
            v = random_seifert(rng, rng.randint(1, 3))
            q = Fraction(rng.randint(1, 30), 61)  # 61 prime, avoids jumps mostly
            try:
                exact = levine_tristram(v, q)
            except PossiblySingularError:
                continue
            assert exact == sample_levine_tristram_float(v, float(q))


class TestSignatureFunction:
    def test_unknot(self):
        sf = signature_function(UNKNOT)
        assert sf.jumps == () and sf.values == (0,)

    def test_trefoil(self, trefoil):
        sf = signature_function(trefoil)
        assert len(sf.jumps) == 2
        assert sf.values == (0, -2, 0)
        # jumps exactly at 1/6 and 5/6: x = 1 is the root of the stored
        # minimal polynomial, so theta = acos(1/2)/2pi exactly
        assert sf.jumps[0].poly == (-1, 1)
        assert not sf.jumps[0].upper and sf.jumps[1].upper
        assert sf.jumps[0].enclosure_to_width(
            Fraction(1, 10 ** 15)).contains(Fraction(1, 6))
        assert sf.jumps[1].enclosure_to_width(
            Fraction(1, 10 ** 15)).contains(Fraction(5, 6))

    def test_figure_eight_identically_zero(self, figure_eight):
        sf = signature_function(figure_eight)
        assert sf.jumps == ()
        assert sf.values == (0,)
        assert sf.is_zero

    def test_jump_symmetry_and_near_zero_arcs(self, corpus):
        for name, v in corpus.items():
            sf = signature_function(v)
            n = len(sf.jumps)
            assert n % 2 == 0, name
            for k in range(n // 2):
                assert not sf.jumps[k].upper
                assert sf.jumps[n - 1 - k].upper
            # arcs adjoining theta = 0 carry signature 0
            assert sf.values[0] == 0, name
            assert sf.values[-1] == 0, name

    def test_value_at_and_jump_error(self, trefoil):
        sf = signature_function(trefoil)
        assert sf.value_at(Fraction(1, 3)) == -2
        assert sf.value_at(Fraction(1, 100)) == 0
        with pytest.raises(PreconditionError, match="jump"):
            sf.value_at(Fraction(1, 6))

    def test_arc_constancy_spot_checks(self):
        rng = random.Random(53)
        for _ in range(12):
            v = random_seifert(rng, rng.randint(1, 2))
            sf = signature_function(v)
            spots = [Fraction(1, 97), Fraction(48, 97), Fraction(96, 97),
                     Fraction(1, 3), Fraction(2, 3)]
            for q in spots:
                try:
                    assert levine_tristram(v, q) == sf.value_at(q)
                except (PossiblySingularError, PreconditionError):
                    pass

    def test_mirror_negates(self, trefoil, corpus):
        for v in (trefoil, corpus["6_2"], corpus["5_2"]):
            sf = signature_function(v)
            sfm = signature_function(mirror(v))
            assert sfm.values == tuple(-x for x in sf.values)
            assert len(sfm.jumps) == len(sf.jumps)

    def test_additive_under_connected_sum(self, trefoil):
        s = connected_sum(trefoil, trefoil)
        sf = signature_function(s)
        assert sf.values == (0, -4, 0)

    def test_csv_export(self, trefoil):
        out = signature_csv(signature_function(trefoil), digits=12)
        lines = out.strip().split("\n")
        assert lines[0].startswith("# jump minimal polynomials")
        assert "x - 1" in lines[0]
        assert lines[1] == "theta_lo,theta_hi,sigma"
        assert lines[2] == "0,0.166666666667,0"
        assert lines[3] == "0.166666666667,0.833333333333,-2"
        assert lines[4] == "0.833333333333,1,0"
        # byte-identical on rerun
        assert out == signature_csv(signature_function(trefoil), digits=12)


class TestFiberedObstruction:
    def test_examples(self, trefoil):
        assert fibered_obstruction(trefoil, 1).passes
        r = fibered_obstruction(K61)
        assert not r.passes and r.reason == "not monic"
        assert fibered_obstruction(UNKNOT).passes

    def test_wrong_claimed_genus(self, trefoil):
        r = fibered_obstruction(trefoil, 2)
        assert not r.passes and "claimed genus" in r.reason


class TestFoxMilnor:
    def test_examples(self, trefoil):
        assert fox_milnor_test(alexander_polynomial(UNKNOT))
        assert fox_milnor_test(alexander_polynomial(K61))
        assert not fox_milnor_test(alexander_polynomial(trefoil))

    def test_61_factorization_oracle(self):
        # (2t - 1)(2/t - 1) = 5 - 2t - 2/t, a unit multiple of Delta(6_1)
        f = LaurentPoly({1: 2, 0: -1})
        prod = f * f.reciprocal()
        assert prod == LaurentPoly({1: -2, 0: 5, -1: -2})
        assert prod.unit_normalize_symmetric() == alexander_polynomial(K61)

    def test_square_knot_passes(self, trefoil):
        sq = connected_sum(trefoil, mirror(trefoil))
        assert fox_milnor_test(alexander_polynomial(sq))


class TestAlgebraicConcordance:
    def test_reflexive(self, trefoil):
        assert algebraically_concordant_test(trefoil, trefoil).indistinguishable

    def test_trefoil_vs_unknot(self, trefoil):
        r = algebraically_concordant_test(trefoil, UNKNOT)
        assert not r.indistinguishable
        assert "signature function" in r.distinguished_by

    def test_61_vs_unknot_indistinguishable(self):
        r = algebraically_concordant_test(K61, UNKNOT)
        assert r.indistinguishable

    def test_arf_distinguishes(self, trefoil):
        sq = connected_sum(trefoil, mirror(trefoil))  # arf 0, sigma 0
        r = algebraically_concordant_test(trefoil, sq)
        assert "arf" in r.distinguished_by

    def test_jump_sets_compared_exactly(self, trefoil, corpus):
        # 5_1 and trefoil have different jump sets (x-1 vs golden-ratio poly)
        r = algebraically_concordant_test(trefoil, corpus["5_1"])
        assert "signature function" in r.distinguished_by
