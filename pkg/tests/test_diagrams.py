import random

import pytest

from knotbench.diagrams import (
    UniTrivalentGraph,
    canonical_form,
    dim_B_by_vassiliev,
    dim_Bg,
    dim_graded_piece,
    enumerate_diagrams,
    grope_degree,
    rank_over_q,
    relation_matrix,
    vassiliev_degree,
)
from knotbench.errors import BudgetExceededError, PreconditionError


def Y():
    return UniTrivalentGraph(((0, 1, 2), (3,), (4,), (5,)), (3, 4, 5, 0, 1, 2))


def H_tree():
    return UniTrivalentGraph(((0, 2, 3), (1, 4, 5), (6,), (7,), (8,), (9,)),
                             (1, 0, 6, 7, 8, 9, 2, 3, 4, 5))


def theta_legs():
    return UniTrivalentGraph(((0, 2, 4), (1, 3, 5), (6,), (7,)),
                             (1, 0, 3, 2, 6, 7, 4, 5))


def relabel(d, seed, flips=()):
    """Random relabeling preserving rotations, plus explicit reversals."""
    rng = random.Random(seed)
    n = len(d.pairing)
    perm = list(range(n))
    rng.shuffle(perm)
    vperm = list(range(len(d.vertices)))
    rng.shuffle(vperm)
    verts = [None] * len(d.vertices)
    for i, v in enumerate(d.vertices):
        nv = tuple(perm[h] for h in v)
        k = rng.randrange(len(nv))
        nv = nv[k:] + nv[:k]  # cyclic rotation: same rotation system
        if i in flips:
            nv = tuple(reversed(nv))
        verts[vperm[i]] = nv
    pairing = [0] * n
    for h, p in enumerate(d.pairing):
        pairing[perm[h]] = perm[p]
    return UniTrivalentGraph(verts, pairing)


class TestDegrees:
    def test_vassiliev_examples(self):
        assert vassiliev_degree(Y()) == 2
        assert vassiliev_degree(H_tree()) == 3
        assert vassiliev_degree(theta_legs()) == 2

    def test_grope_examples(self):
        assert grope_degree(Y()) == 2
        assert grope_degree(theta_legs()) == 3
        assert grope_degree(H_tree()) == 3

    def test_validation(self):
        with pytest.raises(ValueError, match="tadpole"):
            UniTrivalentGraph(((0, 1, 2), (3,)), (1, 0, 3, 2))
        with pytest.raises(ValueError, match="connected"):
            UniTrivalentGraph(((0,), (1,), (2,), (3,)), (1, 0, 3, 2))
        with pytest.raises(ValueError, match="univalent"):
            UniTrivalentGraph(((0, 2, 4), (1, 3, 5)), (1, 0, 3, 2, 5, 4))


class TestCanonicalForm:
    def test_relabeling_same_key(self):
        for d in (Y(), H_tree(), theta_legs()):
            key, sign = canonical_form(d)
            for seed in range(25):
                k2, s2 = canonical_form(relabel(d, seed))
                assert (k2, s2) == (key, sign)

    def test_explicit_reversal_tracks_sign(self):
        th = theta_legs()
        key, sign = canonical_form(th)
        for seed in range(10):
            k2, s2 = canonical_form(relabel(th, seed, flips=(0,)))
            assert k2 == key and s2 == -sign

    def test_as_involution(self):
        th = theta_legs()
        twice = th.with_rotation_reversed(0).with_rotation_reversed(0)
        assert canonical_form(twice) == canonical_form(th)

    def test_leg_swap_degenerate_diagrams_get_plus_one(self):
        # Y is isomorphic to its own reversal via a leg swap
        key, sign = canonical_form(Y())
        kr, sr = canonical_form(Y().with_rotation_reversed(0))
        assert key == kr and sign == 1 == sr

    def test_distinct_classes_distinct_keys(self):
        assert canonical_form(Y())[0] != canonical_form(H_tree())[0]
        assert canonical_form(H_tree())[0] != canonical_form(theta_legs())[0]

    def test_idempotent_on_degree_3_enumeration(self):
        for key, d in enumerate_diagrams(3):
            assert canonical_form(d)[0] == key


class TestEnumeration:
    def test_degree_2_is_exactly_y(self):
        gens = enumerate_diagrams(2)
        assert len(gens) == 1
        assert gens[0][0] == canonical_form(Y())[0]

    def test_degree_3_two_classes(self):
        gens = enumerate_diagrams(3)
        assert len(gens) == 2
        keys = {k for k, _ in gens}
        assert keys == {canonical_form(H_tree())[0],
                        canonical_form(theta_legs())[0]}

    def test_below_range_rejected(self):
        with pytest.raises(PreconditionError, match="below grading range"):
            enumerate_diagrams(1)

    def test_sorted_and_deterministic(self):
        a = [k for k, _ in enumerate_diagrams(5)]
        b = [k for k, _ in enumerate_diagrams(5)]
        assert a == b == sorted(a)

    def test_grope_degree_tags(self):
        for i in (2, 3, 4, 5):
            for _, d in enumerate_diagrams(i):
                assert grope_degree(d) == i
                assert d.univalent_count() >= 1


class TestRelationMatrix:
    def test_as_kills_y(self):
        rel = relation_matrix(2)
        assert any(row == {0: 2} or row == {0: -2} for row in rel.rows)

    def test_empty_generator_set(self):
        rel = relation_matrix(2, generators=[])
        assert rel.rows == [] and rel.columns == ()

    def test_rows_homogeneous_through_degree_6(self):
        violations = 0
        for i in range(2, 7):
            gens = enumerate_diagrams(i)
            rel = relation_matrix(i, generators=gens)
            for deg in rel.row_degrees:
                if deg != i:
                    violations += 1
        assert violations == 0

    def test_ihx_rows_have_at_most_three_terms(self):
        rel = relation_matrix(4)
        for row, kind in zip(rel.rows, rel.row_kinds):
            if kind == "IHX":
                assert sum(abs(c) for c in row.values()) <= 3


class TestDimensions:
    def test_dim_2_and_3(self):
        assert dim_Bg(2) == 0
        assert dim_Bg(3) == 1

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            dim_Bg(8)
        with pytest.raises(PreconditionError):
            dim_Bg(1)

    def test_permuted_elimination_oracle(self):
        rng = random.Random(5)
        for i in (4, 5):
            gens = enumerate_diagrams(i)
            rel = relation_matrix(i, generators=gens)
            base = len(gens) - rank_over_q(rel.rows)
            for _ in range(5):
                ncols = len(rel.columns)
                colperm = list(range(ncols))
                rng.shuffle(colperm)
                rows = [{colperm[c]: v for c, v in row.items()}
                        for row in rel.rows]
                rng.shuffle(rows)
                assert len(gens) - rank_over_q(rows) == base

    def test_tadpole_toggle_preserves_dimension(self):
        plain = dim_graded_piece(3, "grope", allow_tadpoles=False)
        toggled = dim_graded_piece(3, "grope", allow_tadpoles=True)
        assert plain["dimension"] == toggled["dimension"] == 1
        assert toggled["num_diagrams"] > plain["num_diagrams"]

    def test_vassiliev_cross_grading(self):
        assert dim_B_by_vassiliev(0) == 0
        assert dim_B_by_vassiliev(1, include_strut=True) == 1
        assert dim_B_by_vassiliev(1, include_strut=False) == 0
        assert dim_B_by_vassiliev(2) == 1
        assert dim_B_by_vassiliev(3) == 1

    def test_rank_over_q_simple(self):
        assert rank_over_q([{0: 1, 1: 1}, {0: 2, 1: 2}, {1: 1}]) == 2
        assert rank_over_q([]) == 0
        assert rank_over_q([{}]) == 0
