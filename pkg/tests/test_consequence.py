import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from freesem.consequence import (SatisfactionRelation, check_extension_compatibility, closure,
                                 consequence, kleisli, theory)
from freesem.errors import MalformedTable, UnknownName

from oracles import loop_consequence


def relation(matrix):
    rows, cols = len(matrix), len(matrix[0]) if matrix else 0
    return SatisfactionRelation([f"M{i}" for i in range(rows)], [f"s{j}" for j in range(cols)], matrix)


def random_relation(rng, rows, cols, p=0.5):
    return relation([[rng.random() < p for _ in range(cols)] for _ in range(rows)])


def subsets(xs):
    return [frozenset(c) for r in range(len(xs) + 1) for c in itertools.combinations(xs, r)]


matrices = st.integers(0, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.booleans(), min_size=c, max_size=c), min_size=r, max_size=r)
        .map(lambda m, c=c: (m, c))))


def build(mc):
    m, c = mc
    return SatisfactionRelation([f"M{i}" for i in range(len(m))], [f"s{j}" for j in range(c)], m)


class TestTheory:
    def test_rows(self):
        rel = SatisfactionRelation(["M1", "M2", "M3"], ["phi", "psi"],
                                   [[False, False], [True, True], [True, False]])
        assert theory(rel, "M1") == frozenset()
        assert theory(rel, "M2") == {"phi", "psi"}
        assert theory(rel, "M3") == {"phi"}

    def test_unknown_model(self):
        with pytest.raises(UnknownName):
            theory(relation([[True]]), "nobody")


class TestConsequence:
    def test_empty_premises(self):
        rel = relation([[True, False], [True, True]])
        assert consequence(rel, [], "s0")
        assert not consequence(rel, [], "s1")

    def test_single_model(self):
        rel = SatisfactionRelation(["M1"], ["phi", "psi"], [[True, False]])
        assert not consequence(rel, ["phi"], "psi")
        assert consequence(rel, ["psi"], "phi")

    def test_unknown_sentence(self):
        with pytest.raises(UnknownName):
            consequence(relation([[True]]), ["s0"], "s9")
        with pytest.raises(UnknownName):
            consequence(relation([[True]]), ["s9"], "s0")

    def test_against_loop_evaluation(self):
        rng = random.Random(11)
        for _ in range(100):
            rel = random_relation(rng, 3, 3)
            for gamma in subsets(range(3)):
                for psi in range(3):
                    names = [rel.sentences[j] for j in gamma]
                    assert consequence(rel, names, rel.sentences[psi]) == \
                        loop_consequence(rel.matrix, gamma, psi)

    def test_closure_lists_consequences(self):
        rel = relation([[True, True, False], [False, True, True]])
        assert closure(rel, ["s0"]) == {"s0", "s1"}
        assert closure(rel, []) == {"s1"}


class TestMalformed:
    def test_duplicate_names(self):
        with pytest.raises(MalformedTable):
            SatisfactionRelation(["M", "M"], ["s"], [[True], [False]])
        with pytest.raises(MalformedTable):
            SatisfactionRelation(["M"], ["s", "s"], [[True, False]])

    def test_ragged(self):
        with pytest.raises(MalformedTable):
            SatisfactionRelation(["M", "N"], ["s", "t"], [[True, False], [True]])
        with pytest.raises(MalformedTable):
            SatisfactionRelation(["M"], ["s"], [])


class TestKleisli:
    def test_empty_models_total(self):
        rel = SatisfactionRelation([], ["a", "b"], [])
        assert kleisli(rel).pairs() == [(x, y) for x in "ab" for y in "ab"]

    def test_identity_like_is_equality(self):
        rel = relation([[True, False], [False, True]])
        order = kleisli(rel)
        assert order.pairs() == [("s0", "s0"), ("s1", "s1")]

    def test_one_full_model_is_total(self):
        order = kleisli(relation([[True] * 3]))
        assert len(order.pairs()) == 9

    def test_equivalent_sentences_are_kept_apart(self):
        order = kleisli(relation([[True, True], [False, False]]))
        assert order.sentences == ("s0", "s1")
        assert order.holds("s0", "s1") and order.holds("s1", "s0")


class TestCompatibility:
    def test_identity_like(self):
        assert check_extension_compatibility(relation([[True, False], [False, True]])).ok

    def test_random(self):
        rng = random.Random(3)
        for _ in range(100):
            assert check_extension_compatibility(random_relation(rng, 3, 3)).ok

    def test_reports_a_planted_defect(self, monkeypatch):
        import freesem.consequence as cq
        real = cq.kleisli

        def loose(rel):
            order = real(rel)
            n = len(order.sentences)
            return cq.KleisliPreorder(order.sentences, tuple((True,) * n for _ in range(n)))

        monkeypatch.setattr(cq, "kleisli", loose)
        rep = check_extension_compatibility(relation([[True, False]]))
        assert rep.violations == [{"kind": "incompatible", "model": "M0",
                                   "premise": "s0", "conclusion": "s1"}]


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_closure_operator_laws(mc):
    rel = build(mc)
    names = rel.sentences
    for g in subsets(names):
        cn = closure(rel, g)
        assert g <= cn
        assert closure(rel, cn) == cn
        for g1 in subsets(names):
            if g <= g1:
                assert cn <= closure(rel, g1)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_preorder_laws(mc):
    rel = build(mc)
    order = kleisli(rel)
    S = rel.sentences
    for x in S:
        assert order.holds(x, x)
    for x, y, z in itertools.product(S, repeat=3):
        if order.holds(x, y) and order.holds(y, z):
            assert order.holds(x, z)
    for x, y in itertools.product(S, repeat=2):
        assert order.holds(x, y) == consequence(rel, [x], y)
