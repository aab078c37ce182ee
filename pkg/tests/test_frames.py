import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from freesem.errors import CapacityExceeded, DialectError, InvalidFrame, UnknownName, ValuationNotUpClosed
from freesem.frames import (KripkeFrame, TernaryFrame, all_subsets, check_kripke_equivalence,
                            check_residuation, conv, eval_lambek, kripke_force, kripke_to_ternary,
                            left_residual, posets, random_ternary_frame, right_residual, ternary_frames,
                            translate, upsets)
from freesem.syntax import And, Imp, LImp, Or, RImp, Tensor, Var, formulas, parse

from oracles import (boolean_value, set_conv, set_kripke, set_left_residual, set_right_residual)

CHAIN2 = KripkeFrame(2, [(0, 0), (1, 1), (0, 1)])
EXAMPLE = TernaryFrame(2, [(0, 0, 0), (1, 0, 1)])


def full(n):
    return TernaryFrame(n, itertools.product(range(n), repeat=3))


def frames_up_to(n, samples, seed=0):
    rng = random.Random(seed)
    for size in range(n + 1):
        if size <= 2:
            yield from ternary_frames(size)
        else:
            for _ in range(samples):
                yield random_ternary_frame(size, rng)


class TestConv:
    def test_empty_relation(self):
        fr = TernaryFrame(2, [])
        assert all(conv(fr, f, g) == frozenset() for f in all_subsets(2) for g in all_subsets(2))

    def test_full_relation(self):
        fr = full(3)
        assert conv(fr, {0}, {2}) == {0, 1, 2}
        assert conv(fr, set(), {2}) == frozenset()

    def test_example(self):
        assert conv(EXAMPLE, {0}, {1}) == {1}

    def test_out_of_range_point(self):
        with pytest.raises(InvalidFrame):
            conv(EXAMPLE, {2}, {0})


class TestResiduals:
    def test_full_target(self):
        fr = random_ternary_frame(3, random.Random(1))
        for f in all_subsets(3):
            assert left_residual(fr, f, {0, 1, 2}) == {0, 1, 2}
            assert right_residual(fr, f, {0, 1, 2}) == {0, 1, 2}

    def test_empty_relation(self):
        fr = TernaryFrame(3, [])
        assert left_residual(fr, {1}, set()) == right_residual(fr, {1}, set()) == {0, 1, 2}

    def test_example(self):
        fr = TernaryFrame(2, [(1, 0, 1)])
        assert left_residual(fr, {1}, set()) == {1}

    def test_against_set_oracle(self):
        for fr in frames_up_to(3, 30, seed=5):
            subsets = all_subsets(fr.size)
            for f, g in itertools.product(subsets, repeat=2):
                T = fr.triples
                assert conv(fr, f, g) == set_conv(fr.size, T, f, g)
                assert left_residual(fr, f, g) == set_left_residual(fr.size, T, f, g)
                assert right_residual(fr, f, g) == set_right_residual(fr.size, T, f, g)


class TestResiduation:
    def test_all_small_frames(self):
        for fr in frames_up_to(2, 0):
            assert check_residuation(fr).ok

    def test_empty_and_full(self):
        assert check_residuation(TernaryFrame(3, [])).ok
        assert check_residuation(full(3)).ok

    def test_cap(self):
        with pytest.raises(CapacityExceeded):
            check_residuation(TernaryFrame(5, []))

    def test_detects_a_broken_residual(self, monkeypatch):
        import freesem.frames as fm
        monkeypatch.setattr(fm, "_left_residual", lambda fr, f, g: g)
        rep = check_residuation(EXAMPLE)
        assert not rep.ok
        v = rep.violations[0]
        assert v["kind"] == "left_residuation"
        # the counterexample replays against the honest operations
        monkeypatch.undo()
        lhs = conv(EXAMPLE, v["h"], v["f"]) <= set(v["g"])
        rhs = set(v["h"]) <= left_residual(EXAMPLE, v["f"], v["g"])
        assert lhs == v["conv_below"]
        assert lhs == rhs


def test_monotonicity():
    for fr in frames_up_to(3, 20, seed=2):
        subsets = all_subsets(fr.size)
        for f, f1, g in itertools.product(subsets, repeat=3):
            if f <= f1:
                assert conv(fr, f, g) <= conv(fr, f1, g)
                assert conv(fr, g, f) <= conv(fr, g, f1)
                assert left_residual(fr, f1, g) <= left_residual(fr, f, g)
                assert right_residual(fr, f1, g) <= right_residual(fr, f, g)
                assert left_residual(fr, g, f) <= left_residual(fr, g, f1)
                assert right_residual(fr, g, f) <= right_residual(fr, g, f1)


def test_symmetric_relation_has_one_residual():
    rng = random.Random(4)
    for _ in range(40):
        n = rng.randint(1, 3)
        base = random_ternary_frame(n, rng).triples
        fr = TernaryFrame(n, base | {(x, b, a) for (x, a, b) in base})
        for f, g in itertools.product(all_subsets(n), repeat=2):
            assert conv(fr, f, g) == conv(fr, g, f)
            assert left_residual(fr, f, g) == right_residual(fr, f, g)


class TestKripkeFrame:
    def test_validation(self):
        with pytest.raises(InvalidFrame):
            KripkeFrame(2, [(0, 1)])
        with pytest.raises(InvalidFrame):
            KripkeFrame(2, [(0, 0), (1, 1), (0, 1), (1, 0)])
        with pytest.raises(InvalidFrame):
            KripkeFrame(3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)])
        with pytest.raises(InvalidFrame):
            KripkeFrame(1, [(0, 3)])

    def test_closure_is_explicit(self):
        fr = KripkeFrame(3, [(0, 1), (1, 2)], close=True)
        assert (0, 2) in fr.leq and (1, 1) in fr.leq

    def test_upsets_of_chain(self):
        assert upsets(CHAIN2) == [frozenset(), frozenset({1}), frozenset({0, 1})]

    def test_poset_counts(self):
        assert [sum(1 for _ in posets(n)) for n in range(4)] == [1, 1, 3, 19]


class TestKripkeForce:
    def test_constants(self):
        v = {"A": [1]}
        assert kripke_force(CHAIN2, v, parse("top")) == {0, 1}
        assert kripke_force(CHAIN2, v, parse("bot")) == frozenset()
        assert kripke_force(CHAIN2, v, parse("A -> A")) == {0, 1}

    def test_negation_on_chain(self):
        v = {"A": [1]}
        assert kripke_force(CHAIN2, v, parse("A -> bot")) == frozenset()
        assert kripke_force(CHAIN2, v, parse("A | (A -> bot)")) == {1}

    def test_not_up_closed(self):
        with pytest.raises(ValuationNotUpClosed):
            kripke_force(CHAIN2, {"A": [0]}, parse("A"))

    def test_unknown_variable(self):
        with pytest.raises(UnknownName):
            kripke_force(CHAIN2, {"A": [1]}, parse("B"))

    def test_rejects_lambek_connectives(self):
        with pytest.raises(DialectError):
            kripke_force(CHAIN2, {"A": [1]}, parse("A * A"))

    def test_results_are_up_closed_and_match_clauses(self):
        fs = formulas(2, ["A", "B"], (And, Or, Imp))
        for n in range(4):
            for fr in posets(n):
                ups = upsets(fr)
                for u, w in itertools.product(ups, repeat=2):
                    v = {"A": u, "B": w}
                    for phi in fs[::37]:
                        s = kripke_force(fr, v, phi)
                        assert fr.is_up_closed(s)
                        assert s == set_kripke(n, fr.leq, v, phi)

    def test_discrete_posets_are_classical(self):
        fs = formulas(2, ["A", "B"], (And, Or, Imp))
        for n in range(1, 4):
            fr = KripkeFrame(n, [(p, p) for p in range(n)])
            for u, w in itertools.product(all_subsets(n), repeat=2):
                v = {"A": u, "B": w}
                for phi in fs[::13]:
                    s = kripke_force(fr, v, phi)
                    for p in range(n):
                        assert (p in s) == boolean_value({"A": p in u, "B": p in w}, phi)


class TestEvalLambek:
    def test_bottom_join(self):
        v = {"a": [1], "b": [0]}
        assert eval_lambek(EXAMPLE, v, parse("bot | a")) == {1}

    def test_tensor_example(self):
        assert eval_lambek(EXAMPLE, {"a": [0], "b": [1]}, parse("a * b")) == {1}

    def test_empty_relation_kills_tensor(self):
        fr = TernaryFrame(3, [])
        v = {"a": [0, 1, 2], "b": [1]}
        for phi in ["a * b", "(a \\ b) * top", "(a | b) * (b / a)"]:
            assert eval_lambek(fr, v, parse(phi)) == frozenset()

    def test_top_is_carrier(self):
        assert eval_lambek(EXAMPLE, {}, parse("top")) == {0, 1}

    def test_rejects_conjunction_and_implication(self):
        with pytest.raises(DialectError):
            eval_lambek(EXAMPLE, {"a": []}, parse("a & a"))
        with pytest.raises(DialectError):
            eval_lambek(EXAMPLE, {"a": []}, parse("a -> a"))


class TestKripkeToTernary:
    def test_discrete(self):
        fr = kripke_to_ternary(KripkeFrame(2, [(0, 0), (1, 1)]))
        assert fr.triples == {(0, 0, 0), (1, 1, 1)}

    def test_chain(self):
        fr = kripke_to_ternary(CHAIN2)
        assert fr.triples == {(0, 0, 0), (1, 0, 0), (1, 0, 1), (1, 1, 0), (1, 1, 1)}

    def test_empty(self):
        assert kripke_to_ternary(KripkeFrame(0, [])).triples == frozenset()

    def test_collapses_to_intuitionistic_operations(self):
        for n in range(4):
            for kf in posets(n):
                tf = kripke_to_ternary(kf)
                ups = upsets(kf)
                for f, g in itertools.product(ups, repeat=2):
                    assert conv(tf, f, g) == f & g
                    v = {"F": f, "G": g}
                    assert left_residual(tf, f, g) == kripke_force(kf, v, parse("F -> G"))
                    assert right_residual(tf, f, g) == left_residual(tf, f, g)


class TestKripkeEquivalence:
    def test_top(self):
        for n in range(3):
            for fr in posets(n):
                assert check_kripke_equivalence(fr, {}, parse("top")).ok

    def test_negation_on_chain(self):
        rep = check_kripke_equivalence(CHAIN2, {"A": [1]}, parse("A -> bot"))
        assert rep.ok and rep.details["kripke"] == []

    def test_translation(self):
        phi = parse("A & B -> A | bot")
        assert translate(phi) == parse("A * B \\ (A | bot)")
        assert translate(phi, RImp) == parse("(A | bot) / A * B")

    def test_mismatch_is_reported(self, monkeypatch):
        import freesem.frames as fm
        monkeypatch.setattr(fm, "_right_residual", lambda fr, f, g: 0)
        rep = check_kripke_equivalence(CHAIN2, {"A": [1]}, parse("A -> A"))
        assert [v["translation"] for v in rep.violations] == ["right"]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 3), st.integers(0, 2 ** 32))
def test_residuation_random_frames(n, seed):
    assert check_residuation(random_ternary_frame(n, random.Random(seed))).ok


def test_translation_leaves_lambek_formulas_alone():
    phi = parse("(a \\ b) * (c / a)")
    assert translate(phi) == phi
    assert translate(Var("x")) == Var("x")
    assert isinstance(translate(parse("a & b")), Tensor)
    assert isinstance(translate(parse("a -> b")), LImp)
