import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from freesem.errors import DialectError, FormulaSyntaxError
from freesem.syntax import (BINARY, And, Bot, Imp, LImp, Or, RImp, Tensor, Top, Var, conforms, depth,
                            fold, formulas, parse, to_text, variables)

from oracles import iterative_fold

a, b, c = Var("a"), Var("b"), Var("c")

atoms = st.sampled_from([a, b, c, Top(), Bot()])


def formula_trees(max_depth=5):
    return st.recursive(atoms, lambda sub: st.builds(lambda cls, l, r: cls(l, r),
                                                     st.sampled_from(BINARY), sub, sub),
                        max_leaves=2 ** max_depth).filter(lambda f: depth(f) <= max_depth)


def noisy_text(f, draw_bool):
    """Printed text with redundant parentheses and spacing sprinkled in."""
    if not hasattr(f, "left"):
        s = to_text(f)
    else:
        sym = {And: "&", Or: "|", Imp: "->", Tensor: "*", LImp: "\\", RImp: "/"}[type(f)]
        l, r = noisy_text(f.left, draw_bool), noisy_text(f.right, draw_bool)
        if isinstance(f, RImp):
            l, r = r, l
        s = f"({l}){' ' if draw_bool() else ''}{sym}  ({r})"
    return f"( {s} )" if draw_bool() else s


class TestParse:
    def test_conjunction_binds_tighter_than_implication(self):
        assert parse("a & b -> c") == Imp(And(a, b), c)

    def test_parenthesised_residual(self):
        assert parse("(a \\ b) * c") == Tensor(LImp(a, b), c)

    def test_residuals_do_not_chain(self):
        with pytest.raises(FormulaSyntaxError) as err:
            parse("a \\ b \\ c")
        assert err.value.position == 6
        with pytest.raises(FormulaSyntaxError):
            parse("a / b \\ c")

    def test_right_division_reads_backwards(self):
        assert parse("a / b") == RImp(b, a)

    def test_associativity(self):
        assert parse("a -> b -> c") == Imp(a, Imp(b, c))
        assert parse("a | b | c") == Or(Or(a, b), c)
        assert parse("a & b * c") == Tensor(And(a, b), c)

    def test_precedence_ladder(self):
        assert parse("a | b & c -> a \\ b") == Imp(Or(a, And(b, c)), LImp(a, b))

    def test_keywords_and_identifiers(self):
        assert parse("top") == Top()
        assert parse("bot | topper") == Or(Bot(), Var("topper"))
        assert parse("_x1") == Var("_x1")

    @pytest.mark.parametrize("text, pos", [("a &", 3), ("(a", 2), ("a $ b", 2), ("", 0),
                                           ("a b", 2), (")", 0), ("a - > b", 2)])
    def test_error_positions(self, text, pos):
        with pytest.raises(FormulaSyntaxError) as err:
            parse(text)
        assert err.value.position == pos

    def test_dialects(self):
        with pytest.raises(DialectError):
            parse("a * b", "prop")
        with pytest.raises(DialectError):
            parse("a & b", "lambek")
        with pytest.raises(DialectError):
            parse("top", "lambek")
        assert parse("a \\ b * c", "lambek") == LImp(a, Tensor(b, c))
        assert parse("a -> bot", "prop") == Imp(a, Bot())


class TestPrint:
    def test_examples(self):
        assert to_text(Imp(And(a, b), c)) == "a & b -> c"
        assert to_text(Tensor(LImp(a, b), c)) == "(a \\ b) * c"
        assert to_text(Top()) == "top"

    def test_needed_parentheses(self):
        assert to_text(Imp(Imp(a, b), c)) == "(a -> b) -> c"
        assert to_text(And(a, And(b, c))) == "a & (b & c)"
        assert to_text(LImp(LImp(a, b), c)) == "(a \\ b) \\ c"
        assert to_text(RImp(a, RImp(b, c))) == "(c / b) / a"
        assert str(Or(a, Bot())) == "a | bot"


def test_formula_enumeration_counts():
    assert len(formulas(1, ["A"], (And, Or, Imp))) == 30
    assert len(formulas(2, ["A"], (And, Or, Imp))) == 2703
    fs = formulas(2, "ab", (Tensor,), constants=False)
    assert len(fs) == len(set(fs)) == 2 + 4 + (36 - 4)


def test_exhaustive_round_trip_depth_two():
    for f in formulas(2, "a"):
        assert parse(to_text(f)) == f


@settings(max_examples=400, deadline=None)
@given(formula_trees())
def test_round_trip(f):
    assert parse(to_text(f)) == f


@settings(max_examples=200, deadline=None)
@given(formula_trees(4), st.randoms())
def test_canonical_form_is_idempotent(f, rnd):
    text = noisy_text(f, lambda: rnd.random() < 0.5)
    once = to_text(parse(text))
    assert once == to_text(f)
    assert to_text(parse(once)) == once


ALGEBRAS = [
    # node count
    (lambda n: 1, 1, 1, {k: (lambda l, r: l + r + 1) for k in BINARY}),
    # polish notation
    (lambda n: n, "T", "F", {k: (lambda k: lambda l, r: f"{k.__name__}({l},{r})")(k) for k in BINARY}),
    # a boolean reading where residuals become implications
    (lambda n: n != "b", True, False,
     {And: lambda l, r: l and r, Or: lambda l, r: l or r, Imp: lambda l, r: (not l) or r,
      Tensor: lambda l, r: l and r, LImp: lambda l, r: (not l) or r, RImp: lambda l, r: (not l) or r}),
    # integers mod 7 with non-commutative operations
    (lambda n: len(n) * 3, 1, 0,
     {And: lambda l, r: (l * r) % 7, Or: lambda l, r: (l + r) % 7, Imp: lambda l, r: (l - r) % 7,
      Tensor: lambda l, r: (2 * l + r) % 7, LImp: lambda l, r: (l + 3 * r) % 7,
      RImp: lambda l, r: (5 * l - r) % 7}),
]


@settings(max_examples=300, deadline=None)
@given(formula_trees())
def test_two_folds_agree(f):
    for var, top, bot, ops in ALGEBRAS:
        assert fold(f, var, top, bot, ops) == iterative_fold(f, var, top, bot, ops)


def test_helpers():
    f = parse("a * (b / c) | top")
    assert depth(f) == 3
    assert variables(f) == {"a", "b", "c"}
    assert conforms(parse("a * b"), "lambek")
    assert not conforms(f, "lambek")
    assert conforms(f, "full")
