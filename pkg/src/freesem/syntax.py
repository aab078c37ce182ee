"""Formula syntax for the propositional and Lambek signatures.

Concrete grammar, loosest binding first::

    ->        implication, right associative
    \\  /      residuals, non-associative (``l \\ r`` and ``r / l``)
    |         disjunction, left associative
    * &       tensor and conjunction, left associative

Atoms are identifiers, ``top``, ``bot`` and parenthesised formulas.
"""
from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping

from .errors import DialectError, FormulaSyntaxError


class Formula:
    __slots__ = ()

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Var(Formula):
    name: str


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Binary(Formula):
    left: Formula
    right: Formula


class And(Binary):
    pass


class Or(Binary):
    pass


class Imp(Binary):
    pass


class Tensor(Binary):
    pass


class LImp(Binary):
    """``left ⊸L right``, written ``left \\ right``."""


class RImp(Binary):
    """``left ⊸R right``, written ``right / left``."""


class Dialect(enum.Enum):
    PROP = "prop"
    LAMBEK = "lambek"
    FULL = "full"


_ALLOWED = {
    Dialect.PROP: {Var, Top, Bot, And, Or, Imp},
    Dialect.LAMBEK: {Var, Tensor, LImp, RImp},
    Dialect.FULL: {Var, Top, Bot, And, Or, Imp, Tensor, LImp, RImp},
}

_PREC = {Imp: 0, LImp: 1, RImp: 1, Or: 2, And: 3, Tensor: 3}
_SYMBOL = {"->": Imp, "\\": LImp, "/": RImp, "|": Or, "&": And, "*": Tensor}
_KEYWORDS = {"top": Top, "bot": Bot}

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>->|[\\/|&*])|(?P<paren>[()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, dialect: Dialect):
        self.tokens = _tokenize(text)
        self.i = 0
        self.allowed = _ALLOWED[dialect]
        self.dialect = dialect

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def require(self, cls, pos):
        if cls not in self.allowed:
            raise DialectError(
                f"{cls.__name__} is not part of the {self.dialect.value} dialect (position {pos})")

    def formula(self, min_prec: int = 0) -> Formula:
        left = self.atom()
        while True:
            kind, text, pos = self.peek()
            if kind != "op" or _PREC[_SYMBOL[text]] < min_prec:
                return left
            cls = _SYMBOL[text]
            prec = _PREC[cls]
            self.require(cls, pos)
            self.take()
            if cls is Imp:
                right = self.formula(prec)
            else:
                right = self.formula(prec + 1)
            left = RImp(right, left) if cls is RImp else cls(left, right)
            if prec == 1:
                kind, text, pos = self.peek()
                if kind == "op" and _PREC[_SYMBOL[text]] == 1:
                    raise FormulaSyntaxError(
                        "residuals are non-associative; add parentheses", pos)

    def atom(self) -> Formula:
        kind, text, pos = self.take()
        if kind == "ident":
            if text in _KEYWORDS:
                cls = _KEYWORDS[text]
                self.require(cls, pos)
                return cls()
            return Var(text)
        if kind == "paren" and text == "(":
            inner = self.formula(0)
            kind, text, pos2 = self.take()
            if kind != "paren" or text != ")":
                raise FormulaSyntaxError("expected ')'", pos2)
            return inner
        if kind == "end":
            raise FormulaSyntaxError("unexpected end of input", pos)
        raise FormulaSyntaxError(f"unexpected {text!r}", pos)


def parse(text: str, dialect: Dialect | str = Dialect.FULL) -> Formula:
    dialect = Dialect(dialect)
    p = _Parser(text, dialect)
    f = p.formula(0)
    kind, tok, pos = p.peek()
    if kind != "end":
        raise FormulaSyntaxError(f"unexpected {tok!r}", pos)
    return f


def _prec(f: Formula) -> int:
    return _PREC.get(type(f), 4)


def to_text(f: Formula) -> str:
    """Canonical text with the fewest parentheses that still parse back to ``f``."""
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Top):
        return "top"
    if isinstance(f, Bot):
        return "bot"

    def wrap(g, parens):
        s = to_text(g)
        return f"({s})" if parens else s

    p = _PREC[type(f)]
    if isinstance(f, Imp):
        return f"{wrap(f.left, _prec(f.left) <= p)} -> {to_text(f.right)}"
    if isinstance(f, LImp):
        return f"{wrap(f.left, _prec(f.left) <= p)} \\ {wrap(f.right, _prec(f.right) <= p)}"
    if isinstance(f, RImp):
        return f"{wrap(f.right, _prec(f.right) <= p)} / {wrap(f.left, _prec(f.left) <= p)}"
    symbol = {Or: "|", And: "&", Tensor: "*"}[type(f)]
    return f"{wrap(f.left, _prec(f.left) < p)} {symbol} {wrap(f.right, _prec(f.right) <= p)}"


def conforms(f: Formula, dialect: Dialect | str) -> bool:
    allowed = _ALLOWED[Dialect(dialect)]
    return all(type(g) in allowed for g in subformulas(f))


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Binary):
        yield from subformulas(f.left)
        yield from subformulas(f.right)


def depth(f: Formula) -> int:
    if isinstance(f, Binary):
        return 1 + max(depth(f.left), depth(f.right))
    return 0


def variables(f: Formula) -> set[str]:
    return {g.name for g in subformulas(f) if isinstance(g, Var)}


def fold(f: Formula, var: Callable, top, bot, ops: Mapping[type, Callable]):
    """Evaluate ``f`` in an algebra: the unique structure-preserving map out of
    the formula syntax. ``ops`` maps each binary node class to a function."""
    if isinstance(f, Var):
        return var(f.name)
    if isinstance(f, Top):
        return top
    if isinstance(f, Bot):
        return bot
    return ops[type(f)](fold(f.left, var, top, bot, ops), fold(f.right, var, top, bot, ops))


BINARY = (And, Or, Imp, Tensor, LImp, RImp)


def formulas(max_depth: int, names: Iterable[str], connectives: Iterable[type] = BINARY,
             constants: bool = True) -> list[Formula]:
    """Every formula of depth at most ``max_depth``, shallow ones first."""
    atoms: list[Formula] = [Var(n) for n in names]
    if constants:
        atoms += [Top(), Bot()]
    connectives = tuple(connectives)
    levels = [atoms]
    everything = list(atoms)
    for _ in range(max_depth):
        below = everything
        newest = levels[-1]
        layer = []
        for cls in connectives:
            for l, r in itertools.product(below, below):
                if l in newest or r in newest:
                    layer.append(cls(l, r))
        levels.append(layer)
        everything = everything + layer
    return everything
