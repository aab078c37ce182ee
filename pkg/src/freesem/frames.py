"""Powerset semantics over ternary frames and Kripke posets.

Subsets are exposed as frozensets of points. Internally they are bit masks,
which keeps the exhaustive sweeps cheap.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import (CapacityExceeded, DialectError, InvalidFrame, Report, UnknownName,
                     ValuationNotUpClosed)
from .syntax import BINARY, And, Bot, Formula, Imp, LImp, Or, RImp, Tensor, Top, Var, fold

Subset = frozenset


def to_mask(points: Iterable[int], size: int) -> int:
    mask = 0
    for p in points:
        if not (isinstance(p, int) and 0 <= p < size):
            raise InvalidFrame(f"point {p!r} is outside a carrier of size {size}")
        mask |= 1 << p
    return mask


def from_mask(mask: int) -> Subset:
    out = []
    p = 0
    while mask:
        if mask & 1:
            out.append(p)
        mask >>= 1
        p += 1
    return frozenset(out)


@dataclass(frozen=True)
class TernaryFrame:
    size: int
    triples: frozenset
    # out[a][b] = mask of x with R(x, a, b)
    out: tuple = field(init=False, repr=False, compare=False)

    def __init__(self, size: int, triples: Iterable[Iterable[int]]):
        if not isinstance(size, int) or size < 0:
            raise InvalidFrame(f"size must be a natural number, got {size!r}")
        cleaned = set()
        for t in triples:
            t = tuple(t)
            if len(t) != 3 or not all(isinstance(i, int) and 0 <= i < size for i in t):
                raise InvalidFrame(f"triple {list(t)} is not in range for size {size}")
            cleaned.add(t)
        out = [[0] * size for _ in range(size)]
        for x, a, b in cleaned:
            out[a][b] |= 1 << x
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "triples", frozenset(cleaned))
        object.__setattr__(self, "out", tuple(map(tuple, out)))

    @property
    def full(self) -> int:
        return (1 << self.size) - 1


@dataclass(frozen=True)
class KripkeFrame:
    size: int
    leq: frozenset
    up: tuple = field(init=False, repr=False, compare=False)

    def __init__(self, size: int, leq: Iterable[Iterable[int]], close: bool = False):
        if not isinstance(size, int) or size < 0:
            raise InvalidFrame(f"size must be a natural number, got {size!r}")
        pairs = set()
        for pq in leq:
            pq = tuple(pq)
            if len(pq) != 2 or not all(isinstance(i, int) and 0 <= i < size for i in pq):
                raise InvalidFrame(f"pair {list(pq)} is not in range for size {size}")
            pairs.add(pq)
        if close:
            pairs = _reflexive_transitive_closure(size, pairs)
        for p in range(size):
            if (p, p) not in pairs:
                raise InvalidFrame(f"order is not reflexive at {p}")
        for (p, q) in pairs:
            if p != q and (q, p) in pairs:
                raise InvalidFrame(f"order is not antisymmetric: {p} and {q}")
            for (q1, r) in pairs:
                if q1 == q and (p, r) not in pairs:
                    raise InvalidFrame(f"order is not transitive: {p} <= {q} <= {r}")
        up = [0] * size
        for p, q in pairs:
            up[p] |= 1 << q
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "leq", frozenset(pairs))
        object.__setattr__(self, "up", tuple(up))

    def is_up_closed(self, points: Iterable[int]) -> bool:
        mask = to_mask(points, self.size)
        return all(self.up[p] & ~mask == 0 for p in range(self.size) if mask >> p & 1)


def _reflexive_transitive_closure(size, pairs):
    rel = set(pairs) | {(p, p) for p in range(size)}
    for k in range(size):
        for i in range(size):
            if (i, k) in rel:
                for j in range(size):
                    if (k, j) in rel:
                        rel.add((i, j))
    return rel


def upsets(fr: KripkeFrame) -> list[Subset]:
    """All up-closed subsets, ordered by bit mask."""
    return [from_mask(m) for m in range(1 << fr.size)
            if all(fr.up[p] & ~m == 0 for p in range(fr.size) if m >> p & 1)]


def all_subsets(size: int) -> list[Subset]:
    return [from_mask(m) for m in range(1 << size)]


def _conv(fr: TernaryFrame, f: int, g: int) -> int:
    x = 0
    out = fr.out
    for a in range(fr.size):
        if f >> a & 1:
            row = out[a]
            for b in range(fr.size):
                if g >> b & 1:
                    x |= row[b]
    return x


def _left_residual(fr: TernaryFrame, f: int, g: int) -> int:
    res = 0
    out = fr.out
    for a in range(fr.size):
        row = out[a]
        if all(row[b] & ~g == 0 for b in range(fr.size) if f >> b & 1):
            res |= 1 << a
    return res


def _right_residual(fr: TernaryFrame, f: int, g: int) -> int:
    res = 0
    out = fr.out
    for b in range(fr.size):
        if all(out[a][b] & ~g == 0 for a in range(fr.size) if f >> a & 1):
            res |= 1 << b
    return res


def conv(fr: TernaryFrame, f: Iterable[int], g: Iterable[int]) -> Subset:
    """Points x with witnesses a in f, b in g and R(x, a, b)."""
    return from_mask(_conv(fr, to_mask(f, fr.size), to_mask(g, fr.size)))


def left_residual(fr: TernaryFrame, f: Iterable[int], g: Iterable[int]) -> Subset:
    """Points a such that R(x, a, b) with b in f forces x into g."""
    return from_mask(_left_residual(fr, to_mask(f, fr.size), to_mask(g, fr.size)))


def right_residual(fr: TernaryFrame, f: Iterable[int], g: Iterable[int]) -> Subset:
    """Points b such that R(x, a, b) with a in f forces x into g."""
    return from_mask(_right_residual(fr, to_mask(f, fr.size), to_mask(g, fr.size)))


def check_residuation(fr: TernaryFrame, max_size: int = 4) -> Report:
    """Test both adjunctions against conv over every triple of subsets."""
    if fr.size > max_size:
        raise CapacityExceeded(f"exhaustive residuation check is capped at size {max_size}")
    rep = Report("residuation")
    n = 1 << fr.size
    for f in range(n):
        for g in range(n):
            lres = _left_residual(fr, f, g)
            rres = _right_residual(fr, f, g)
            for h in range(n):
                lhs = _conv(fr, h, f) & ~g == 0
                rhs = h & ~lres == 0
                if lhs != rhs:
                    rep.add("left_residuation", h=sorted(from_mask(h)), f=sorted(from_mask(f)),
                            g=sorted(from_mask(g)), conv_below=lhs, below_residual=rhs)
                lhs = _conv(fr, f, h) & ~g == 0
                rhs = h & ~rres == 0
                if lhs != rhs:
                    rep.add("right_residuation", h=sorted(from_mask(h)), f=sorted(from_mask(f)),
                            g=sorted(from_mask(g)), conv_below=lhs, below_residual=rhs)
    rep.details["subsets"] = n
    return rep


def _valuation_masks(size: int, v: Mapping[str, Iterable[int]]) -> dict[str, int]:
    return {name: to_mask(points, size) for name, points in v.items()}


def _lookup(masks):
    def var(name):
        try:
            return masks[name]
        except KeyError:
            raise UnknownName(f"variable {name!r} has no valuation") from None
    return var


def _reject(name):
    def op(_l, _r):
        raise DialectError(f"{name} has no interpretation here")
    return op


def kripke_force(fr: KripkeFrame, v: Mapping[str, Iterable[int]], phi: Formula) -> Subset:
    """Worlds forcing ``phi``; implication quantifies over all later worlds."""
    masks = _valuation_masks(fr.size, v)
    for name, m in masks.items():
        if not all(fr.up[p] & ~m == 0 for p in range(fr.size) if m >> p & 1):
            raise ValuationNotUpClosed(f"valuation of {name!r} is not up-closed")
    up = fr.up

    def imp(f, g):
        return sum(1 << p for p in range(fr.size) if up[p] & f & ~g == 0)

    ops = {And: int.__and__, Or: int.__or__, Imp: imp,
           Tensor: _reject("tensor"), LImp: _reject("left residual"),
           RImp: _reject("right residual")}
    return from_mask(fold(phi, _lookup(masks), (1 << fr.size) - 1, 0, ops))


def eval_lambek(fr: TernaryFrame, v: Mapping[str, Iterable[int]], phi: Formula) -> Subset:
    """Powerset semantics of ``phi``: tensor is conv, residuals are the two
    exponentials, join is union, ``bot`` is empty and ``top`` is the carrier."""
    masks = _valuation_masks(fr.size, v)
    ops = {Tensor: lambda f, g: _conv(fr, f, g),
           LImp: lambda f, g: _left_residual(fr, f, g),
           RImp: lambda f, g: _right_residual(fr, f, g),
           Or: int.__or__,
           And: _reject("conjunction on a bare ternary frame"),
           Imp: _reject("implication on a bare ternary frame")}
    return from_mask(fold(phi, _lookup(masks), fr.full, 0, ops))


def kripke_to_ternary(fr: KripkeFrame) -> TernaryFrame:
    """R(x, a, b) iff a <= x and b <= x."""
    below = [[a for a in range(fr.size) if (a, x) in fr.leq] for x in range(fr.size)]
    return TernaryFrame(fr.size, [(x, a, b) for x in range(fr.size)
                                  for a in below[x] for b in below[x]])


def translate(phi: Formula, implication=LImp) -> Formula:
    """Rewrite conjunction as tensor and implication as the given residual."""
    rename = {And: Tensor, Imp: implication}
    return fold(phi, Var, Top(), Bot(), {k: rename.get(k, k) for k in BINARY})


def check_kripke_equivalence(fr: KripkeFrame, v: Mapping[str, Iterable[int]],
                             phi: Formula) -> Report:
    rep = Report("kripke_equivalence")
    forced = kripke_force(fr, v, phi)
    tern = kripke_to_ternary(fr)
    rep.details["kripke"] = sorted(forced)
    for label, residual in (("left", LImp), ("right", RImp)):
        value = eval_lambek(tern, v, translate(phi, residual))
        if value != forced:
            rep.add("translation_mismatch", translation=label, kripke=sorted(forced),
                    ternary=sorted(value))
    return rep


def ternary_frames(size: int) -> Iterator[TernaryFrame]:
    """Every ternary relation on a carrier of the given size."""
    cube = list(itertools.product(range(size), repeat=3))
    for bits in range(1 << len(cube)):
        yield TernaryFrame(size, [t for i, t in enumerate(cube) if bits >> i & 1])


def random_ternary_frame(size: int, rng: random.Random, density: float | None = None) -> TernaryFrame:
    p = rng.random() if density is None else density
    return TernaryFrame(size, [t for t in itertools.product(range(size), repeat=3)
                               if rng.random() < p])


def posets(size: int) -> Iterator[KripkeFrame]:
    from .catalog import partial_orders
    for rel in partial_orders(size):
        yield KripkeFrame(size, rel)
