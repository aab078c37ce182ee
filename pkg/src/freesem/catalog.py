"""Small named categories, monoidal structures and random presheaves."""
from __future__ import annotations

import itertools
import random
from typing import Iterator, Optional, Sequence

from .fincat import FinCat, Functor, Presheaf, product


def empty_category() -> FinCat:
    return FinCat(0, (), (), (), ())


def discrete(n: int) -> FinCat:
    table = tuple(tuple(g if g == f else None for f in range(n)) for g in range(n))
    return FinCat(n, tuple(range(n)), tuple(range(n)), tuple(range(n)), table)


def terminal() -> FinCat:
    return discrete(1)


def poset_category(n: int, leq: Sequence[tuple[int, int]]) -> FinCat:
    """Thin category with one morphism ``x -> y`` per pair ``x <= y``.

    Morphisms are numbered in lexicographic order of their pairs; ``leq`` must
    already be reflexive and transitive.
    """
    pairs = sorted(set(map(tuple, leq)))
    index = {p: i for i, p in enumerate(pairs)}
    table = []
    for (y, z) in pairs:
        table.append(tuple(index.get((x, z)) if y1 == y else None for (x, y1) in pairs))
    return FinCat(n, tuple(p[0] for p in pairs), tuple(p[1] for p in pairs),
                  tuple(index[(x, x)] for x in range(n)), tuple(table))


def chain(n: int) -> FinCat:
    return poset_category(n, [(x, y) for x in range(n) for y in range(x, n)])


def walking_arrow() -> FinCat:
    return chain(2)


def monoid_category(table: Sequence[Sequence[int]]) -> FinCat:
    """One-object category; ``table[g][f]`` is ``g∘f`` and element 0 is the unit."""
    k = len(table)
    return FinCat(1, (0,) * k, (0,) * k, (0,), tuple(tuple(row) for row in table))


def cyclic_group(n: int) -> FinCat:
    return monoid_category([[(g + f) % n for f in range(n)] for g in range(n)])


def walking_arrow_with_loop() -> FinCat:
    """Objects 0, 1; ``a: 0 -> 1``, idempotent ``e: 1 -> 1`` and ``e∘a``.

    Morphisms: 0 = id0, 1 = id1, 2 = a, 3 = e, 4 = e∘a.
    """
    N = None
    table = (
        (0, N, N, N, N),
        (N, 1, 2, 3, 4),
        (2, N, N, N, N),
        (N, 3, 4, 3, 4),
        (4, N, N, N, N),
    )
    return FinCat(2, (0, 1, 0, 1, 0), (0, 1, 1, 1, 1), (0, 1), table)


def parallel_pair() -> FinCat:
    N = None
    table = ((0, N, 2, 3), (N, 1, N, N), (N, 2, N, N), (N, 3, N, N))
    # morphisms: id0, id1, a: 1 -> 0, b: 1 -> 0
    return FinCat(2, (0, 1, 1, 1), (0, 1, 0, 0), (0, 1), table)


def span() -> FinCat:
    return poset_category(3, [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2)])


def cospan() -> FinCat:
    return poset_category(3, [(0, 0), (1, 1), (2, 2), (0, 2), (1, 2)])


def idempotent_monoid() -> FinCat:
    return monoid_category([[0, 1], [1, 1]])


def small_bases() -> dict[str, FinCat]:
    """Every named base with at most six morphisms."""
    return {
        "terminal": terminal(),
        "discrete2": discrete(2),
        "discrete3": discrete(3),
        "arrow": walking_arrow(),
        "chain3": chain(3),
        "z2": cyclic_group(2),
        "z3": cyclic_group(3),
        "idempotent": idempotent_monoid(),
        "parallel": parallel_pair(),
        "span": span(),
        "cospan": cospan(),
        "arrow_loop": walking_arrow_with_loop(),
    }


def partial_orders(n: int) -> Iterator[frozenset[tuple[int, int]]]:
    """All partial orders on ``range(n)`` as sets of pairs, including the diagonal."""
    off = [(x, y) for x in range(n) for y in range(n) if x != y]
    for bits in itertools.product((False, True), repeat=len(off)):
        rel = {(x, x) for x in range(n)} | {p for p, b in zip(off, bits) if b}
        if any((y, x) in rel for (x, y) in rel if x != y):
            continue
        if all((x, z) in rel for (x, y) in rel for (y1, z) in rel if y == y1):
            yield frozenset(rel)


def random_presheaf(C: FinCat, rng: random.Random, max_size: int = 3,
                    attempts: int = 200, budget: int = 20_000) -> Presheaf:
    """Sample a presheaf with value sets of size at most ``max_size``.

    Sizes are drawn first (repaired so that a nonempty set never has to map
    into an empty one), then actions are found by randomised backtracking.
    """
    for _ in range(attempts):
        sizes = [rng.randint(0, max_size) for _ in C.objects]
        changed = True
        while changed:
            changed = False
            for u in C.morphisms:
                if sizes[C.cod[u]] > 0 and sizes[C.dom[u]] == 0:
                    sizes[C.dom[u]] = rng.randint(1, max_size)
                    changed = True
        maps = _random_actions(C, sizes, rng, budget)
        if maps is not None:
            return Presheaf(C, tuple(sizes), tuple(maps))
    raise RuntimeError("could not sample a presheaf")


def _random_actions(C, sizes, rng, budget) -> Optional[list[tuple[int, ...]]]:
    m = C.n_morphisms
    order = [u for u in C.morphisms if not C.is_identity(u)]
    rank = {u: i for i, u in enumerate(order)}
    maps: list[Optional[tuple[int, ...]]] = [None] * m
    for x in C.objects:
        maps[C.identities[x]] = tuple(range(sizes[x]))
    # (g, f, h) with h = g∘f, checked when the last of the three is assigned
    checks: list[list[tuple[int, int, int]]] = [[] for _ in order]
    for g in C.morphisms:
        for f in C.morphisms:
            h = C.table[g][f]
            if h is None:
                continue
            last = max((rank[u] for u in (g, f, h) if u in rank), default=None)
            if last is not None:
                checks[last].append((g, f, h))
    spent = [0]

    def holds(g, f, h):
        Fg, Ff = maps[g], maps[f]
        return tuple(Ff[Fg[s]] for s in range(sizes[C.cod[g]])) == maps[h]

    def rec(i):
        if i == len(order):
            return True
        u = order[i]
        cands = list(itertools.product(range(sizes[C.dom[u]]), repeat=sizes[C.cod[u]]))
        rng.shuffle(cands)
        for fn in cands:
            spent[0] += 1
            if spent[0] > budget:
                return False
            maps[u] = fn
            if all(holds(*t) for t in checks[i]) and rec(i + 1):
                return True
        maps[u] = None
        return False

    return maps if rec(0) else None


def random_bifunctor_presheaf(D: FinCat, rng: random.Random, max_size: int = 3) -> Presheaf:
    """A random presheaf on ``D × D^op``, i.e. a random bifunctor on ``D``."""
    from .fincat import opposite
    return random_presheaf(product(D, opposite(D)), rng, max_size)


def tensor_functor(A: FinCat, object_rule, morphism_rule) -> Functor:
    """Build ``A × A -> A`` from rules on pairs of objects and pairs of morphisms."""
    AA = product(A, A, max_morphisms=A.n_morphisms ** 2)
    n, m = A.n_objects, A.n_morphisms
    return Functor(
        AA, A,
        tuple(object_rule(b, c) for b in range(n) for c in range(n)),
        tuple(morphism_rule(p, q) for p in range(m) for q in range(m)),
    )


def terminal_monoidal():
    from .dayconv import MonoidalCat
    A = terminal()
    return MonoidalCat(A, tensor_functor(A, lambda b, c: 0, lambda p, q: 0), 0)


def group_monoidal(n: int = 2):
    """Cyclic group of order ``n`` as a one-object monoidal category."""
    from .dayconv import MonoidalCat
    A = cyclic_group(n)
    return MonoidalCat(A, tensor_functor(A, lambda b, c: 0, lambda p, q: (p + q) % n), 0)


def chain_min_monoidal(n: int = 3):
    """Chain ``0 <= ... <= n-1`` with ``⊗ = min`` and unit the top element."""
    from .dayconv import MonoidalCat
    A = chain(n)

    def on_morphisms(p, q):
        return A.hom(min(A.dom[p], A.dom[q]), min(A.cod[p], A.cod[q]))[0]

    return MonoidalCat(A, tensor_functor(A, min, on_morphisms), n - 1)


def monoidal_bases() -> dict:
    return {
        "terminal": terminal_monoidal(),
        "z2": group_monoidal(2),
        "chain3_min": chain_min_monoidal(3),
    }
