"""Enumeration kernel shared by the finite checks.

Everything here works on plain integers. ``solve`` enumerates assignments
of values to variables subject to equations ``m_i(x_i) == m_j(x_j)``,
which is the shape of every naturality square, end condition and cocone
condition used by the package.
"""
from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .errors import EnumerationCapExceeded

NODE_FACTOR = 20

Map = Optional[Mapping[int, int] | Sequence[int]]


class UnionFind:
    """Union-find whose roots are always the least member of their class."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if y < x:
            x, y = y, x
        self.parent[y] = x

    def classes(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            groups.setdefault(self.find(x), []).append(x)
        return [groups[r] for r in sorted(groups)]


def solve(
    domains: Sequence[Sequence[int]],
    constraints: Iterable[tuple[int, Map, int, Map]] = (),
    distinct: Iterable[Sequence[int]] = (),
    limit: int | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield all assignments satisfying the constraints, lexicographically.

    A constraint ``(i, mi, j, mj)`` demands ``mi[x_i] == mj[x_j]``, with
    ``None`` standing for the identity. Variables listed together in a
    ``distinct`` group must take pairwise different values. ``limit``
    bounds the number of families produced; the search may examine at most
    ``NODE_FACTOR * limit`` candidate values on the way.
    """
    n = len(domains)
    if n == 0:
        yield ()
        return
    if any(len(d) == 0 for d in domains):
        return
    domain_sets = [frozenset(d) for d in domains]
    checks: list[list[tuple[int, Map, Map]]] = [[] for _ in range(n)]
    for i, mi, j, mj in constraints:
        if i > j:
            i, mi, j, mj = j, mj, i, mi
        checks[j].append((i, mi, mj))
    earlier_distinct: list[list[int]] = [[] for _ in range(n)]
    for group in distinct:
        group = sorted(group)
        for pos, k in enumerate(group):
            earlier_distinct[k].extend(group[:pos])

    vals: list[int] = [0] * n
    nodes = found = 0
    node_limit = None if limit is None else NODE_FACTOR * limit

    def candidates(k: int):
        for i, mi, mk in checks[k]:
            if mk is None and i != k:
                w = vals[i] if mi is None else mi[vals[i]]
                return (w,) if w in domain_sets[k] else ()
        return domains[k]

    def consistent(k: int, v: int) -> bool:
        for i, mi, mk in checks[k]:
            left = v if i == k else vals[i]
            if mi is not None:
                left = mi[left]
            right = v if mk is None else mk[v]
            if left != right:
                return False
        for j in earlier_distinct[k]:
            if vals[j] == v:
                return False
        return True

    pending = [iter(())] * n
    pending[0] = iter(candidates(0))
    k = 0
    while k >= 0:
        for v in pending[k]:
            nodes += 1
            if node_limit is not None and nodes > node_limit:
                raise EnumerationCapExceeded(
                    f"search examined more than {node_limit} candidate values")
            if consistent(k, v):
                vals[k] = v
                break
        else:
            k -= 1
            continue
        if k == n - 1:
            found += 1
            if limit is not None and found > limit:
                raise EnumerationCapExceeded(f"more than {limit} families")
            yield tuple(vals)
        else:
            k += 1
            pending[k] = iter(candidates(k))


def encode_function(values: Sequence[int], codomain: int) -> int:
    """Index of a function ``range(len(values)) -> range(codomain)``.

    Matches the order of ``itertools.product(range(codomain), repeat=n)``.
    """
    index = 0
    for v in values:
        index = index * codomain + v
    return index


def decode_function(index: int, domain: int, codomain: int) -> tuple[int, ...]:
    out = [0] * domain
    for pos in range(domain - 1, -1, -1):
        index, out[pos] = divmod(index, codomain)
    return tuple(out)


def function_count(domain: int, codomain: int) -> int:
    return codomain ** domain
