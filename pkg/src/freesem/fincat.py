"""Finite categories and the enumeration machinery built on them.

Objects and morphisms are integers. A category stores a total composition
table ``table[g][f] == g∘f`` (``None`` when not composable); functors and
presheaves are plain index maps over those integers.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterator, Optional, Sequence, Union

from ._search import UnionFind, decode_function, encode_function, solve
from .errors import (
    DEFAULT_CAPS,
    CapacityExceeded,
    Caps,
    EnumerationCapExceeded,
    MalformedTable,
    Report,
)


@dataclass(frozen=True)
class FinCat:
    n_objects: int
    dom: tuple[int, ...]
    cod: tuple[int, ...]
    identities: tuple[int, ...]
    table: tuple[tuple[Optional[int], ...], ...]

    def __post_init__(self):
        m = len(self.dom)
        if self.n_objects < 0:
            raise MalformedTable("negative object count")
        if len(self.cod) != m or len(self.table) != m:
            raise MalformedTable("dom, cod and composition table disagree in length")
        for f in range(m):
            if not (0 <= self.dom[f] < self.n_objects and 0 <= self.cod[f] < self.n_objects):
                raise MalformedTable(f"morphism {f} has an endpoint out of range")
        if len(self.identities) != self.n_objects:
            raise MalformedTable("need exactly one identity per object")
        for x, i in enumerate(self.identities):
            if not 0 <= i < m:
                raise MalformedTable(f"identity of object {x} is out of range")
        for g, row in enumerate(self.table):
            if len(row) != m:
                raise MalformedTable(f"composition row {g} has wrong length")
            for h in row:
                if h is not None and not 0 <= h < m:
                    raise MalformedTable(f"composition row {g} refers to a missing morphism")

    @classmethod
    def from_lists(cls, n_objects, morphisms, identities, table) -> "FinCat":
        return cls(
            n_objects,
            tuple(d for d, _ in morphisms),
            tuple(c for _, c in morphisms),
            tuple(identities),
            tuple(tuple(row) for row in table),
        )

    @property
    def n_morphisms(self) -> int:
        return len(self.dom)

    @property
    def objects(self) -> range:
        return range(self.n_objects)

    @property
    def morphisms(self) -> range:
        return range(len(self.dom))

    def id(self, x: int) -> int:
        return self.identities[x]

    def is_identity(self, f: int) -> bool:
        return self.identities[self.dom[f]] == f

    def compose(self, g: int, f: int) -> int:
        h = self.table[g][f]
        if h is None:
            raise ValueError(f"morphisms {g} and {f} are not composable")
        return h

    @cached_property
    def _homs(self) -> dict[tuple[int, int], tuple[int, ...]]:
        homs: dict[tuple[int, int], list[int]] = {}
        for f in self.morphisms:
            homs.setdefault((self.dom[f], self.cod[f]), []).append(f)
        return {k: tuple(v) for k, v in homs.items()}

    @cached_property
    def _hom_pos(self) -> tuple[int, ...]:
        pos = [0] * self.n_morphisms
        for fs in self._homs.values():
            for i, f in enumerate(fs):
                pos[f] = i
        return tuple(pos)

    def hom(self, x: int, y: int) -> tuple[int, ...]:
        return self._homs.get((x, y), ())

    def hom_position(self, f: int) -> int:
        """Position of ``f`` inside ``hom(dom f, cod f)``."""
        return self._hom_pos[f]

    def inverse(self, f: int) -> Optional[int]:
        for g in self.hom(self.cod[f], self.dom[f]):
            if (self.table[g][f] == self.identities[self.dom[f]]
                    and self.table[f][g] == self.identities[self.cod[f]]):
                return g
        return None

    def is_iso(self, f: int) -> bool:
        return self.inverse(f) is not None

    def nonidentity_morphisms(self) -> list[int]:
        return [f for f in self.morphisms if not self.is_identity(f)]


def validate_category(C: FinCat) -> Report:
    """Scan identities, the definedness pattern of the table, and associativity."""
    report = Report("category")
    for x in C.objects:
        i = C.identities[x]
        if C.dom[i] != x or C.cod[i] != x:
            report.add("identity_type", object=x, morphism=i)
    for g in C.morphisms:
        for f in C.morphisms:
            h = C.table[g][f]
            composable = C.cod[f] == C.dom[g]
            if composable and h is None:
                report.add("missing_composite", g=g, f=f)
            elif not composable and h is not None:
                report.add("spurious_composite", g=g, f=f, composite=h)
            elif h is not None and (C.dom[h] != C.dom[f] or C.cod[h] != C.cod[g]):
                report.add("composite_type", g=g, f=f, composite=h)
    if not report.ok:
        return report
    for f in C.morphisms:
        if C.table[f][C.identities[C.dom[f]]] != f:
            report.add("right_unit", f=f, identity=C.identities[C.dom[f]])
        if C.table[C.identities[C.cod[f]]][f] != f:
            report.add("left_unit", f=f, identity=C.identities[C.cod[f]])
    for h in C.morphisms:
        for g in C.morphisms:
            hg = C.table[h][g]
            if hg is None:
                continue
            for f in C.morphisms:
                gf = C.table[g][f]
                if gf is None:
                    continue
                left, right = C.table[hg][f], C.table[h][gf]
                if left != right:
                    report.add("associativity", h=h, g=g, f=f,
                               left=left, right=right)
    return report


def opposite(C: FinCat) -> FinCat:
    m = C.n_morphisms
    table = tuple(tuple(C.table[f][g] for f in range(m)) for g in range(m))
    return FinCat(C.n_objects, C.cod, C.dom, C.identities, table)


def product(C: FinCat, D: FinCat, caps: Caps = DEFAULT_CAPS,
            max_morphisms: Optional[int] = None) -> FinCat:
    """Product category; object ``(c, d)`` is ``c * |D_0| + d``, morphism
    ``(f, g)`` is ``f * |D_1| + g``."""
    limit = caps.max_morphisms if max_morphisms is None else max_morphisms
    mc, md = C.n_morphisms, D.n_morphisms
    if mc * md > limit:
        raise CapacityExceeded(f"product has {mc * md} morphisms, cap is {limit}")
    nd = D.n_objects
    dom = tuple(C.dom[f] * nd + D.dom[g] for f in range(mc) for g in range(md))
    cod = tuple(C.cod[f] * nd + D.cod[g] for f in range(mc) for g in range(md))
    ids = tuple(C.identities[c] * md + D.identities[d]
                for c in C.objects for d in D.objects)
    table = []
    for f2 in range(mc):
        for g2 in range(md):
            row = []
            for f1 in range(mc):
                for g1 in range(md):
                    a, b = C.table[f2][f1], D.table[g2][g1]
                    row.append(None if a is None or b is None else a * md + b)
            table.append(tuple(row))
    return FinCat(C.n_objects * nd, dom, cod, ids, tuple(table))


@dataclass(frozen=True)
class Functor:
    source: FinCat
    target: FinCat
    object_map: tuple[int, ...]
    morphism_map: tuple[int, ...]

    def __post_init__(self):
        if len(self.object_map) != self.source.n_objects:
            raise MalformedTable("object map has wrong length")
        if len(self.morphism_map) != self.source.n_morphisms:
            raise MalformedTable("morphism map has wrong length")
        if any(not 0 <= y < self.target.n_objects for y in self.object_map):
            raise MalformedTable("object map leaves the target category")
        if any(not 0 <= g < self.target.n_morphisms for g in self.morphism_map):
            raise MalformedTable("morphism map leaves the target category")

    def obj(self, x: int) -> int:
        return self.object_map[x]

    def mor(self, f: int) -> int:
        return self.morphism_map[f]

    def violations(self) -> list[dict]:
        S, T = self.source, self.target
        out = []
        for f in S.morphisms:
            g = self.morphism_map[f]
            if T.dom[g] != self.object_map[S.dom[f]] or T.cod[g] != self.object_map[S.cod[f]]:
                out.append({"kind": "functor_type", "morphism": f})
        if out:
            return out
        for x in S.objects:
            if self.morphism_map[S.identities[x]] != T.identities[self.object_map[x]]:
                out.append({"kind": "functor_identity", "object": x})
        for g in S.morphisms:
            for f in S.morphisms:
                h = S.table[g][f]
                if h is not None and T.table[self.morphism_map[g]][self.morphism_map[f]] != self.morphism_map[h]:
                    out.append({"kind": "functor_composition", "g": g, "f": f})
        return out


def identity_functor(C: FinCat) -> Functor:
    return Functor(C, C, tuple(C.objects), tuple(C.morphisms))


def compose_functors(G: Functor, F: Functor) -> Functor:
    """``G ∘ F``."""
    return Functor(
        F.source, G.target,
        tuple(G.object_map[y] for y in F.object_map),
        tuple(G.morphism_map[g] for g in F.morphism_map),
    )


def constant_functor(C: FinCat, D: FinCat, d: int) -> Functor:
    return Functor(C, D, (d,) * C.n_objects, (D.identities[d],) * C.n_morphisms)


def functors(C: FinCat, D: FinCat, caps: Caps = DEFAULT_CAPS) -> Iterator[Functor]:
    """All functors ``C -> D``, lexicographic in object map then morphism map."""
    m = C.n_morphisms
    # triples (g, f, g∘f) checked once their largest index is assigned
    triples: list[list[tuple[int, int, int]]] = [[] for _ in range(m)]
    for g in C.morphisms:
        for f in C.morphisms:
            h = C.table[g][f]
            if h is not None:
                triples[max(g, f, h)].append((g, f, h))
    budget = [0]
    for obj_map in itertools.product(range(D.n_objects), repeat=C.n_objects):
        domains = []
        for f in C.morphisms:
            if C.is_identity(f):
                domains.append((D.identities[obj_map[C.dom[f]]],))
            else:
                domains.append(D.hom(obj_map[C.dom[f]], obj_map[C.cod[f]]))
        if any(not d for d in domains):
            continue
        for mor_map in _assign_functor(domains, triples, D, budget, caps.max_enum):
            yield Functor(C, D, obj_map, mor_map)


def _assign_functor(domains, triples, D, budget, limit):
    m = len(domains)
    vals = [0] * m

    def rec(k):
        if k == m:
            yield tuple(vals)
            return
        for v in domains[k]:
            budget[0] += 1
            if budget[0] > limit:
                raise EnumerationCapExceeded(f"functor search exceeded {limit} candidates")
            vals[k] = v
            if all(D.table[vals[g]][vals[f]] == vals[h] for g, f, h in triples[k]):
                yield from rec(k + 1)

    if m == 0:
        yield ()
        return
    yield from rec(0)


@dataclass(frozen=True)
class Presheaf:
    """Contravariant finite-set valued functor.

    ``maps[u]`` sends elements of ``F(cod u)`` to ``F(dom u)``.
    """

    base: FinCat
    sizes: tuple[int, ...]
    maps: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        C = self.base
        if len(self.sizes) != C.n_objects or len(self.maps) != C.n_morphisms:
            raise MalformedTable("presheaf tables do not match the base category")
        if any(s < 0 for s in self.sizes):
            raise MalformedTable("negative set size")
        for u in C.morphisms:
            fn = self.maps[u]
            if len(fn) != self.sizes[C.cod[u]]:
                raise MalformedTable(f"action of morphism {u} has wrong length")
            if any(not 0 <= s < self.sizes[C.dom[u]] for s in fn):
                raise MalformedTable(f"action of morphism {u} leaves its codomain")

    @classmethod
    def from_lists(cls, base, sizes, maps) -> "Presheaf":
        return cls(base, tuple(sizes), tuple(tuple(fn) for fn in maps))

    def act(self, u: int, s: int) -> int:
        return self.maps[u][s]

    def violations(self) -> list[dict]:
        C = self.base
        out = []
        for x in C.objects:
            if self.maps[C.identities[x]] != tuple(range(self.sizes[x])):
                out.append({"kind": "presheaf_identity", "object": x})
        for g in C.morphisms:
            for f in C.morphisms:
                h = C.table[g][f]
                if h is None:
                    continue
                Fg, Ff = self.maps[g], self.maps[f]
                if tuple(Ff[Fg[s]] for s in range(self.sizes[C.cod[g]])) != self.maps[h]:
                    out.append({"kind": "presheaf_composition", "g": g, "f": f})
        return out


def representable(C: FinCat, X: int) -> Presheaf:
    """``hom(-, X)``; the element ``i`` at ``Y`` is ``C.hom(Y, X)[i]``."""
    sizes = tuple(len(C.hom(Y, X)) for Y in C.objects)
    maps = []
    for u in C.morphisms:
        maps.append(tuple(C.hom_position(C.table[k][u]) for k in C.hom(C.cod[u], X)))
    return Presheaf(C, sizes, tuple(maps))


def constant_presheaf(C: FinCat, size: int) -> Presheaf:
    return Presheaf(C, (size,) * C.n_objects, (tuple(range(size)),) * C.n_morphisms)


PresheafOrFunctor = Union[Presheaf, Functor]


@dataclass(frozen=True)
class NatTransformation:
    """Components are target morphisms (functors) or element maps (presheaves)."""

    source: PresheafOrFunctor
    target: PresheafOrFunctor
    components: tuple

    def violations(self) -> list[dict]:
        F, G = self.source, self.target
        out = []
        if isinstance(F, Presheaf):
            C = F.base
            for X in C.objects:
                comp = self.components[X]
                if comp is None or len(comp) != F.sizes[X] or any(
                        not 0 <= v < G.sizes[X] for v in comp):
                    out.append({"kind": "component_type", "object": X})
            if out:
                return out
            for u in C.nonidentity_morphisms():
                X1, X = C.dom[u], C.cod[u]
                for s in range(F.sizes[X]):
                    if G.maps[u][self.components[X][s]] != self.components[X1][F.maps[u][s]]:
                        out.append({"kind": "naturality", "morphism": u, "element": s})
            return out
        A, B = F.source, F.target
        for a in A.objects:
            k = self.components[a]
            if k is None or not 0 <= k < B.n_morphisms or (B.dom[k], B.cod[k]) != (F.obj(a), G.obj(a)):
                out.append({"kind": "component_type", "object": a})
        if out:
            return out
        for m in A.nonidentity_morphisms():
            a, a1 = A.dom[m], A.cod[m]
            if B.table[G.mor(m)][self.components[a]] != B.table[self.components[a1]][F.mor(m)]:
                out.append({"kind": "naturality", "morphism": m})
        return out

    def is_iso(self) -> bool:
        F = self.source
        if isinstance(F, Presheaf):
            return all(sorted(c) == list(range(self.target.sizes[X]))
                       and F.sizes[X] == self.target.sizes[X]
                       for X, c in enumerate(self.components))
        return all(F.target.is_iso(k) for k in self.components)


def identity_transformation(F: PresheafOrFunctor) -> NatTransformation:
    if isinstance(F, Presheaf):
        return NatTransformation(F, F, tuple(tuple(range(s)) for s in F.sizes))
    return NatTransformation(F, F, tuple(F.target.identities[F.obj(a)] for a in F.source.objects))


def _check_parallel(F, G):
    if isinstance(F, Presheaf) != isinstance(G, Presheaf):
        raise TypeError("cannot compare a presheaf with a functor")
    if isinstance(F, Presheaf):
        if F.base != G.base:
            raise ValueError("presheaves live on different categories")
    elif F.source != G.source or F.target != G.target:
        raise ValueError("functors are not parallel")


def _nat_problem(F, G, iso_only=False):
    """Variables, domains, constraints and decoder for ``Nat(F, G)``."""
    _check_parallel(F, G)
    if isinstance(F, Presheaf):
        C = F.base
        offsets, n = [], 0
        for X in C.objects:
            offsets.append(n)
            n += F.sizes[X]
        domains = [range(G.sizes[X]) for X in C.objects for _ in range(F.sizes[X])]
        constraints = []
        for u in C.nonidentity_morphisms():
            X1, X = C.dom[u], C.cod[u]
            for s in range(F.sizes[X]):
                constraints.append((offsets[X] + s, G.maps[u],
                                    offsets[X1] + F.maps[u][s], None))
        distinct = []
        if iso_only:
            distinct = [range(offsets[X], offsets[X] + F.sizes[X]) for X in C.objects]

        def decode(vals):
            return tuple(tuple(vals[offsets[X]:offsets[X] + F.sizes[X]]) for X in C.objects)

        return domains, constraints, distinct, decode
    A, B = F.source, F.target
    domains = []
    for a in A.objects:
        hom = B.hom(F.obj(a), G.obj(a))
        domains.append(tuple(k for k in hom if B.is_iso(k)) if iso_only else hom)
    constraints = []
    for m in A.nonidentity_morphisms():
        a, a1 = A.dom[m], A.cod[m]
        Gm, Fm = G.mor(m), F.mor(m)
        post = {k: B.table[Gm][k] for k in domains[a]}
        pre = {k: B.table[k][Fm] for k in domains[a1]}
        constraints.append((a, post, a1, pre))
    return domains, constraints, [], tuple


def iter_nat_transformations(F, G, caps: Caps = DEFAULT_CAPS) -> Iterator[NatTransformation]:
    domains, constraints, distinct, decode = _nat_problem(F, G)
    for vals in solve(domains, constraints, distinct, limit=caps.max_enum):
        yield NatTransformation(F, G, decode(vals))


def nat_transformations(F, G, caps: Caps = DEFAULT_CAPS) -> list[NatTransformation]:
    """Every natural transformation ``F ⇒ G`` in lexicographic order."""
    return list(iter_nat_transformations(F, G, caps))


def find_natural_iso(F, G, caps: Caps = DEFAULT_CAPS) -> Optional[NatTransformation]:
    _check_parallel(F, G)
    if isinstance(F, Presheaf) and F.sizes != G.sizes:
        return None
    domains, constraints, distinct, decode = _nat_problem(F, G, iso_only=True)
    for vals in solve(domains, constraints, distinct, limit=caps.max_enum):
        return NatTransformation(F, G, decode(vals))
    return None


@dataclass(frozen=True)
class CommaCategory:
    category: FinCat
    projection: Functor
    labels: tuple[tuple[int, int], ...]


def comma_category(F: Functor, b: int) -> CommaCategory:
    """``F ↓ b``: objects ``(a, k: F a -> b)``, morphisms ``m: a -> a'`` with
    ``k' ∘ F m == k``."""
    A, B = F.source, F.target
    labels = [(a, k) for a in A.objects for k in B.hom(F.obj(a), b)]
    morphs: list[tuple[int, int, int]] = []
    for i, (a, k) in enumerate(labels):
        for j, (a1, k1) in enumerate(labels):
            for m in A.hom(a, a1):
                if B.table[k1][F.mor(m)] == k:
                    morphs.append((i, j, m))
    index = {t: n for n, t in enumerate(morphs)}
    ids = tuple(index[(i, i, A.identities[a])] for i, (a, _) in enumerate(labels))
    table = []
    for (j2, l, m2) in morphs:
        row = []
        for (i, j, m) in morphs:
            row.append(index[(i, l, A.table[m2][m])] if j == j2 else None)
        table.append(tuple(row))
    cat = FinCat(len(labels), tuple(t[0] for t in morphs), tuple(t[1] for t in morphs),
                 ids, tuple(table))
    proj = Functor(cat, A, tuple(a for a, _ in labels), tuple(t[2] for t in morphs))
    return CommaCategory(cat, proj, tuple(labels))


def is_universal_cocone(diagram: Functor, apex: int, legs: Sequence[int],
                        caps: Caps = DEFAULT_CAPS) -> Report:
    """Check that ``legs`` form a colimiting cocone under ``diagram``."""
    J, C = diagram.source, diagram.target
    report = Report("universal_cocone")
    if len(legs) != J.n_objects:
        raise MalformedTable("need one leg per diagram object")
    for j in J.objects:
        k = legs[j]
        if not 0 <= k < C.n_morphisms or (C.dom[k], C.cod[k]) != (diagram.obj(j), apex):
            report.add("leg_type", object=j, leg=k)
    if not report.ok:
        return report
    for m in J.nonidentity_morphisms():
        j, j1 = J.dom[m], J.cod[m]
        if C.table[legs[j1]][diagram.mor(m)] != legs[j]:
            report.add("cocone_commutation", morphism=m)
    if not report.ok:
        return report
    for c in C.objects:
        domains = [C.hom(diagram.obj(j), c) for j in J.objects]
        constraints = []
        for m in J.nonidentity_morphisms():
            j, j1 = J.dom[m], J.cod[m]
            Dm = diagram.mor(m)
            constraints.append((j1, {k: C.table[k][Dm] for k in domains[j1]}, j, None))
        for cone in solve(domains, constraints, limit=caps.max_enum):
            mediators = [u for u in C.hom(apex, c)
                         if all(C.table[u][legs[j]] == cone[j] for j in J.objects)]
            if len(mediators) != 1:
                report.add("mediator_count", object=c, cocone=list(cone),
                           mediators=mediators)
    return report


class Bifunctor:
    """A functor ``T: D^op × D -> FinSet`` given by its size and action functions.

    ``left(p, d, t)`` acts with ``p: e -> d'`` on ``t ∈ T(d', d)``, landing in
    ``T(e, d)``; ``right(d', q, t)`` acts with ``q: d -> e`` on ``t ∈ T(d', d)``,
    landing in ``T(d', e)``.
    """

    def __init__(self, base: FinCat,
                 size: Callable[[int, int], int],
                 left: Callable[[int, int, int], int],
                 right: Callable[[int, int, int], int]):
        self.base = base
        self.size = size
        self.left = left
        self.right = right

    @classmethod
    def from_presheaf(cls, D: FinCat, P: Presheaf) -> "Bifunctor":
        """Read a presheaf on ``D × D^op`` as a bifunctor on ``D``."""
        n, m = D.n_objects, D.n_morphisms
        if P.base.n_objects != n * n or P.base.n_morphisms != m * m:
            raise MalformedTable("presheaf is not over D × D^op")
        return cls(
            D,
            lambda d1, d: P.sizes[d1 * n + d],
            lambda p, d, t: P.maps[p * m + D.identities[d]][t],
            lambda d1, q, t: P.maps[D.identities[d1] * m + q][t],
        )

    def violations(self) -> list[dict]:
        D = self.base
        out = []
        for d1 in D.objects:
            for d in D.objects:
                n = self.size(d1, d)
                for t in range(n):
                    if self.left(D.identities[d1], d, t) != t:
                        out.append({"kind": "left_identity", "objects": [d1, d], "element": t})
                    if self.right(d1, D.identities[d], t) != t:
                        out.append({"kind": "right_identity", "objects": [d1, d], "element": t})
        for p in D.morphisms:
            e, d1 = D.dom[p], D.cod[p]
            for d in D.objects:
                for t in range(self.size(d1, d)):
                    if not 0 <= self.left(p, d, t) < self.size(e, d):
                        out.append({"kind": "left_range", "morphism": p, "object": d, "element": t})
                for t in range(self.size(d, e)):
                    if not 0 <= self.right(d, p, t) < self.size(d, d1):
                        out.append({"kind": "right_range", "morphism": p, "object": d, "element": t})
        if out:
            return out
        for p2 in D.morphisms:
            for p in D.morphisms:
                h = D.table[p2][p]
                if h is None:
                    continue
                # p: e -> e1, p2: e1 -> d1
                for d in D.objects:
                    for t in range(self.size(D.cod[p2], d)):
                        if self.left(h, d, t) != self.left(p, d, self.left(p2, d, t)):
                            out.append({"kind": "left_composition", "g": p2, "f": p,
                                        "object": d, "element": t})
                # covariant side: q = p then q2 = p2
                for d1 in D.objects:
                    for t in range(self.size(d1, D.dom[p])):
                        if self.right(d1, h, t) != self.right(d1, p2, self.right(d1, p, t)):
                            out.append({"kind": "right_composition", "g": p2, "f": p,
                                        "object": d1, "element": t})
        for p in D.morphisms:
            for q in D.morphisms:
                e, d1 = D.dom[p], D.cod[p]
                d, e2 = D.dom[q], D.cod[q]
                for t in range(self.size(d1, d)):
                    if self.left(p, e2, self.right(d1, q, t)) != self.right(e, q, self.left(p, d, t)):
                        out.append({"kind": "interchange", "left": p, "right": q, "element": t})
        return out


def hom_bifunctor(D: FinCat) -> Bifunctor:
    return Bifunctor(
        D,
        lambda d1, d: len(D.hom(d1, d)),
        lambda p, d, t: D.hom_position(D.table[D.hom(D.cod[p], d)[t]][p]),
        lambda d1, q, t: D.hom_position(D.table[q][D.hom(d1, D.dom[q])[t]]),
    )


def exponential_bifunctor(F: Presheaf, G: Presheaf) -> Bifunctor:
    """``T(d', d) = G(d')^{F(d)}``, whose end is ``Nat(F, G)``."""
    D = F.base

    def size(d1, d):
        return G.sizes[d1] ** F.sizes[d]

    def left(p, d, t):
        e, d1 = D.dom[p], D.cod[p]
        phi = decode_function(t, F.sizes[d], G.sizes[d1])
        return encode_function([G.maps[p][v] for v in phi], G.sizes[e])

    def right(d1, q, t):
        d, e = D.dom[q], D.cod[q]
        phi = decode_function(t, F.sizes[d], G.sizes[d1])
        return encode_function([phi[F.maps[q][s]] for s in range(F.sizes[e])], G.sizes[d1])

    return Bifunctor(D, size, left, right)


def coyoneda_bifunctor(F: Presheaf, X: int) -> Bifunctor:
    """``T(d', d) = F(d') × hom(X, d)``; its coend is isomorphic to ``F(X)``.

    The element ``(s, k)`` is stored as ``s * |hom(X, d)| + k``.
    """
    D = F.base

    def size(d1, d):
        return F.sizes[d1] * len(D.hom(X, d))

    def left(p, d, t):
        s, k = divmod(t, len(D.hom(X, d)))
        return F.maps[p][s] * len(D.hom(X, d)) + k

    def right(d1, q, t):
        d, e = D.dom[q], D.cod[q]
        s, k = divmod(t, len(D.hom(X, d)))
        u = D.table[q][D.hom(X, d)[k]]
        return s * len(D.hom(X, e)) + D.hom_position(u)

    return Bifunctor(D, size, left, right)


@dataclass(frozen=True)
class Coend:
    """Classes of the diagonal elements; members are ``(d, t)`` pairs."""

    classes: tuple[tuple[tuple[int, int], ...], ...]
    injections: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.classes)

    def class_of(self, d: int, t: int) -> int:
        return self.injections[d][t]


def _diagonal(T: Bifunctor, caps: Caps):
    D = T.base
    offsets, n = [], 0
    for d in D.objects:
        offsets.append(n)
        n += T.size(d, d)
    if n > caps.max_enum:
        raise CapacityExceeded(f"{n} diagonal elements exceed the cap {caps.max_enum}")
    return offsets, n


def coend_relation(T: Bifunctor) -> Iterator[tuple[tuple[int, int], tuple[int, int]]]:
    """Generating pairs ``(d, T(p,1)t) ~ (d', T(1,p)t)`` for ``p: d -> d'``."""
    D = T.base
    for p in D.nonidentity_morphisms():
        d, d1 = D.dom[p], D.cod[p]
        for t in range(T.size(d1, d)):
            yield (d, T.left(p, d, t)), (d1, T.right(d1, p, t))


def coend(T: Bifunctor, caps: Caps = DEFAULT_CAPS) -> Coend:
    D = T.base
    offsets, n = _diagonal(T, caps)
    uf = UnionFind(n)
    for (d, s), (d1, s1) in coend_relation(T):
        uf.union(offsets[d] + s, offsets[d1] + s1)
    owner = [d for d in D.objects for _ in range(T.size(d, d))]
    classes = uf.classes()
    label = [0] * n
    for c, members in enumerate(classes):
        for x in members:
            label[x] = c
    injections = tuple(tuple(label[offsets[d] + t] for t in range(T.size(d, d)))
                       for d in D.objects)
    return Coend(
        tuple(tuple((owner[x], x - offsets[owner[x]]) for x in members) for members in classes),
        injections,
    )


@dataclass(frozen=True)
class End:
    families: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.families)

    def projection(self, d: int) -> tuple[int, ...]:
        return tuple(fam[d] for fam in self.families)


def end(T: Bifunctor, caps: Caps = DEFAULT_CAPS) -> End:
    """Families ``(x_d)`` with ``T(1,p) x_d == T(p,1) x_d'`` for ``p: d -> d'``."""
    D = T.base
    domains = [range(T.size(d, d)) for d in D.objects]
    constraints = []
    for p in D.nonidentity_morphisms():
        d, d1 = D.dom[p], D.cod[p]
        push = [T.right(d, p, t) for t in domains[d]]
        pull = [T.left(p, d1, t) for t in domains[d1]]
        constraints.append((d, push, d1, pull))
    return End(tuple(solve(domains, constraints, limit=caps.max_enum)))
