"""Day convolution of finite presheaves and its two residuals.

A promonoidal structure is a family ``M(X, B, C)``, contravariant in the
output ``X`` and covariant in the inputs ``B`` and ``C``, plus an optional
unit presheaf ``J``. Elements are integers throughout; a triple of elements
is packed in mixed radix.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from ._search import solve
from .catalog import discrete
from .errors import (
    DEFAULT_CAPS,
    CapacityExceeded,
    Caps,
    InternalLawViolation,
    MalformedTable,
    Report,
)
from .fincat import (
    Bifunctor,
    FinCat,
    Functor,
    NatTransformation,
    Presheaf,
    coend,
    find_natural_iso,
    nat_transformations,
    opposite,
    product,
    representable,
)


class Promonoidal:
    """``M`` given by sizes and three action functions.

    * ``act_out(u, B, C, m)`` for ``u: X' -> X`` maps ``M(X,B,C) -> M(X',B,C)``
    * ``act_left(X, q, C, m)`` for ``q: B -> B'`` maps ``M(X,B,C) -> M(X,B',C)``
    * ``act_right(X, B, q, m)`` for ``q: C -> C'`` maps ``M(X,B,C) -> M(X,B,C')``
    """

    def __init__(self, base: FinCat,
                 size: Callable[[int, int, int], int],
                 act_out: Callable[[int, int, int, int], int],
                 act_left: Callable[[int, int, int, int], int],
                 act_right: Callable[[int, int, int, int], int],
                 unit: Optional[Presheaf] = None):
        self.base = base
        self.size = size
        self.act_out = act_out
        self.act_left = act_left
        self.act_right = act_right
        self.unit = unit

    def as_presheaf(self) -> Presheaf:
        """Tabulate ``M`` as a presheaf on ``A × A^op × A^op``."""
        A = self.base
        n, m = A.n_objects, A.n_morphisms
        Aop = opposite(A)
        big = product(product(A, Aop, max_morphisms=m ** 2), Aop, max_morphisms=m ** 3)
        sizes = tuple(self.size(X, B, C) for X in range(n) for B in range(n) for C in range(n))
        maps = []
        for u in range(m):
            for q1 in range(m):
                for q2 in range(m):
                    # (u, q1, q2): (X', B', C') -> (X, B, C) with q1: B -> B', q2: C -> C'
                    X, B, C = A.cod[u], A.dom[q1], A.dom[q2]
                    B1, C1 = A.cod[q1], A.cod[q2]
                    fn = []
                    for x in range(self.size(X, B, C)):
                        y = self.act_right(X, B, q2, x)
                        y = self.act_left(X, q1, C1, y)
                        fn.append(self.act_out(u, B1, C1, y))
                    maps.append(tuple(fn))
        return Presheaf(big, sizes, tuple(maps))

    @classmethod
    def from_presheaf(cls, A: FinCat, P: Presheaf, unit: Optional[Presheaf] = None) -> "Promonoidal":
        n, m = A.n_objects, A.n_morphisms
        if P.base.n_objects != n ** 3 or P.base.n_morphisms != m ** 3:
            raise MalformedTable("M must be a presheaf on A × A^op × A^op")
        ids = A.identities

        def obj(X, B, C):
            return (X * n + B) * n + C

        def mor(u, q1, q2):
            return (u * m + q1) * m + q2

        return cls(
            A,
            lambda X, B, C: P.sizes[obj(X, B, C)],
            lambda u, B, C, x: P.maps[mor(u, ids[B], ids[C])][x],
            lambda X, q, C, x: P.maps[mor(ids[X], q, ids[C])][x],
            lambda X, B, q, x: P.maps[mor(ids[X], ids[B], q)][x],
            unit,
        )

    def violations(self) -> list[dict]:
        out = self.as_presheaf().violations()
        if self.unit is not None:
            if self.unit.base != self.base:
                out.append({"kind": "unit_base"})
            else:
                out.extend({"unit": True, **v} for v in self.unit.violations())
        return out


def swap(P: Promonoidal) -> Promonoidal:
    """``M'(X, B, C) = M(X, C, B)``."""
    return Promonoidal(
        P.base,
        lambda X, B, C: P.size(X, C, B),
        lambda u, B, C, x: P.act_out(u, C, B, x),
        lambda X, q, C, x: P.act_right(X, C, q, x),
        lambda X, B, q, x: P.act_left(X, q, B, x),
        P.unit,
    )


@dataclass(frozen=True)
class MonoidalCat:
    """A category with a tensor functor ``A × A -> A`` and a unit object.

    Only functoriality of the tensor is required.
    """

    base: FinCat
    tensor: Functor
    unit: int

    def __post_init__(self):
        A = self.base
        n, m = A.n_objects, A.n_morphisms
        T = self.tensor
        if T.target != A or T.source.n_objects != n * n or T.source.n_morphisms != m * m:
            raise MalformedTable("tensor must be a functor A × A -> A")
        if not 0 <= self.unit < n:
            raise MalformedTable("unit object out of range")

    def obj(self, B: int, C: int) -> int:
        return self.tensor.object_map[B * self.base.n_objects + C]

    def mor(self, p: int, q: int) -> int:
        return self.tensor.morphism_map[p * self.base.n_morphisms + q]

    def violations(self) -> list[dict]:
        return self.tensor.violations()


def promonoidal_from_monoidal(mc: MonoidalCat) -> Promonoidal:
    """``M(X, B, C) = hom(X, B⊗C)`` and ``J = hom(-, I)``."""
    A = mc.base
    ids = A.identities

    def size(X, B, C):
        return len(A.hom(X, mc.obj(B, C)))

    def act_out(u, B, C, k):
        f = A.hom(A.cod[u], mc.obj(B, C))[k]
        return A.hom_position(A.table[f][u])

    def act_left(X, q, C, k):
        f = A.hom(X, mc.obj(A.dom[q], C))[k]
        return A.hom_position(A.table[mc.mor(q, ids[C])][f])

    def act_right(X, B, q, k):
        f = A.hom(X, mc.obj(B, A.dom[q]))[k]
        return A.hom_position(A.table[mc.mor(ids[B], q)][f])

    return Promonoidal(A, size, act_out, act_left, act_right, representable(A, mc.unit))


def _pack(a: int, b: int, c: int, nb: int, nc: int) -> int:
    return (a * nb + b) * nc + c


def _unpack(t: int, nb: int, nc: int) -> tuple[int, int, int]:
    ab, c = divmod(t, nc)
    a, b = divmod(ab, nb)
    return a, b, c


def _check_base(P: Promonoidal, caps: Caps) -> FinCat:
    A = P.base
    if A.n_morphisms > caps.max_morphisms:
        raise CapacityExceeded(
            f"base has {A.n_morphisms} morphisms, cap is {caps.max_morphisms}")
    return product(A, A, max_morphisms=caps.max_morphisms ** 2)


def _integrand(P: Promonoidal, F: Presheaf, G: Presheaf, X: int, AA: FinCat) -> Bifunctor:
    """``T((B',C'), (B,C)) = F(B') × G(C') × M(X, B, C)`` on ``A × A``."""
    A = P.base
    n, m = A.n_objects, A.n_morphisms

    def size(d1, d):
        B1, C1 = divmod(d1, n)
        B, C = divmod(d, n)
        return F.sizes[B1] * G.sizes[C1] * P.size(X, B, C)

    def left(pq, d, t):
        p, q = divmod(pq, m)
        C1 = A.cod[q]
        B, C = divmod(d, n)
        nm = P.size(X, B, C)
        f, g, x = _unpack(t, G.sizes[C1], nm)
        return _pack(F.maps[p][f], G.maps[q][g], x, G.sizes[A.dom[q]], nm)

    def right(d1, pq, t):
        p, q = divmod(pq, m)
        B1, C1 = divmod(d1, n)
        B, C = A.dom[p], A.dom[q]
        f, g, x = _unpack(t, G.sizes[C1], P.size(X, B, C))
        x = P.act_left(X, p, C, x)
        x = P.act_right(X, A.cod[p], q, x)
        return _pack(f, g, x, G.sizes[C1], P.size(X, A.cod[p], A.cod[q]))

    return Bifunctor(AA, size, left, right)


def _tensor(P: Promonoidal, F: Presheaf, G: Presheaf, caps: Caps):
    A = P.base
    if F.base != A or G.base != A:
        raise ValueError("presheaves must live on the promonoidal base")
    AA = _check_base(P, caps)
    n = A.n_objects
    coends = [coend(_integrand(P, F, G, X, AA), caps) for X in A.objects]
    maps = []
    for u in A.morphisms:
        X1, X = A.dom[u], A.cod[u]
        target = coends[X1]
        fn = []
        for members in coends[X].classes:
            images = set()
            for d, t in members:
                B, C = divmod(d, n)
                f, g, x = _unpack(t, G.sizes[C], P.size(X, B, C))
                y = P.act_out(u, B, C, x)
                images.add(target.class_of(d, _pack(f, g, y, G.sizes[C], P.size(X1, B, C))))
            if len(images) != 1:
                raise InternalLawViolation(
                    f"action of morphism {u} is not well defined on coend classes")
            fn.append(images.pop())
        maps.append(tuple(fn))
    sizes = tuple(len(c) for c in coends)
    return Presheaf(A, sizes, tuple(maps)), coends


def day_tensor(P: Promonoidal, F: Presheaf, G: Presheaf, caps: Caps = DEFAULT_CAPS) -> Presheaf:
    """``(F ⊗ G)(X) = ∫^{B,C} F(B) × G(C) × M(X, B, C)``."""
    return _tensor(P, F, G, caps)[0]


@dataclass(frozen=True)
class _ExponentLayout:
    variables: tuple[tuple[tuple[int, int, int, int], ...], ...]
    positions: tuple[dict, ...]
    families: tuple[tuple[tuple[int, ...], ...], ...]
    index: tuple[dict, ...]


def _left_exponent(P: Promonoidal, F: Presheaf, G: Presheaf, caps: Caps):
    A = P.base
    if F.base != A or G.base != A:
        raise ValueError("presheaves must live on the promonoidal base")
    _check_base(P, caps)
    all_vars, all_pos, all_fams, all_index = [], [], [], []
    for B in A.objects:
        variables = [(a, c, x, mm)
                     for a in A.objects for c in A.objects
                     for x in range(F.sizes[c]) for mm in range(P.size(a, B, c))]
        pos = {v: i for i, v in enumerate(variables)}
        domains = [range(G.sizes[a]) for (a, _, _, _) in variables]
        constraints = []
        for p in A.nonidentity_morphisms():
            # naturality in the output argument, p: a -> a1
            a, a1 = A.dom[p], A.cod[p]
            for c in A.objects:
                for x in range(F.sizes[c]):
                    for mm in range(P.size(a1, B, c)):
                        constraints.append((pos[(a1, c, x, mm)], G.maps[p],
                                            pos[(a, c, x, P.act_out(p, B, c, mm))], None))
            # dinaturality in the second input, p: c -> c1
            c, c1 = a, a1
            for a0 in A.objects:
                for x1 in range(F.sizes[c1]):
                    for mm in range(P.size(a0, B, c)):
                        constraints.append((pos[(a0, c, F.maps[p][x1], mm)], None,
                                            pos[(a0, c1, x1, P.act_right(a0, B, p, mm))], None))
        families = tuple(solve(domains, constraints, limit=caps.max_enum))
        all_vars.append(tuple(variables))
        all_pos.append(pos)
        all_fams.append(families)
        all_index.append({fam: i for i, fam in enumerate(families)})
    layout = _ExponentLayout(tuple(all_vars), tuple(all_pos), tuple(all_fams), tuple(all_index))
    maps = []
    for u in A.morphisms:
        B1, B = A.dom[u], A.cod[u]
        fn = []
        for phi in layout.families[B]:
            psi = tuple(phi[layout.positions[B][(a, c, x, P.act_left(a, u, c, mm))]]
                        for (a, c, x, mm) in layout.variables[B1])
            j = layout.index[B1].get(psi)
            if j is None:
                raise InternalLawViolation(f"restriction along {u} leaves the end")
            fn.append(j)
        maps.append(tuple(fn))
    sizes = tuple(len(f) for f in layout.families)
    return Presheaf(A, sizes, tuple(maps)), layout


def day_left_exponent(P: Promonoidal, F: Presheaf, G: Presheaf,
                      caps: Caps = DEFAULT_CAPS) -> Presheaf:
    """``(F ⊸L G)(B) = ∫_{A,C} G(A)^{F(C) × M(A, B, C)}``; an element is a
    family ``φ[(A, C, x, m)] ∈ G(A)`` in the variable order of the layout."""
    return _left_exponent(P, F, G, caps)[0]


def day_right_exponent(P: Promonoidal, F: Presheaf, G: Presheaf,
                       caps: Caps = DEFAULT_CAPS) -> Presheaf:
    """``(F ⊸R G)(C) = ∫_{A,B} G(A)^{F(B) × M(A, B, C)}``."""
    return _left_exponent(swap(P), F, G, caps)[0]


class _Closure:
    """Both sides of ``Nat(H ⊗ F, G) ≅ Nat(H, F ⊸L G)`` (or the right-hand
    version ``Nat(F ⊗ H, G) ≅ Nat(H, F ⊸R G)``)."""

    def __init__(self, P: Promonoidal, H: Presheaf, F: Presheaf, G: Presheaf,
                 side: str, caps: Caps):
        if side not in ("left", "right"):
            raise ValueError("side is 'left' or 'right'")
        self.P, self.H, self.F, self.G, self.side, self.caps = P, H, F, G, side, caps
        self._forward = self._backward = None
        if side == "left":
            self.tensor, self.coends = _tensor(P, H, F, caps)
            self.exponent, self.layout = _left_exponent(P, F, G, caps)
        else:
            self.tensor, self.coends = _tensor(P, F, H, caps)
            self.exponent, self.layout = _left_exponent(swap(P), F, G, caps)

    def _element(self, a, B, c, h, x, mm) -> tuple[int, int]:
        """Coend class, in ``tensor(a)``, of ``h ∈ H(B), x ∈ F(c)`` and ``mm``."""
        P, H, F = self.P, self.H, self.F
        n = P.base.n_objects
        if self.side == "left":
            d, t = B * n + c, _pack(h, x, mm, F.sizes[c], P.size(a, B, c))
        else:
            d, t = c * n + B, _pack(x, h, mm, H.sizes[B], P.size(a, c, B))
        return self.coends[a].class_of(d, t)

    def _plans(self):
        # class lookups depend only on the layout, so they are computed once
        if self._forward is None:
            A, n = self.P.base, self.P.base.n_objects
            self._forward = [[tuple((a, self._element(a, B, c, h, x, mm))
                                    for (a, c, x, mm) in self.layout.variables[B])
                              for h in range(self.H.sizes[B])] for B in A.objects]
            backward = []
            for a in A.objects:
                col = []
                for members in self.coends[a].classes:
                    reads = []
                    for d, t in members:
                        if self.side == "left":
                            B, c = divmod(d, n)
                            h, x, mm = _unpack(t, self.F.sizes[c], self.P.size(a, B, c))
                        else:
                            c, B = divmod(d, n)
                            x, h, mm = _unpack(t, self.H.sizes[B], self.P.size(a, c, B))
                        reads.append((B, h, self.layout.positions[B][(a, c, x, mm)]))
                    col.append(reads)
                backward.append(col)
            self._backward = backward
        return self._forward, self._backward

    def transpose(self, alpha: NatTransformation) -> NatTransformation:
        forward, _ = self._plans()
        ac = alpha.components
        comps = []
        for B, rows in enumerate(forward):
            index = self.layout.index[B]
            col = []
            for plan in rows:
                j = index.get(tuple(ac[a][k] for a, k in plan))
                if j is None:
                    raise InternalLawViolation(f"transpose at {B} is not in the end")
                col.append(j)
            comps.append(tuple(col))
        beta = NatTransformation(self.H, self.exponent, tuple(comps))
        if beta.violations():
            raise InternalLawViolation("transpose is not natural")
        return beta

    def untranspose(self, beta: NatTransformation) -> NatTransformation:
        _, backward = self._plans()
        families, bc = self.layout.families, beta.components
        comps = []
        for col_plan in backward:
            col = []
            for reads in col_plan:
                values = {families[B][bc[B][h]][pos] for B, h, pos in reads}
                if len(values) != 1:
                    raise InternalLawViolation("evaluation is not constant on a coend class")
                col.append(values.pop())
            comps.append(tuple(col))
        alpha = NatTransformation(self.tensor, self.G, tuple(comps))
        if alpha.violations():
            raise InternalLawViolation("evaluation is not natural")
        return alpha

    def check(self) -> Report:
        report = Report(f"closed_{self.side}")
        lhs = nat_transformations(self.tensor, self.G, self.caps)
        rhs = nat_transformations(self.H, self.exponent, self.caps)
        report.details = {"nat_tensor": len(lhs), "nat_exponent": len(rhs)}
        if len(lhs) != len(rhs):
            report.add("cardinality", nat_tensor=len(lhs), nat_exponent=len(rhs))
        rhs_index = {b.components: i for i, b in enumerate(rhs)}
        seen: dict[int, int] = {}
        for i, alpha in enumerate(lhs):
            try:
                beta = self.transpose(alpha)
            except InternalLawViolation as exc:
                report.add("transpose_defect", alpha=i, detail=str(exc))
                continue
            j = rhs_index.get(beta.components)
            if j is None:
                report.add("transpose_missing", alpha=i)
            elif j in seen:
                report.add("transpose_not_injective", alpha=i, other=seen[j])
            else:
                seen[j] = i
            try:
                back = self.untranspose(beta)
            except InternalLawViolation as exc:
                report.add("untranspose_defect", alpha=i, detail=str(exc))
                continue
            if back.components != alpha.components:
                report.add("round_trip", alpha=i)
        return report


def transpose_left(P: Promonoidal, H: Presheaf, F: Presheaf, G: Presheaf,
                   alpha: NatTransformation, caps: Caps = DEFAULT_CAPS) -> NatTransformation:
    """Curry ``α: H ⊗ F ⇒ G`` to ``H ⇒ F ⊸L G``."""
    return _Closure(P, H, F, G, "left", caps).transpose(alpha)


def transpose_right(P: Promonoidal, H: Presheaf, F: Presheaf, G: Presheaf,
                    alpha: NatTransformation, caps: Caps = DEFAULT_CAPS) -> NatTransformation:
    """Curry ``α: F ⊗ H ⇒ G`` to ``H ⇒ F ⊸R G``."""
    return _Closure(P, H, F, G, "right", caps).transpose(alpha)


def untranspose_left(P, H, F, G, beta, caps: Caps = DEFAULT_CAPS) -> NatTransformation:
    return _Closure(P, H, F, G, "left", caps).untranspose(beta)


def check_closedness(P: Promonoidal, H: Presheaf, F: Presheaf, G: Presheaf,
                     caps: Caps = DEFAULT_CAPS) -> Report:
    """Residuation on both sides with the transposition verified as a bijection."""
    report = Report("closedness")
    for side in ("left", "right"):
        sub = _Closure(P, H, F, G, side, caps).check()
        report.absorb(sub)
        report.details.update({f"{side}_{k}": v for k, v in sub.details.items()})
    return report


def check_unit_laws(P: Promonoidal, F: Presheaf, caps: Caps = DEFAULT_CAPS) -> Report:
    if P.unit is None:
        raise ValueError("unit-law checks need a unit presheaf J")
    J = P.unit
    report = Report("unit_laws")
    if find_natural_iso(day_tensor(P, F, J, caps), F, caps) is None:
        report.add("right_unit", sizes=list(F.sizes))
    if find_natural_iso(day_tensor(P, J, F, caps), F, caps) is None:
        report.add("left_unit", sizes=list(F.sizes))
    return report


def check_yoneda_monoidality(mc: MonoidalCat, caps: Caps = DEFAULT_CAPS) -> Report:
    """``hom(-, X) ⊗ hom(-, Y) ≅ hom(-, X⊗Y)`` for all object pairs."""
    A = mc.base
    P = promonoidal_from_monoidal(mc)
    reps = [representable(A, X) for X in A.objects]
    report = Report("yoneda_monoidality")
    for X in A.objects:
        for Y in A.objects:
            conv = day_tensor(P, reps[X], reps[Y], caps)
            if find_natural_iso(conv, reps[mc.obj(X, Y)], caps) is None:
                report.add("no_iso", x=X, y=Y, convolution_sizes=list(conv.sizes))
    return report


def indexed_promonoidal(mc: MonoidalCat, K: int, caps: Caps = DEFAULT_CAPS):
    """Product structure on ``K × A`` with ``M'((k,X),(β,B),(γ,C)) = [k=β][k=γ] hom(X, B⊗C)``.

    Returns the promonoidal structure and the category ``K × A``.
    """
    A = mc.base
    base = promonoidal_from_monoidal(mc)
    KA = product(discrete(K), A, caps)
    n, m = A.n_objects, A.n_morphisms

    def size(x, b, c):
        k, X = divmod(x, n)
        kb, B = divmod(b, n)
        kc, C = divmod(c, n)
        return base.size(X, B, C) if k == kb == kc else 0

    def act_out(u, b, c, t):
        return base.act_out(u % m, b % n, c % n, t)

    def act_left(x, q, c, t):
        return base.act_left(x % n, q % m, c % n, t)

    def act_right(x, b, q, t):
        return base.act_right(x % n, b % n, q % m, t)

    return Promonoidal(KA, size, act_out, act_left, act_right), KA


def _stack(KA: FinCat, presheaves: Sequence[Presheaf]) -> Presheaf:
    sizes = tuple(s for F in presheaves for s in F.sizes)
    maps = tuple(fn for F in presheaves for fn in F.maps)
    return Presheaf(KA, sizes, maps)


def indexed_convolution_check(mc: MonoidalCat, K: int, Fs: Sequence[Presheaf],
                              Gs: Sequence[Presheaf], caps: Caps = DEFAULT_CAPS) -> Report:
    """Pointwise convolution of ``K``-tuples against convolution on ``K × A``."""
    if len(Fs) != K or len(Gs) != K:
        raise ValueError("need K presheaves on each side")
    A = mc.base
    n, m = A.n_objects, A.n_morphisms
    report = Report("indexed_convolution")
    P = promonoidal_from_monoidal(mc)
    PK, KA = indexed_promonoidal(mc, K, caps)
    diagonal = day_tensor(PK, _stack(KA, Fs), _stack(KA, Gs), caps)
    sizes = []
    for k in range(K):
        pointwise = day_tensor(P, Fs[k], Gs[k], caps)
        restricted = Presheaf(A, diagonal.sizes[k * n:(k + 1) * n],
                              diagonal.maps[k * m:(k + 1) * m])
        sizes.append([list(pointwise.sizes), list(restricted.sizes)])
        if find_natural_iso(pointwise, restricted, caps) is None:
            report.add("no_iso", index=k, pointwise=list(pointwise.sizes),
                       diagonal=list(restricted.sizes))
    report.details = {"sizes": sizes}
    return report
