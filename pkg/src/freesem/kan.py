"""Yoneda triangles in finite categories: absolute left Kan liftings,
pointwise left Kan extensions, and adjunctions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import DEFAULT_CAPS, Caps, Report
from .fincat import (
    FinCat,
    Functor,
    NatTransformation,
    comma_category,
    compose_functors,
    functors,
    identity_functor,
    is_universal_cocone,
    iter_nat_transformations,
)


@dataclass(frozen=True)
class YonedaTriangleData:
    """``Y: A -> Ā``, ``F: A -> B``, ``G: B -> Ā`` and ``eta: Y ⇒ G∘F``.

    ``eta`` components are morphisms of Ā; a component may be ``None`` when
    the proposed data has no candidate morphism there.
    """

    Y: Functor
    F: Functor
    G: Functor
    eta: tuple[Optional[int], ...]

    @property
    def A(self) -> FinCat:
        return self.Y.source

    @property
    def Abar(self) -> FinCat:
        return self.Y.target

    @property
    def B(self) -> FinCat:
        return self.F.target

    def transformation(self) -> NatTransformation:
        return NatTransformation(self.Y, compose_functors(self.G, self.F), self.eta)


@dataclass(frozen=True)
class AdjunctionData:
    f: Functor
    g: Functor
    unit: NatTransformation
    counit: NatTransformation

    def triangle(self) -> YonedaTriangleData:
        """The triangle ``⟨Id, f, g, unit⟩``."""
        return YonedaTriangleData(identity_functor(self.f.source), self.f, self.g,
                                  tuple(self.unit.components))


def _structure(t: YonedaTriangleData, report: Report) -> None:
    for name, fun in (("Y", t.Y), ("F", t.F), ("G", t.G)):
        for v in fun.violations():
            report.add("functor", functor=name, detail=v)
    if t.F.source != t.A or t.G.source != t.B or t.G.target != t.Abar:
        report.add("shape", detail="functors do not form a triangle")
    if len(t.eta) != t.A.n_objects:
        report.add("shape", detail="eta needs one component per object of A")


def check_absolute_lifting(t: YonedaTriangleData) -> Report:
    """``α ↦ G(α)∘η_a`` must biject ``hom_B(F a, b)`` with ``hom_Ā(Y a, G b)``,
    naturally in ``a`` and ``b``."""
    report = Report("absolute_lifting")
    _structure(t, report)
    if not report.ok:
        return report
    A, Ab, B, Y, F, G = t.A, t.Abar, t.B, t.Y, t.F, t.G
    eta = t.eta
    for v in t.transformation().violations():
        if v["kind"] == "component_type":
            report.add("eta_component", object=v["object"], component=eta[v["object"]])
        else:
            report.add("eta_naturality", morphism=v["morphism"])
    present = [k is not None and not any(v.get("object") == a for v in report.violations)
               for a, k in enumerate(eta)]

    def phi(a, alpha):
        return Ab.table[G.mor(alpha)][eta[a]]

    for a in A.objects:
        for b in B.objects:
            source = B.hom(F.obj(a), b)
            target = Ab.hom(Y.obj(a), G.obj(b))
            if len(source) != len(target):
                report.add("hom_cardinality", a=a, b=b,
                           lifted=len(source), restricted=len(target))
                continue
            if not present[a]:
                continue
            image = [phi(a, alpha) for alpha in source]
            if sorted(image) != sorted(target):
                report.add("not_bijective", a=a, b=b, image=image, expected=list(target))
    for m in A.morphisms:
        a1, a = A.dom[m], A.cod[m]
        if not (present[a] and present[a1]):
            continue
        for n in B.morphisms:
            b = B.dom[n]
            for alpha in B.hom(F.obj(a), b):
                moved = B.table[B.table[n][alpha]][F.mor(m)]
                lhs = phi(a1, moved)
                rhs = Ab.table[Ab.table[G.mor(n)][phi(a, alpha)]][Y.mor(m)]
                if lhs != rhs:
                    report.add("bijection_naturality", a_morphism=m, b_morphism=n, alpha=alpha)
    return report


def check_pointwise_extension(t: YonedaTriangleData, caps: Caps = DEFAULT_CAPS) -> Report:
    """For each ``b`` the legs ``G(k)∘η_a`` must form a colimiting cocone over
    ``Y∘π`` on ``F ↓ b`` with apex ``G b``."""
    report = Report("pointwise_extension")
    _structure(t, report)
    if not report.ok:
        return report
    Ab = t.Abar
    for b in t.B.objects:
        comma = comma_category(t.F, b)
        legs = []
        for (a, k) in comma.labels:
            e = t.eta[a]
            if e is None or Ab.dom[e] != t.Y.obj(a) or Ab.cod[e] != t.G.obj(t.F.obj(a)):
                report.add("missing_leg", b=b, a=a, k=k)
                legs = None
                break
            legs.append(Ab.table[t.G.mor(k)][e])
        if legs is None:
            continue
        diagram = compose_functors(t.Y, comma.projection)
        sub = is_universal_cocone(diagram, t.G.obj(b), legs, caps)
        for v in sub.violations:
            report.add(v["kind"], b=b, **{k: x for k, x in v.items() if k != "kind"})
    return report


def check_yoneda_triangle(t: YonedaTriangleData, caps: Caps = DEFAULT_CAPS) -> Report:
    report = Report("yoneda_triangle")
    lifting = check_absolute_lifting(t)
    extension = check_pointwise_extension(t, caps)
    report.absorb(lifting)
    report.absorb(extension)
    report.details = {"absolute_lifting": lifting.ok, "pointwise_extension": extension.ok}
    return report


def check_adjunction(d: AdjunctionData) -> Report:
    """Both triangle identities, componentwise, plus naturality of unit and counit."""
    report = Report("adjunction")
    f, g = d.f, d.g
    A, B = f.source, f.target
    for name, fun in (("f", f), ("g", g)):
        for v in fun.violations():
            report.add("functor", functor=name, detail=v)
    for name, tr in (("unit", d.unit), ("counit", d.counit)):
        for v in tr.violations():
            report.add(name, detail=v)
    if not report.ok:
        return report
    eta, eps = d.unit.components, d.counit.components
    for a in A.objects:
        composite = B.table[eps[f.obj(a)]][f.mor(eta[a])]
        if composite != B.identities[f.obj(a)]:
            report.add("left_triangle", object=a, composite=composite)
    for b in B.objects:
        composite = A.table[g.mor(eps[b])][eta[g.obj(b)]]
        if composite != A.identities[g.obj(b)]:
            report.add("right_triangle", object=b, composite=composite)
    return report


def adjoint_oracle(f: Functor, caps: Caps = DEFAULT_CAPS) -> Optional[AdjunctionData]:
    """First right adjoint found by exhaustive search, or ``None``."""
    A, B = f.source, f.target
    idA, idB = identity_functor(A), identity_functor(B)
    for g in functors(B, A, caps):
        gf, fg = compose_functors(g, f), compose_functors(f, g)
        for unit in iter_nat_transformations(idA, gf, caps):
            for counit in iter_nat_transformations(fg, idB, caps):
                d = AdjunctionData(f, g, unit, counit)
                if check_adjunction(d).ok:
                    return d
    return None


def triangle_completions(Y: Functor, F: Functor,
                         caps: Caps = DEFAULT_CAPS) -> Iterator[YonedaTriangleData]:
    """Every ``(G, η)`` making a (not necessarily valid) Yoneda triangle on ``Y, F``."""
    for G in functors(F.target, Y.target, caps):
        for eta in iter_nat_transformations(Y, compose_functors(G, F), caps):
            yield YonedaTriangleData(Y, F, G, eta.components)


def restrict_triangle(t: YonedaTriangleData, k: Functor) -> YonedaTriangleData:
    """Precompose the triangle with ``k: K -> A``."""
    return YonedaTriangleData(
        compose_functors(t.Y, k), compose_functors(t.F, k), t.G,
        tuple(t.eta[k.obj(x)] for x in k.source.objects),
    )
