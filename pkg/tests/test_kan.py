import itertools

import pytest

from freesem.catalog import chain, discrete, partial_orders, poset_category, terminal, walking_arrow
from freesem.fincat import (NatTransformation, compose_functors, constant_functor, find_natural_iso,
                            functors, identity_functor, identity_transformation, nat_transformations)
from freesem.kan import (AdjunctionData, YonedaTriangleData, adjoint_oracle, check_absolute_lifting,
                         check_adjunction, check_pointwise_extension, check_yoneda_triangle,
                         restrict_triangle, triangle_completions)


def bang(A):
    return constant_functor(A, terminal(), 0)


def chain_triangle(top=True):
    A = walking_arrow()
    G = constant_functor(terminal(), A, 1 if top else 0)
    target = 1 if top else 0
    eta = tuple((A.hom(a, target) or (None,))[0] for a in A.objects)
    return YonedaTriangleData(identity_functor(A), bang(A), G, eta)


def identity_triangle(C):
    I = identity_functor(C)
    return YonedaTriangleData(I, I, I, C.identities)


def identity_adjunction(C):
    I = identity_functor(C)
    e = identity_transformation(I)
    return AdjunctionData(I, I, e, e)


def small_posets():
    for n in range(1, 3):
        for rel in partial_orders(n):
            yield poset_category(n, rel)


class TestAbsoluteLifting:
    def test_terminal(self):
        assert check_absolute_lifting(identity_triangle(terminal())).ok

    def test_chain_to_terminal(self):
        t = chain_triangle()
        assert t.eta == (1, 2)
        assert check_absolute_lifting(t).ok

    def test_discrete_counterexample(self):
        D = discrete(2)
        G = constant_functor(terminal(), D, 0)
        t = YonedaTriangleData(identity_functor(D), bang(D), G, (0, None))
        rep = check_absolute_lifting(t)
        assert not rep.ok
        assert any(v.get("object") == 1 or v.get("a") == 1 for v in rep.violations)


class TestPointwiseExtension:
    def test_terminal(self):
        assert check_pointwise_extension(identity_triangle(terminal())).ok

    def test_chain_to_terminal(self):
        assert check_pointwise_extension(chain_triangle()).ok

    def test_bottom_fails(self):
        assert not check_pointwise_extension(chain_triangle(top=False)).ok


class TestYonedaTriangle:
    def test_identity(self):
        assert check_yoneda_triangle(identity_triangle(chain(3))).ok

    def test_chain_to_terminal(self):
        rep = check_yoneda_triangle(chain_triangle())
        assert rep.ok
        assert rep.details == {"absolute_lifting": True, "pointwise_extension": True}

    def test_discrete_counterexample_names_half(self):
        D = discrete(2)
        t = YonedaTriangleData(identity_functor(D), bang(D),
                               constant_functor(terminal(), D, 0), (0, None))
        rep = check_yoneda_triangle(t)
        assert not rep.ok
        assert rep.details["absolute_lifting"] is False


class TestAdjunction:
    @pytest.mark.parametrize("C", [terminal(), chain(3), discrete(2)])
    def test_identity(self, C):
        assert check_adjunction(identity_adjunction(C)).ok

    def test_bang_has_top_as_right_adjoint(self):
        A = walking_arrow()
        f, g = bang(A), constant_functor(terminal(), A, 1)
        unit = NatTransformation(identity_functor(A), compose_functors(g, f), (1, 2))
        counit = NatTransformation(compose_functors(f, g), identity_functor(terminal()), (0,))
        assert check_adjunction(AdjunctionData(f, g, unit, counit)).ok

    def test_bottom_has_no_candidates(self):
        A = walking_arrow()
        f, g = bang(A), constant_functor(terminal(), A, 0)
        units = nat_transformations(identity_functor(A), compose_functors(g, f))
        counits = nat_transformations(compose_functors(f, g), identity_functor(terminal()))
        assert all(not check_adjunction(AdjunctionData(f, g, u, c)).ok
                   for u in units for c in counits)
        bad = NatTransformation(identity_functor(A), compose_functors(g, f), (0, None))
        assert not check_adjunction(AdjunctionData(f, g, bad, counits[0])).ok


class TestOracle:
    def test_identity(self):
        C = chain(3)
        adj = adjoint_oracle(identity_functor(C))
        assert adj is not None
        assert adj.g == identity_functor(C)
        assert adj.unit.components == C.identities

    def test_bang_on_chain(self):
        adj = adjoint_oracle(bang(walking_arrow()))
        assert adj.g.object_map == (1,)
        assert adj.unit.components == (1, 2)
        assert adj.counit.components == (0,)

    def test_bang_on_discrete(self):
        assert adjoint_oracle(bang(discrete(2))) is None


def test_oracle_agrees_with_triangles_on_small_posets():
    for A, B in itertools.product(list(small_posets()), repeat=2):
        for f in functors(A, B):
            adj = adjoint_oracle(f)
            good = [t for t in triangle_completions(identity_functor(A), f)
                    if check_yoneda_triangle(t).ok]
            assert (adj is not None) == bool(good)
            for t in good:
                assert find_natural_iso(t.G, adj.g) is not None


def test_adjunction_gives_absolute_lifting():
    for A, B in itertools.product(list(small_posets()), repeat=2):
        for f in functors(A, B):
            adj = adjoint_oracle(f)
            if adj is not None:
                assert check_absolute_lifting(adj.triangle()).ok


@pytest.mark.parametrize("K", [terminal(), discrete(2), walking_arrow()])
def test_absolute_lifting_survives_restriction(K):
    t = chain_triangle()
    assert check_absolute_lifting(t).ok
    for k in functors(K, t.A):
        assert check_absolute_lifting(restrict_triangle(t, k)).ok
