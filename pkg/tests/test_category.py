"""Unit tests for loop morphisms and the signature functor."""

import itertools

import pytest
from loopagree.category import (AbelianHom, LoopMorphism,
                                check_product_preservation, compose_morphisms,
                                diagonal_morphism, functor_S,
                                identity_morphism, pairing,
                                projection_morphism, retraction_morphism)
from loopagree.complex import SimplicialMap
from loopagree.constants import (CATALOG_NAMES, POINT, PROJECTIVE_PLANE,
                                 SET_AGREEMENT, SIMPLEX_AGREEMENT, TORUS)
from loopagree.errors import (NotAMorphism, SourceMismatch,
                              TargetSourceMismatch)
from loopagree.group import IntMatrix, PointedAbelianSignature, task_signature
from loopagree.task import DecisionMap, catalog, compose, identity_decision


SMALL = [n for n in CATALOG_NAMES if n != TORUS]


def _same(f, g):
    return (f.source == g.source and f.target == g.target
            and f.d.n == g.d.n
            and dict(f.d.assignment) == dict(g.d.assignment))


# ── Morphisms ─────────────────────────────────────────────────────────────

class TestLoopMorphism:
    def test_constant_map_rejected(self):
        t = catalog(SET_AGREEMENT)
        m = SimplicialMap(t.output, t.output, {v: "0" for v in "012"})
        with pytest.raises(NotAMorphism):
            LoopMorphism(t, t, DecisionMap(0, m))

    def test_wrong_source_rejected(self):
        t = catalog(SET_AGREEMENT)
        with pytest.raises(NotAMorphism):
            LoopMorphism(t, t, identity_decision(catalog(PROJECTIVE_PLANE)))

    def test_compose_mismatch(self):
        f = identity_morphism(catalog(SET_AGREEMENT))
        g = identity_morphism(catalog(TORUS))
        with pytest.raises(TargetSourceMismatch):
            compose_morphisms(f, g)

    @pytest.mark.parametrize("name", CATALOG_NAMES)
    def test_identity_laws(self, name):
        t = catalog(name)
        f = retraction_morphism(t)
        ident = identity_morphism(t)
        assert _same(compose_morphisms(ident, f), f)
        assert _same(compose_morphisms(f, ident), f)

    @pytest.mark.parametrize("name", SMALL)
    def test_associative(self, name):
        t = catalog(name)
        f = diagonal_morphism(t)
        g = projection_morphism(compose(t, t), 1)
        h = retraction_morphism(t)
        left = compose_morphisms(compose_morphisms(f, g), h)
        right = compose_morphisms(f, compose_morphisms(g, h))
        assert _same(left, right)
        assert left.d.n == 2

    def test_levels_add(self):
        t = catalog(SET_AGREEMENT)
        f = compose_morphisms(retraction_morphism(t, 1),
                              retraction_morphism(t, 2))
        assert f.d.n == 3


class TestPairing:
    def test_diagonal_embedding(self):
        t = catalog(SET_AGREEMENT)
        ident = identity_morphism(t)
        d = pairing(ident, ident)
        assert d.target == compose(t, t).output
        assert d.n == 0

    def test_sources_differ(self):
        with pytest.raises(SourceMismatch):
            pairing(identity_morphism(catalog(SET_AGREEMENT)),
                    identity_morphism(catalog(POINT)))


# ── Abelian homomorphisms ─────────────────────────────────────────────────

Z = PointedAbelianSignature((0,), (1,))
Z2 = PointedAbelianSignature((2,), (1,))


class TestAbelianHom:
    def test_identity(self):
        h = AbelianHom.identity(Z2)
        assert h.is_pointed()
        assert h.respects_orders()
        assert h.apply([3]) == (1,)

    def test_reduction(self):
        h = AbelianHom(IntMatrix.of([[3]]), Z, Z2)
        assert h.is_pointed()
        assert h.compose(AbelianHom.identity(Z)).matrix.rows == ((1,),)

    def test_not_well_defined(self):
        h = AbelianHom(IntMatrix.of([[1]]), Z2, Z)
        assert not h.respects_orders()

    def test_compose_mismatch(self):
        with pytest.raises(TargetSourceMismatch):
            AbelianHom.identity(Z).compose(AbelianHom.identity(Z2))


# ── The functor ───────────────────────────────────────────────────────────

class TestFunctorS:
    @pytest.mark.parametrize("name", CATALOG_NAMES)
    def test_identity(self, name):
        t = catalog(name)
        h = functor_S(identity_morphism(t))
        assert h == AbelianHom.identity(task_signature(t))

    @pytest.mark.parametrize("name", CATALOG_NAMES)
    def test_retraction_is_identity(self, name):
        t = catalog(name)
        assert functor_S(retraction_morphism(t)).matrix \
            == AbelianHom.identity(task_signature(t)).matrix

    def test_projection_of_set_square(self):
        t = catalog(SET_AGREEMENT)
        h = functor_S(projection_morphism(compose(t, t), 1))
        assert h.matrix.shape == (1, 2)
        assert h.is_pointed()
        assert h.respects_orders()

    @pytest.mark.parametrize("name", SMALL)
    def test_images_are_pointed(self, name):
        t = catalog(name)
        for f in (diagonal_morphism(t), retraction_morphism(t, 2),
                  projection_morphism(compose(t, t), 2)):
            h = functor_S(f)
            assert h.is_pointed()
            assert h.respects_orders()

    @pytest.mark.parametrize("name", SMALL)
    def test_preserves_composition(self, name):
        t = catalog(name)
        f1 = diagonal_morphism(t)
        f2 = projection_morphism(compose(t, t), 1)
        composed = functor_S(compose_morphisms(f1, f2))
        assert composed.matrix == functor_S(f2).compose(functor_S(f1)).matrix
        # ρ1 ∘ Δ is the identity up to subdivision
        assert composed.matrix == AbelianHom.identity(task_signature(t)).matrix

    @pytest.mark.parametrize("a,b", itertools.combinations_with_replacement(
        CATALOG_NAMES, 2))
    def test_products_preserved(self, a, b):
        assert check_product_preservation(catalog(a), catalog(b))

    def test_projection_onto_projective_plane(self):
        t1, t2 = catalog(SIMPLEX_AGREEMENT), catalog(PROJECTIVE_PLANE)
        h = functor_S(projection_morphism(compose(t1, t2), 2))
        assert h.target.invariant_factors == (2,)
        assert h.is_pointed()


# ── Laws over every composable chain ──────────────────────────────────────

CHEAP = [SET_AGREEMENT, SIMPLEX_AGREEMENT, POINT]


def _pool(t):
    """Identities, projections, the diagonal and a retraction around T × T."""
    tt = compose(t, t)
    return [identity_morphism(t), identity_morphism(tt),
            projection_morphism(tt, 1), projection_morphism(tt, 2),
            diagonal_morphism(t), retraction_morphism(t)]


def _chains(pool, length):
    for chain in itertools.product(pool, repeat=length):
        if all(f.target == g.source for f, g in zip(chain, chain[1:])):
            yield chain


class TestCategoryLaws:
    @pytest.mark.parametrize("name", CHEAP)
    def test_identities(self, name):
        for f in _pool(catalog(name)):
            assert _same(compose_morphisms(identity_morphism(f.source), f), f)
            assert _same(compose_morphisms(f, identity_morphism(f.target)), f)

    @pytest.mark.parametrize("name", CHEAP)
    def test_associative(self, name):
        chains = list(_chains(_pool(catalog(name)), 3))
        assert len(chains) == 54
        for f, g, h in chains:
            left = compose_morphisms(compose_morphisms(f, g), h)
            right = compose_morphisms(f, compose_morphisms(g, h))
            assert _same(left, right)
            assert left.d.n == f.d.n + g.d.n + h.d.n

    @pytest.mark.parametrize("name", CHEAP)
    def test_functor_preserves_composition(self, name):
        for f, g in _chains(_pool(catalog(name)), 2):
            composed = functor_S(compose_morphisms(f, g))
            assert composed.matrix == functor_S(g).compose(functor_S(f)).matrix
            assert composed.is_pointed()

    @pytest.mark.parametrize("name", CHEAP)
    def test_functor_preserves_identities(self, name):
        t = catalog(name)
        for task in (t, compose(t, t)):
            assert functor_S(identity_morphism(task)) == \
                AbelianHom.identity(task_signature(task))
