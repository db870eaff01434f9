"""The category of loop agreement tasks and its signature functor S."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

from .complex import compose_maps, induced_bary_power
from .errors import NotAMorphism, SourceMismatch, TargetSourceMismatch
from .group import (IntMatrix, PointedAbelianSignature, direct_sum,
                    exponent_sum, pointed_hom_exists, reduce_mod,
                    task_algebra, task_signature)
from .loops import EdgePath, subdivide_path
from .task import (DecisionMap, LoopTask, compose, diagonal_decision,
                   find_violation, identity_decision, product_morphism,
                   projection_map, retraction_decision)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LoopMorphism:
    """f : T1 -> T2, a decision map by which T1 solves T2."""
    source: LoopTask
    target: LoopTask
    d: DecisionMap

    def __post_init__(self):
        try:
            violation = find_violation(self.source, self.target, self.d)
        except SourceMismatch as exc:
            raise NotAMorphism(str(exc)) from exc
        if violation is not None:
            raise NotAMorphism(
                f"{self.source.label} -> {self.target.label}: "
                f"{violation.simplex} maps to {violation.image}, outside "
                f"Γ({violation.sigma})")


@dataclass(frozen=True)
class AbelianHom:
    """Homomorphism between invariant-factor decompositions.

    Column i is the image of the i-th source generator, reduced modulo the
    target factors.
    """
    matrix: IntMatrix
    source: PointedAbelianSignature
    target: PointedAbelianSignature

    @classmethod
    def identity(cls, sig: PointedAbelianSignature) -> AbelianHom:
        return cls(IntMatrix.identity(len(sig.invariant_factors)), sig, sig)

    def apply(self, vector: Sequence[int]) -> Tuple[int, ...]:
        return tuple(reduce_mod(sum(a * x for a, x in zip(row, vector)), f)
                     for row, f in zip(self.matrix.rows,
                                       self.target.invariant_factors))

    def respects_orders(self) -> bool:
        """d_i times column i vanishes in the target."""
        n = len(self.source.invariant_factors)
        for i, d in enumerate(self.source.invariant_factors):
            if d and any(self.apply([d * int(j == i) for j in range(n)])):
                return False
        return True

    def is_pointed(self) -> bool:
        return self.apply(self.source.element) == self.target.element

    def compose(self, inner: AbelianHom) -> AbelianHom:
        """self ∘ inner."""
        if inner.target != self.source:
            raise TargetSourceMismatch("homomorphisms are not composable")
        product = self.matrix @ inner.matrix
        rows = [[reduce_mod(x, f) for x in row]
                for row, f in zip(product.rows, self.target.invariant_factors)]
        return AbelianHom(IntMatrix.of(rows, product.cols), inner.source,
                          self.target)


# ---------------------------------------------------------------------------
# Composition and identity
# ---------------------------------------------------------------------------

def compose_morphisms(f1: LoopMorphism, f2: LoopMorphism) -> LoopMorphism:
    """f2 ∘ f1 = (δ2 ∘ Bary^{N2}(δ1), N1 + N2)."""
    if f1.target != f2.source:
        raise TargetSourceMismatch(
            f"{f1.target.label} is not the source of the second morphism")
    lifted = induced_bary_power(f1.d.map, f2.d.n)
    d = DecisionMap(f1.d.n + f2.d.n, compose_maps(lifted, f2.d.map))
    return LoopMorphism(f1.source, f2.target, d)


def identity_morphism(t: LoopTask) -> LoopMorphism:
    return LoopMorphism(t, t, identity_decision(t))


def projection_morphism(tc: LoopTask, i: int) -> LoopMorphism:
    d = projection_map(tc, i)
    return LoopMorphism(tc, tc.factors[i - 1], d)


def diagonal_morphism(t: LoopTask) -> LoopMorphism:
    """T -> T × T at N = 1."""
    return LoopMorphism(t, compose(t, t), diagonal_decision(t))


def retraction_morphism(t: LoopTask, n: int = 1) -> LoopMorphism:
    return LoopMorphism(t, t, retraction_decision(t, n))


def pairing(f1: LoopMorphism, f2: LoopMorphism) -> DecisionMap:
    """⟨δ1, δ2⟩ into skel²(K1 × K2).

    Only the vertex map is built: pairs land in the full product of the
    loop paths rather than on the ⋆ path, so the result is not in general a
    morphism into T1 × T2 without further approximation.
    """
    if f1.source != f2.source:
        raise SourceMismatch("paired morphisms need a common source task")
    return product_morphism(f1.d, f2.d)


# ---------------------------------------------------------------------------
# The functor S
# ---------------------------------------------------------------------------

def _subdivide_times(p: EdgePath, n: int) -> EdgePath:
    for _ in range(n):
        p = subdivide_path(p)
    return p


def functor_S(f: LoopMorphism) -> AbelianHom:
    """Action of f on abelianized edge-path presentations.

    Each source generator loop is subdivided N times and pushed through δ;
    the image is read as a word in the target presentation. Images are
    based at δ(v0) rather than the target basepoint, which only conjugates
    the class and disappears after abelianization.
    """
    src, tgt = task_algebra(f.source), task_algebra(f.target)
    n_src = len(src.presentation.generators)
    n_tgt = len(tgt.presentation.generators)
    images = []
    for m in range(n_src):
        loop = src.presentation.generator_loop(m).path
        pushed = f.d.map.image_path(_subdivide_times(loop, f.d.n).vertices)
        images.append(exponent_sum(tgt.presentation.word(pushed), n_tgt))

    columns = []
    for k in range(len(src.signature.invariant_factors)):
        lift = src.abelianization.lift(k)
        image = [0] * n_tgt
        for m, c in enumerate(lift):
            if c:
                for j, x in enumerate(images[m]):
                    image[j] += c * x
        columns.append(tgt.abelianization.coordinates(image))

    rows = [[col[j] for col in columns]
            for j in range(len(tgt.signature.invariant_factors))]
    hom = AbelianHom(IntMatrix.of(rows, len(columns)), src.signature,
                     tgt.signature)
    logger.debug("S(%s -> %s) = %s", f.source.label, f.target.label,
                 hom.matrix.rows)
    return hom


def check_product_preservation(t1: LoopTask, t2: LoopTask) -> bool:
    """S(T1 × T2) agrees with S(T1) ⊕ S(T2)."""
    composed = task_signature(compose(t1, t2))
    summed = direct_sum([task_signature(t1), task_signature(t2)])
    ok = (composed.invariant_factors == summed.invariant_factors
          and pointed_hom_exists(composed, summed)
          and pointed_hom_exists(summed, composed))
    if not ok:
        logger.warning("product preservation fails for %s, %s: %s vs %s",
                       t1.label, t2.label, composed, summed)
    return ok
