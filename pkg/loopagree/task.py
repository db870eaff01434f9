"""Loop agreement tasks, the carrier map Γ, composition, and exhaustive
verification of decision maps."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .complex import (Complex, Simplex, SimplicialMap, VertexId, bary_id,
                      bary_subcomplex, barycentric, barycentric_power, build,
                      check_simplicial, dimension, identity_map, is_connected,
                      make_simplex, pair_id, path_complex, product)
from .constants import (CATALOG, EDGE_PATHS, INPUT_SIMPLEXES,
                        MAX_TASK_DIMENSION)
from .errors import (EmptyInput, InvalidLoop, InvalidTask, NotAComposition,
                     NotSimplicial, SourceMismatch, SubdivisionMismatch,
                     UnknownTask)
from .loops import (TriangleLoop, diagonal_product, make_triangle_loop,
                    validate_loop)

logger = logging.getLogger(__name__)

InputSimplex = Tuple[int, ...]


def input_simplex(processes: Iterable[int]) -> InputSimplex:
    """Canonical nonempty subset of {0, 1, 2}."""
    s = tuple(sorted(set(processes)))
    if not s or any(p not in (0, 1, 2) for p in s):
        raise EmptyInput(f"not an input simplex: {s}")
    return s


# ---------------------------------------------------------------------------
# Tasks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LoopTask:
    """Loop(K, λ) with input complex the standard 2-simplex.

    `factors` is set for compositions; `abelian` certifies that π₁ of the
    output is known to be abelian. Neither takes part in equality, and
    neither does the display name.
    """
    output: Complex
    loop: TriangleLoop
    name: Optional[str] = field(default=None, compare=False)
    factors: Optional[Tuple[LoopTask, LoopTask]] = field(
        default=None, compare=False, repr=False)
    abelian: bool = field(default=False, compare=False)

    def __post_init__(self):
        if not self.output.simplexes or not is_connected(self.output):
            raise InvalidTask("connected", "output complex is not path-connected")
        if dimension(self.output) > MAX_TASK_DIMENSION:
            raise InvalidTask("dimension",
                              f"output has dimension {dimension(self.output)}")
        if not validate_loop(self.output, self.loop):
            raise InvalidTask("loop", "triangle loop is not an edge loop of the output")

    @property
    def label(self) -> str:
        return self.name or "<task>"


@dataclass(frozen=True)
class DecisionMap:
    """(δ, N): a simplicial map from Bary^N of a task's output."""
    n: int
    map: SimplicialMap

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("subdivision exponent must be nonnegative")
        if not check_simplicial(self.map):
            raise NotSimplicial("decision map is not simplicial")

    @property
    def source(self) -> Complex:
        return self.map.source

    @property
    def target(self) -> Complex:
        return self.map.target

    @property
    def assignment(self):
        return self.map.assignment


@dataclass(frozen=True)
class Violation:
    """First place a decision map leaves Γ."""
    sigma: InputSimplex
    simplex: Simplex
    image: Simplex


# ---------------------------------------------------------------------------
# Γ and composition
# ---------------------------------------------------------------------------

def gamma(t: LoopTask, sigma: Iterable[int]) -> Complex:
    """Γ(σ): a designated vertex, a loop path, or the whole output."""
    s = input_simplex(sigma)
    if len(s) == 1:
        return Complex(frozenset({(t.loop.designated[s[0]],)}))
    if len(s) == 2:
        return path_complex(getattr(t.loop, EDGE_PATHS[s]).vertices)
    return t.output


def compose(t1: LoopTask, t2: LoopTask) -> LoopTask:
    """T1 × T2 = Loop(skel²(K1 × K2), λ1 ⋆ λ2)."""
    output = product(t1.output, t2.output, max_dim=MAX_TASK_DIMENSION)
    loop = diagonal_product(t1.loop, t2.loop, ambient=output)
    name = f"({t1.label} x {t2.label})"
    logger.debug("composed %s: %d vertices, %d simplexes", name,
                 len(output.vertices), len(output))
    return LoopTask(output, loop, name, factors=(t1, t2),
                    abelian=t1.abelian and t2.abelian)


def compose_all(tasks: Sequence[LoopTask]) -> LoopTask:
    """Left fold of compose."""
    if not tasks:
        raise EmptyInput("nothing to compose")
    return reduce(compose, tasks)


# ---------------------------------------------------------------------------
# Decision maps
# ---------------------------------------------------------------------------

def identity_decision(t: LoopTask) -> DecisionMap:
    return DecisionMap(0, identity_map(t.output))


def projection_map(tc: LoopTask, i: int) -> DecisionMap:
    """ρ1 or ρ2 out of a composition, at N = 0."""
    if tc.factors is None:
        raise NotAComposition(f"{tc.label} was not built by compose")
    if i not in (1, 2):
        raise ValueError(f"factor index must be 1 or 2, got {i}")
    t1, t2 = tc.factors
    assignment = {pair_id(x, y): (x if i == 1 else y)
                  for x in t1.output.vertices for y in t2.output.vertices}
    return DecisionMap(0, SimplicialMap(tc.output, tc.factors[i - 1].output,
                                        assignment))


def product_morphism(d1: DecisionMap, d2: DecisionMap) -> DecisionMap:
    """v ↦ (δ1(v), δ2(v)) into skel²(K1 × K2)."""
    if d1.n != d2.n:
        raise SubdivisionMismatch(
            f"subdivision levels differ ({d1.n} vs {d2.n}); equalizing them "
            "needs simplicial approximation")
    if d1.source != d2.source:
        raise SourceMismatch("decision maps have different sources")
    target = product(d1.target, d2.target, max_dim=MAX_TASK_DIMENSION)
    assignment = {v: pair_id(d1.assignment[v], d2.assignment[v])
                  for v in d1.source.vertices}
    return DecisionMap(d1.n, SimplicialMap(d1.source, target, assignment))


def diagonal_decision(t: LoopTask) -> DecisionMap:
    """N = 1 decision map from T to T × T.

    {x} goes to (x, x); the barycenter of a loop edge traversed s -> e goes to
    the corner (e, s) of the ⋆ path; any other barycenter goes to
    (last, first) of its simplex. Needs every loop path to be a single edge
    or constant.
    """
    corners: Dict[Simplex, VertexId] = {}
    for path in t.loop.paths:
        if path.length > 1:
            raise InvalidLoop("diagonal needs loop paths of length at most 1")
        if path.length == 1:
            edge = make_simplex((path.start, path.end))
            corner = pair_id(path.end, path.start)
            if corners.setdefault(edge, corner) != corner:
                raise InvalidLoop(f"loop traverses {edge} in both directions")
    assignment = {}
    for s in t.output.simplexes:
        if len(s) == 1:
            image = pair_id(s[0], s[0])
        else:
            image = corners.get(s, pair_id(s[-1], s[0]))
        assignment[bary_id(s)] = image
    target = product(t.output, t.output, max_dim=MAX_TASK_DIMENSION)
    return DecisionMap(1, SimplicialMap(barycentric(t.output), target,
                                        assignment))


def retraction_decision(t: LoopTask, n: int = 1) -> DecisionMap:
    """Bary^n(K) -> K sending each barycenter to the least vertex of its
    simplex: a simplicial approximation of the identity."""
    m = identity_map(t.output)
    for _ in range(n):
        # m : Bary^k(K) -> K becomes m ∘ r where r : Bary^{k+1}(K) -> Bary^k(K)
        base = m.source
        m = SimplicialMap(barycentric(base), m.target,
                          {bary_id(s): m.assignment[s[0]]
                           for s in base.simplexes})
    return DecisionMap(n, m)


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------

def _first_escape(m: SimplicialMap, carrier: Complex,
                  allowed: Complex) -> Optional[Simplex]:
    for s in carrier.maximal:
        if m.image(s) not in allowed:
            return s
    return None


def _subdivided(ambient: Complex, sub: Complex, n: int) -> Complex:
    for _ in range(n):
        sub = bary_subcomplex(ambient, sub)
        ambient = barycentric(ambient)
    return sub


def find_violation(src: LoopTask, tgt: LoopTask,
                   d: DecisionMap) -> Optional[Violation]:
    """First σ where δ(Bary^N(Γ1(σ))) leaves Γ2(σ), or None."""
    if d.source != barycentric_power(src.output, d.n):
        raise SourceMismatch(f"decision map source is not Bary^{d.n} of "
                             f"{src.label}'s output")
    for sigma in INPUT_SIMPLEXES:
        carrier = _subdivided(src.output, gamma(src, sigma), d.n)
        bad = _first_escape(d.map, carrier, gamma(tgt, sigma))
        if bad is not None:
            logger.debug("%s -> %s fails at %s on %s", src.label, tgt.label,
                         sigma, bad)
            return Violation(sigma, bad, d.map.image(bad))
    return None


def verify_implements(src: LoopTask, tgt: LoopTask, d: DecisionMap) -> bool:
    return find_violation(src, tgt, d) is None


def find_joint_violation(t1: LoopTask, t2: LoopTask, tgt: LoopTask,
                         d: DecisionMap) -> Optional[Violation]:
    """Same check with carrier skel²(Γ1(σ) × Γ2(σ))."""
    base = product(t1.output, t2.output, max_dim=MAX_TASK_DIMENSION)
    if d.source != barycentric_power(base, d.n):
        raise SourceMismatch(f"decision map source is not Bary^{d.n} of the "
                             "joint output")
    for sigma in INPUT_SIMPLEXES:
        joint = product(gamma(t1, sigma), gamma(t2, sigma),
                        max_dim=MAX_TASK_DIMENSION)
        carrier = _subdivided(base, joint, d.n)
        bad = _first_escape(d.map, carrier, gamma(tgt, sigma))
        if bad is not None:
            return Violation(sigma, bad, d.map.image(bad))
    return None


def verify_joint_implements(t1: LoopTask, t2: LoopTask, tgt: LoopTask,
                            d: DecisionMap) -> bool:
    return find_joint_violation(t1, t2, tgt, d) is None


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def catalog(name: str) -> LoopTask:
    """Built-in task by name."""
    if name not in CATALOG:
        raise UnknownTask(f"unknown task {name!r}; "
                          f"known: {', '.join(CATALOG)}")
    entry = CATALOG[name]
    output = build(entry["simplexes"])
    (v0, v1, v2), p01, p12, p20 = entry["loop"]
    loop = make_triangle_loop(output, v0, v1, v2, p01, p12, p20)
    return LoopTask(output, loop, name, abelian=True)
