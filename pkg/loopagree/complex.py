"""Abstract simplicial complexes and the operators built on them."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, permutations
from typing import (Callable, Dict, FrozenSet, Iterable, List, Mapping,
                    Optional, Sequence, Tuple)

from .constants import (BARY_CLOSE, BARY_OPEN, BARY_SEPARATOR, BARY_SPECIALS,
                        ESCAPE, MAX_ADVISED_SUBDIVISION, MAX_ADVISED_VERTICES,
                        PAIR_SEPARATOR, PAIR_SPECIALS)
from .errors import (DuplicateVertex, EmptyComplex, EmptyInput, NotSimplicial,
                     NotSubcomplex, PartialAssignment, TargetSourceMismatch)

logger = logging.getLogger(__name__)

VertexId = str
# Always sorted by id, never empty, no repeats.
Simplex = Tuple[VertexId, ...]


def make_simplex(vertices: Iterable[VertexId]) -> Simplex:
    """Canonical simplex from a vertex collection."""
    vs = list(vertices)
    if not vs:
        raise EmptyInput("a simplex needs at least one vertex")
    for v in vs:
        if not isinstance(v, str) or not v:
            raise EmptyInput(f"vertex ids must be nonempty strings, got {v!r}")
    if len(set(vs)) != len(vs):
        raise DuplicateVertex(f"repeated vertex in {vs}")
    return tuple(sorted(vs))


# ---------------------------------------------------------------------------
# Vertex naming for constructed complexes
# ---------------------------------------------------------------------------

def _escape(text: str, specials: FrozenSet[str]) -> str:
    return "".join(ESCAPE + ch if ch in specials else ch for ch in text)


def pair_id(left: VertexId, right: VertexId) -> VertexId:
    """Product vertex id `<left>|<right>`."""
    return (_escape(left, PAIR_SPECIALS) + PAIR_SEPARATOR
            + _escape(right, PAIR_SPECIALS))


def bary_id(simplex: Simplex) -> VertexId:
    """Barycenter id `{a,b,c}` of a canonical simplex."""
    return (BARY_OPEN
            + BARY_SEPARATOR.join(_escape(v, BARY_SPECIALS) for v in simplex)
            + BARY_CLOSE)


# ---------------------------------------------------------------------------
# Complex
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Complex:
    """A finite abstract simplicial complex, stored closed under subsets.

    Construct through `build` (or the other operators below); the raw
    constructor trusts its argument to be downward closed.
    """
    simplexes: FrozenSet[Simplex]

    def __len__(self) -> int:
        return len(self.simplexes)

    def __contains__(self, simplex: object) -> bool:
        return simplex in self.simplexes

    def contains(self, vertices: Iterable[VertexId]) -> bool:
        """Membership for an arbitrary vertex collection."""
        return tuple(sorted(set(vertices))) in self.simplexes

    @cached_property
    def ordered(self) -> Tuple[Simplex, ...]:
        return tuple(sorted(self.simplexes))

    @cached_property
    def vertices(self) -> Tuple[VertexId, ...]:
        return tuple(sorted(s[0] for s in self.simplexes if len(s) == 1))

    @cached_property
    def edges(self) -> Tuple[Simplex, ...]:
        return tuple(s for s in self.ordered if len(s) == 2)

    @cached_property
    def triangles(self) -> Tuple[Simplex, ...]:
        return tuple(s for s in self.ordered if len(s) == 3)

    @cached_property
    def maximal(self) -> Tuple[Simplex, ...]:
        """Simplexes that are not a facet of another simplex."""
        covered = set()
        for s in self.simplexes:
            if len(s) > 1:
                covered.update(combinations(s, len(s) - 1))
        return tuple(s for s in self.ordered if s not in covered)

    @cached_property
    def neighbors(self) -> Dict[VertexId, Tuple[VertexId, ...]]:
        adj: Dict[VertexId, List[VertexId]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return {v: tuple(sorted(ns)) for v, ns in adj.items()}

    @cached_property
    def f_vector(self) -> Tuple[int, ...]:
        """Number of simplexes in each dimension."""
        if not self.simplexes:
            return ()
        counts = [0] * max(len(s) for s in self.simplexes)
        for s in self.simplexes:
            counts[len(s) - 1] += 1
        return tuple(counts)

    def is_subcomplex_of(self, other: Complex) -> bool:
        return self.simplexes <= other.simplexes


def _closure(tops: Iterable[Simplex],
             max_size: Optional[int] = None) -> FrozenSet[Simplex]:
    faces = set()
    for top in tops:
        limit = len(top) if max_size is None else min(len(top), max_size)
        for k in range(1, limit + 1):
            faces.update(combinations(top, k))
    return frozenset(faces)


def build(maximal: Sequence[Iterable[VertexId]]) -> Complex:
    """Downward closure of the given vertex sets."""
    if not maximal:
        raise EmptyInput("no simplexes given")
    return Complex(_closure(make_simplex(s) for s in maximal))


def path_complex(vertices: Sequence[VertexId]) -> Complex:
    """Vertices and edges visited by an edge path."""
    if not vertices:
        raise EmptyInput("empty path")
    tops = [(v,) for v in vertices]
    tops += [make_simplex((a, b)) for a, b in zip(vertices, vertices[1:])
             if a != b]
    return Complex(_closure(tops))


def skeleton(c: Complex, k: int) -> Complex:
    """All simplexes of dimension at most k."""
    return Complex(frozenset(s for s in c.simplexes if len(s) <= k + 1))


def dimension(c: Complex) -> int:
    if not c.simplexes:
        raise EmptyComplex("dimension of the empty complex")
    return max(len(s) for s in c.simplexes) - 1


# ---------------------------------------------------------------------------
# Connectivity: BFS over the 1-skeleton
# ---------------------------------------------------------------------------

def bfs_tree(c: Complex, root: VertexId,
             rank: Optional[Callable[[VertexId], object]] = None
             ) -> Dict[VertexId, Optional[VertexId]]:
    """BFS from `root`; returns {vertex: parent} in visiting order.

    Neighbors are explored in canonical id order, or by `rank` when given.
    The root maps to None.
    """
    parents: Dict[VertexId, Optional[VertexId]] = {root: None}
    queue: deque = deque([root])
    while queue:
        v = queue.popleft()
        ns = c.neighbors[v]
        if rank is not None:
            ns = sorted(ns, key=rank)
        for n in ns:
            if n in parents:
                continue
            parents[n] = v
            queue.append(n)
    return parents


def is_connected(c: Complex) -> bool:
    if not c.simplexes:
        raise EmptyComplex("connectivity of the empty complex")
    return len(bfs_tree(c, c.vertices[0])) == len(c.vertices)


# ---------------------------------------------------------------------------
# Product and subdivision
# ---------------------------------------------------------------------------

def product(a: Complex, b: Complex, max_dim: Optional[int] = None) -> Complex:
    """Categorical product: σ is a simplex iff both projections are.

    Every product simplex lies in α×β for maximal α, β, so the product is the
    closure of those vertex grids. `max_dim` caps the closure, giving
    skeleton(product(a, b), max_dim) without building higher faces.
    """
    if not a.simplexes or not b.simplexes:
        raise EmptyComplex("product with the empty complex")
    max_size = None if max_dim is None else max_dim + 1
    tops = (tuple(sorted(pair_id(x, y) for x in alpha for y in beta))
            for alpha in a.maximal for beta in b.maximal)
    result = Complex(_closure(tops, max_size))
    n = len(a.vertices) * len(b.vertices)
    if n > MAX_ADVISED_VERTICES:
        logger.warning("product has %d vertices (advised bound %d)",
                       n, MAX_ADVISED_VERTICES)
    logger.debug("product %d x %d vertices -> %d simplexes",
                 len(a.vertices), len(b.vertices), len(result))
    return result


@lru_cache(maxsize=64)
def barycentric(c: Complex) -> Complex:
    """One vertex per simplex; simplexes are inclusion chains."""
    if not c.simplexes:
        raise EmptyComplex("subdivision of the empty complex")
    names: Dict[Simplex, VertexId] = {}

    def name(s: Simplex) -> VertexId:
        if s not in names:
            names[s] = bary_id(s)
        return names[s]

    flags = set()
    for top in c.maximal:
        for order in permutations(top):
            flags.add(tuple(sorted(name(tuple(sorted(order[:k])))
                                   for k in range(1, len(order) + 1))))
    result = Complex(_closure(flags))
    logger.debug("barycentric subdivision: %d -> %d simplexes",
                 len(c), len(result))
    return result


def barycentric_power(c: Complex, n: int) -> Complex:
    """Bary^n(c)."""
    if n > MAX_ADVISED_SUBDIVISION:
        logger.warning("subdividing %d times (advised bound %d)",
                       n, MAX_ADVISED_SUBDIVISION)
    for _ in range(n):
        c = barycentric(c)
    return c


def bary_subcomplex(c: Complex, d: Complex) -> Complex:
    """The chains of d-simplexes inside Bary(c), i.e. Bary(d)."""
    if not d.is_subcomplex_of(c):
        raise NotSubcomplex("argument is not a subcomplex")
    return barycentric(d)


# ---------------------------------------------------------------------------
# Simplicial maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SimplicialMap:
    """A vertex assignment between two complexes."""
    source: Complex
    target: Complex
    assignment: Mapping[VertexId, VertexId]

    def __call__(self, v: VertexId) -> VertexId:
        return self.assignment[v]

    def image(self, s: Iterable[VertexId]) -> Simplex:
        return tuple(sorted({self.assignment[v] for v in s}))

    def image_path(self, vertices: Sequence[VertexId]) -> List[VertexId]:
        """Vertex-wise image of a path with repeated steps dropped."""
        out: List[VertexId] = []
        for v in vertices:
            w = self.assignment[v]
            if not out or out[-1] != w:
                out.append(w)
        return out


def check_simplicial(m: SimplicialMap) -> bool:
    """Every source simplex lands on a target simplex."""
    missing = [v for v in m.source.vertices if v not in m.assignment]
    if missing:
        raise PartialAssignment(f"no image for {missing[:5]}")
    # Images of faces are faces of images; maximal simplexes suffice.
    return all(m.image(s) in m.target.simplexes for s in m.source.maximal)


def identity_map(c: Complex) -> SimplicialMap:
    return SimplicialMap(c, c, {v: v for v in c.vertices})


def compose_maps(first: SimplicialMap, second: SimplicialMap) -> SimplicialMap:
    """second ∘ first."""
    if first.target != second.source:
        raise TargetSourceMismatch("maps are not composable")
    return SimplicialMap(
        first.source, second.target,
        {v: second.assignment[first.assignment[v]]
         for v in first.source.vertices})


def induced_bary_map(m: SimplicialMap) -> SimplicialMap:
    """Bary(m): the barycenter of σ goes to the barycenter of m(σ)."""
    if not check_simplicial(m):
        raise NotSimplicial("cannot subdivide a non-simplicial map")
    assignment = {bary_id(s): bary_id(m.image(s)) for s in m.source.simplexes}
    return SimplicialMap(barycentric(m.source), barycentric(m.target),
                         assignment)


def induced_bary_power(m: SimplicialMap, n: int) -> SimplicialMap:
    for _ in range(n):
        m = induced_bary_map(m)
    return m
