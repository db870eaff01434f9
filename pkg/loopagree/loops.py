"""Edge paths, triangle loops, subdivision images and the diagonal product."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Tuple

from .complex import (Complex, VertexId, bary_id, barycentric, make_simplex,
                      pair_id)
from .errors import EmptyInput, EndpointMismatch, InvalidLoop, InvalidPath

logger = logging.getLogger(__name__)


def _drop_stationary(vertices: Iterable[VertexId]) -> Tuple[VertexId, ...]:
    out = []
    for v in vertices:
        if not out or out[-1] != v:
            out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class EdgePath:
    """A vertex sequence; consecutive entries are always distinct."""
    vertices: Tuple[VertexId, ...]

    def __post_init__(self):
        if not self.vertices:
            raise EmptyInput("an edge path needs at least one vertex")
        object.__setattr__(self, "vertices", _drop_stationary(self.vertices))

    @classmethod
    def of(cls, *vertices: VertexId) -> EdgePath:
        return cls(tuple(vertices))

    @property
    def start(self) -> VertexId:
        return self.vertices[0]

    @property
    def end(self) -> VertexId:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        """Number of edges traversed."""
        return len(self.vertices) - 1

    @property
    def edges(self) -> Tuple[Tuple[VertexId, VertexId], ...]:
        return tuple(zip(self.vertices, self.vertices[1:]))

    def reversed(self) -> EdgePath:
        return EdgePath(self.vertices[::-1])

    def concat(self, other: EdgePath) -> EdgePath:
        if self.end != other.start:
            raise EndpointMismatch(
                f"cannot join path ending at {self.end!r} "
                f"to path starting at {other.start!r}")
        return EdgePath(self.vertices + other.vertices[1:])


@dataclass(frozen=True)
class EdgeLoop:
    """An edge path that returns to its first vertex."""
    path: EdgePath

    def __post_init__(self):
        if self.path.start != self.path.end:
            raise InvalidLoop(
                f"loop starts at {self.path.start!r} "
                f"but ends at {self.path.end!r}")

    @property
    def base(self) -> VertexId:
        return self.path.start

    @property
    def vertices(self) -> Tuple[VertexId, ...]:
        return self.path.vertices


@dataclass(frozen=True)
class TriangleLoop:
    """Three designated vertices joined cyclically by three edge paths."""
    v0: VertexId
    v1: VertexId
    v2: VertexId
    p01: EdgePath
    p12: EdgePath
    p20: EdgePath

    def __post_init__(self):
        for name, path, start, end in self._legs():
            if path.start != start or path.end != end:
                raise EndpointMismatch(
                    f"{name} runs {path.start!r}->{path.end!r}, "
                    f"expected {start!r}->{end!r}")

    def _legs(self):
        return (("p01", self.p01, self.v0, self.v1),
                ("p12", self.p12, self.v1, self.v2),
                ("p20", self.p20, self.v2, self.v0))

    @property
    def designated(self) -> Tuple[VertexId, VertexId, VertexId]:
        return (self.v0, self.v1, self.v2)

    @property
    def paths(self) -> Tuple[EdgePath, EdgePath, EdgePath]:
        return (self.p01, self.p12, self.p20)

    @property
    def length(self) -> int:
        return sum(p.length for p in self.paths)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def validate_path(c: Complex, p) -> bool:
    """Every step of `p` is an edge of `c`.

    Accepts an EdgePath or a raw vertex sequence; a raw sequence with a
    repeated consecutive vertex is rejected.
    """
    vertices = p.vertices if isinstance(p, EdgePath) else tuple(p)
    if not vertices:
        return False
    if any((v,) not in c for v in vertices):
        return False
    for a, b in zip(vertices, vertices[1:]):
        if a == b or make_simplex((a, b)) not in c:
            return False
    return True


def validate_loop(c: Complex, loop: TriangleLoop) -> bool:
    return all(validate_path(c, p) for p in loop.paths)


def make_triangle_loop(c: Complex, v0: VertexId, v1: VertexId, v2: VertexId,
                       p01: Sequence[VertexId], p12: Sequence[VertexId],
                       p20: Sequence[VertexId]) -> TriangleLoop:
    """Validated triangle loop inside `c`."""
    loop = TriangleLoop(v0, v1, v2, EdgePath(tuple(p01)),
                        EdgePath(tuple(p12)), EdgePath(tuple(p20)))
    for name, raw in (("p01", p01), ("p12", p12), ("p20", p20)):
        if not validate_path(c, EdgePath(tuple(raw))):
            raise InvalidPath(f"{name} = {list(raw)} is not an edge path")
    return loop


def _star_path(p: EdgePath, q: EdgePath) -> EdgePath:
    """p_ij ⋆ q_ij: walk p with the second coordinate at q's start, then q
    with the first coordinate at p's end."""
    first = [pair_id(x, q.start) for x in p.vertices]
    second = [pair_id(p.end, y) for y in q.vertices]
    return EdgePath(tuple(first + second))


def diagonal_product(l1: TriangleLoop, l2: TriangleLoop,
                     ambient: Optional[Complex] = None) -> TriangleLoop:
    """λ1 ⋆ λ2 in the product complex.

    When `ambient` (the product complex) is given the result is checked
    against it; by construction it always passes.
    """
    u = [pair_id(v, w) for v, w in zip(l1.designated, l2.designated)]
    result = TriangleLoop(u[0], u[1], u[2],
                          _star_path(l1.p01, l2.p01),
                          _star_path(l1.p12, l2.p12),
                          _star_path(l1.p20, l2.p20))
    if ambient is not None:
        assert validate_loop(ambient, result), "diagonal product left the product"
    return result


def subdivide_path(p: EdgePath) -> EdgePath:
    """Each edge x-y becomes {x} - {x,y} - {y}."""
    out = [bary_id((p.start,))]
    for a, b in p.edges:
        out.append(bary_id(make_simplex((a, b))))
        out.append(bary_id((b,)))
    return EdgePath(tuple(out))


def subdivide_loop(c: Complex, l: TriangleLoop) -> TriangleLoop:
    """Image of `l` in Bary(c)."""
    if not validate_loop(c, l):
        raise InvalidPath("loop is not valid in the complex")
    v = [bary_id((x,)) for x in l.designated]
    return TriangleLoop(v[0], v[1], v[2], subdivide_path(l.p01),
                        subdivide_path(l.p12), subdivide_path(l.p20))


def subdivide_loop_power(c: Complex, l: TriangleLoop, n: int) -> TriangleLoop:
    for _ in range(n):
        l = subdivide_loop(c, l)
        c = barycentric(c)
    return l


def as_edge_loop(l: TriangleLoop) -> EdgeLoop:
    """p01 · p12 · p20 based at v0."""
    return EdgeLoop(l.p01.concat(l.p12).concat(l.p20))


def project_loop(l: TriangleLoop,
                 assignment: Mapping[VertexId, VertexId]) -> TriangleLoop:
    """Vertex-wise image of a triangle loop, stationary steps removed."""
    def image(p: EdgePath) -> EdgePath:
        return EdgePath(tuple(assignment[v] for v in p.vertices))
    return TriangleLoop(assignment[l.v0], assignment[l.v1], assignment[l.v2],
                        image(l.p01), image(l.p12), image(l.p20))
