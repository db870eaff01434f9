"""Edge-path presentations of π₁, abelianized signatures, and the pointed
homomorphism decision on them.

Exact integer linear algebra goes through sympy over ZZ, so there is no
overflow anywhere.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property, lru_cache
from math import gcd
from typing import (Callable, Dict, FrozenSet, List, Mapping, Optional,
                    Sequence, Set, Tuple)

from sympy.core.intfunc import igcdex
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp

from .complex import (Complex, VertexId, bfs_tree, is_connected,
                      make_simplex)
from .errors import (EmptyInput, InvalidLoop, NotConnected, UnknownBasepoint)
from .loops import EdgeLoop, EdgePath, as_edge_loop

logger = logging.getLogger(__name__)

Edge = Tuple[VertexId, VertexId]
# (generator index, ±1)
Letter = Tuple[int, int]
Word = Tuple[Letter, ...]


# ---------------------------------------------------------------------------
# Integer matrices and Smith normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntMatrix:
    """Rectangular integer matrix; `cols` is explicit so 0-row shapes work."""
    rows: Tuple[Tuple[int, ...], ...]
    cols: int

    def __post_init__(self):
        if any(len(r) != self.cols for r in self.rows):
            raise ValueError("matrix rows have different lengths")

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]],
           cols: Optional[int] = None) -> IntMatrix:
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.of(_eye(n), n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls.of([[0] * cols for _ in range(rows)], cols)

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.rows), self.cols)

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.rows[i][j]

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != len(other.rows):
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.column(j) for j in range(other.cols)]
        return IntMatrix.of(
            [[sum(x * y for x, y in zip(r, c)) for c in cols]
             for r in self.rows], other.cols)

    def to_lists(self) -> List[List[int]]:
        return [list(r) for r in self.rows]


def _eye(n: int) -> List[List[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _domain_matrix(rows: Sequence[Sequence[int]], ncols: int) -> DomainMatrix:
    return DomainMatrix([[ZZ(x) for x in r] for r in rows],
                        (len(rows), ncols), ZZ)


def _ints(m: DomainMatrix) -> List[List[int]]:
    return [[int(x) for x in r] for r in m.to_list()]


def _smith(matrix: Sequence[Sequence[int]], ncols: int):
    """Returns u, d, v, v_inv (lists) with u·matrix·v = d and d >= 0."""
    d, s, t = smith_normal_decomp(_domain_matrix(matrix, ncols))
    u, a, v = _ints(s), _ints(d), _ints(t)
    for i in range(min(len(a), ncols)):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            u[i] = [-x for x in u[i]]
    # t is unimodular, so its rational inverse is integral
    v_inv = _ints(t.to_field().inv().convert_to(ZZ)) if ncols else []
    return u, a, v, v_inv


def smith_normal_form(m: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """(U, D, V) with U·m·V = D, U and V unimodular, D diagonal with
    d1 | d2 | ... and all zeros last."""
    nrows, ncols = m.shape
    u, d, v, _ = _smith(m.rows, ncols)
    return (IntMatrix.of(u, nrows), IntMatrix.of(d, ncols),
            IntMatrix.of(v, ncols))


def diagonal(d: IntMatrix) -> Tuple[int, ...]:
    return tuple(d[i, i] for i in range(min(d.shape)))


# ---------------------------------------------------------------------------
# Abelian groups in invariant-factor coordinates
# ---------------------------------------------------------------------------

def reduce_mod(value: int, factor: int) -> int:
    return value % factor if factor else value


@dataclass(frozen=True)
class PointedAbelianSignature:
    """⊕ Z/d_i with a distinguished element; d = 0 is an infinite factor.

    Finite factors come first in divisibility order, then the free part.
    """
    invariant_factors: Tuple[int, ...]
    element: Tuple[int, ...]

    def __post_init__(self):
        if len(self.element) != len(self.invariant_factors):
            raise ValueError("element length differs from number of factors")
        if any(f == 1 or f < 0 for f in self.invariant_factors):
            raise ValueError(f"bad invariant factors {self.invariant_factors}")
        finite = self.torsion
        if self.invariant_factors != finite + (0,) * self.free_rank:
            raise ValueError("finite factors must precede free ones")
        if any(b % a for a, b in zip(finite, finite[1:])):
            raise ValueError(f"divisibility chain fails: {finite}")

    @property
    def torsion(self) -> Tuple[int, ...]:
        return tuple(f for f in self.invariant_factors if f)

    @property
    def free_rank(self) -> int:
        return sum(1 for f in self.invariant_factors if f == 0)

    def negated(self) -> PointedAbelianSignature:
        return PointedAbelianSignature(
            self.invariant_factors,
            tuple(reduce_mod(-e, f)
                  for e, f in zip(self.element, self.invariant_factors)))


class Abelianization:
    """Z^n modulo a relation lattice, in invariant-factor coordinates.

    Relations with a ±1 entry are used first to eliminate generators
    (shortest relation first), which keeps the dense Smith form small; the
    residue goes through sympy's Smith decomposition. Both steps are unimodular, so
    `coordinates` is an isomorphism onto ⊕ Z/d_i.
    """

    def __init__(self, relations: Sequence[Mapping[int, int]], n: int):
        self.n = n
        self._eliminations: List[Tuple[int, int, Dict[int, int]]] = []
        residual = self._eliminate_units(relations)
        eliminated = {col for col, _, _ in self._eliminations}
        self._free_columns = [j for j in range(n) if j not in eliminated]
        position = {col: k for k, col in enumerate(self._free_columns)}
        m = len(self._free_columns)
        dense = sorted({tuple(sorted(r.items())) for r in residual})
        rows = []
        for items in dense:
            row = [0] * m
            for col, c in items:
                row[position[col]] = c
            rows.append(row)
        _, d, self._v, self._v_inv = _smith(rows, m)
        self._diagonal = [d[k][k] if k < len(rows) else 0 for k in range(m)]
        self._kept = [k for k, f in enumerate(self._diagonal) if f != 1]
        self.factors: Tuple[int, ...] = tuple(self._diagonal[k]
                                              for k in self._kept)
        logger.debug("abelianized %d generators / %d relations: %d eliminated, "
                     "%dx%d residue, factors %s", n, len(relations),
                     len(self._eliminations), len(rows), m, self.factors)

    def _eliminate_units(self, relations: Sequence[Mapping[int, int]]
                         ) -> List[Dict[int, int]]:
        rows: Dict[int, Dict[int, int]] = {}
        by_column: Dict[int, Set[int]] = {}
        heap: List[Tuple[int, int]] = []
        for rid, rel in enumerate(relations):
            row = {j: c for j, c in rel.items() if c}
            if not row:
                continue
            rows[rid] = row
            for j in row:
                by_column.setdefault(j, set()).add(rid)
            heap.append((len(row), rid))
        heapq.heapify(heap)

        while heap:
            length, rid = heapq.heappop(heap)
            row = rows.get(rid)
            if row is None or len(row) != length:
                continue
            col = min((j for j, c in row.items() if c in (1, -1)), default=None)
            if col is None:
                continue
            unit = row[col]
            del rows[rid]
            for j in row:
                by_column[j].discard(rid)
            self._eliminations.append((col, unit, row))
            for other in sorted(by_column.pop(col, ())):
                target = rows[other]
                k = target[col] * unit
                for j, c in row.items():
                    value = target.get(j, 0) - k * c
                    if value:
                        if j not in target:
                            by_column.setdefault(j, set()).add(other)
                        target[j] = value
                    elif j in target:
                        del target[j]
                        if j != col:
                            by_column[j].discard(other)
                if target:
                    heapq.heappush(heap, (len(target), other))
                else:
                    del rows[other]
        return list(rows.values())

    def coordinates(self, vector: Sequence[int]) -> Tuple[int, ...]:
        """Image of an exponent vector in ⊕ Z/d_i."""
        x = {j: c for j, c in enumerate(vector) if c}
        for col, unit, row in self._eliminations:
            c = x.get(col)
            if c:
                k = c * unit
                for j, r in row.items():
                    x[j] = x.get(j, 0) - k * r
        rem = [x.get(col, 0) for col in self._free_columns]
        out = []
        for k in self._kept:
            y = sum(r * self._v[i][k] for i, r in enumerate(rem) if r)
            out.append(reduce_mod(y, self._diagonal[k]))
        return tuple(out)

    def lift(self, k: int) -> List[int]:
        """An exponent vector whose coordinates are the k-th unit vector."""
        row = self._v_inv[self._kept[k]]
        vector = [0] * self.n
        for col, c in zip(self._free_columns, row):
            vector[col] = c
        return vector

    def signature(self, vector: Sequence[int]) -> PointedAbelianSignature:
        return PointedAbelianSignature(self.factors, self.coordinates(vector))


# ---------------------------------------------------------------------------
# Edge-path presentation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupPresentation:
    """π₁ of a connected complex: one generator per non-tree edge (oriented
    low id -> high id), one relator per triangle."""
    generators: Tuple[Edge, ...]
    relators: Tuple[Word, ...]
    basepoint: VertexId
    tree: FrozenSet[Edge]
    parents: Tuple[Tuple[VertexId, Optional[VertexId]], ...] = field(
        repr=False)

    @cached_property
    def index(self) -> Dict[Edge, int]:
        return {e: i for i, e in enumerate(self.generators)}

    @cached_property
    def parent_map(self) -> Dict[VertexId, Optional[VertexId]]:
        return dict(self.parents)

    def letter(self, a: VertexId, b: VertexId) -> Optional[Letter]:
        """Letter for stepping a -> b; None on tree edges."""
        edge = make_simplex((a, b))
        if edge in self.tree:
            return None
        i = self.index.get(edge)
        if i is None:
            raise InvalidLoop(f"{a!r}-{b!r} is not an edge")
        return (i, 1 if a < b else -1)

    def word(self, vertices: Sequence[VertexId]) -> Word:
        letters = (self.letter(a, b)
                   for a, b in zip(vertices, vertices[1:]) if a != b)
        return tuple(x for x in letters if x is not None)

    def tree_path(self, v: VertexId) -> List[VertexId]:
        """Tree path from the basepoint to v."""
        path = [v]
        while self.parent_map[path[-1]] is not None:
            path.append(self.parent_map[path[-1]])
        return path[::-1]

    def generator_loop(self, i: int) -> EdgeLoop:
        a, b = self.generators[i]
        way_in = EdgePath(tuple(self.tree_path(a)) + (b,))
        way_out = EdgePath(tuple(self.tree_path(b))).reversed()
        return EdgeLoop(way_in.concat(way_out))


def presentation(c: Complex, basepoint: VertexId,
                 rank: Optional[Callable[[VertexId], object]] = None
                 ) -> GroupPresentation:
    """Edge-path presentation with a BFS spanning tree from `basepoint`.

    `rank` reorders neighbor exploration (canonical id order by default),
    which changes the tree but not the group.
    """
    if (basepoint,) not in c:
        raise UnknownBasepoint(f"{basepoint!r} is not a vertex")
    if not is_connected(c):
        raise NotConnected("presentation needs a connected complex")
    parents = bfs_tree(c, basepoint, rank)
    tree = frozenset(make_simplex((v, p)) for v, p in parents.items()
                     if p is not None)
    generators = tuple(e for e in c.edges if e not in tree)
    bare = GroupPresentation(generators, (), basepoint, tree,
                             tuple(parents.items()))
    relators = tuple(bare.word((a, b, t, a)) for a, b, t in c.triangles)
    logger.debug("presentation: %d generators, %d relators",
                 len(generators), len(relators))
    return replace(bare, relators=relators)


def loop_word(p: GroupPresentation, loop: EdgeLoop) -> Word:
    """Word of an edge loop.

    A loop based elsewhere is conjugated by the tree path to its base; tree
    edges carry no letters, so the word is the same.
    """
    return p.word(loop.vertices)


def exponent_sum(word: Word, n: int) -> List[int]:
    vector = [0] * n
    for i, sign in word:
        vector[i] += sign
    return vector


def abelianize(p: GroupPresentation) -> Abelianization:
    n = len(p.generators)
    relations = []
    for relator in p.relators:
        row: Dict[int, int] = {}
        for i, sign in relator:
            row[i] = row.get(i, 0) + sign
        relations.append(row)
    return Abelianization(relations, n)


def abelian_signature(p: GroupPresentation, w: Word,
                      ab: Optional[Abelianization] = None
                      ) -> PointedAbelianSignature:
    ab = ab or abelianize(p)
    return ab.signature(exponent_sum(w, len(p.generators)))


def direct_sum(signatures: Sequence[PointedAbelianSignature]
               ) -> PointedAbelianSignature:
    """Normalized ⊕ with the concatenated element."""
    factors = [f for s in signatures for f in s.invariant_factors]
    element = [e for s in signatures for e in s.element]
    relations = [{i: f} for i, f in enumerate(factors) if f]
    return Abelianization(relations, len(factors)).signature(element)


# ---------------------------------------------------------------------------
# Pointed homomorphisms
# ---------------------------------------------------------------------------

def extended_gcd(values: Sequence[int]) -> Tuple[int, List[int]]:
    """g >= 0 and coefficients c with Σ c_i v_i = g; gcd of nothing is 0."""
    g, coeffs = 0, []
    for v in values:
        s, t, g = igcdex(g, v)
        coeffs = [c * int(s) for c in coeffs] + [int(t)]
    g = int(g)
    return g, coeffs


def _solve_coordinate(a: PointedAbelianSignature, f: int,
                      target: int) -> Optional[List[int]]:
    """Images y_i in Z/f (Z when f = 0) with d_i·y_i = 0, Σ a_i·y_i = target."""
    steps = []
    for d in a.invariant_factors:
        if f == 0:
            steps.append(1 if d == 0 else 0)
        else:
            steps.append(f // gcd(d, f))
    values = [e * s for e, s in zip(a.element, steps)]
    g, coeffs = extended_gcd(values + ([f] if f else []))
    if g == 0:
        return [0] * len(values) if target == 0 else None
    if target % g:
        return None
    scale = target // g
    return [reduce_mod(c * s * scale, f)
            for c, s in zip(coeffs[:len(values)], steps)]


def hom_witness(a: PointedAbelianSignature,
                b: PointedAbelianSignature) -> Optional[IntMatrix]:
    """Matrix (rows: b's factors, columns: a's) of a homomorphism sending
    a's element to b's, or None."""
    columns_by_row = []
    for f, target in zip(b.invariant_factors, b.element):
        solution = _solve_coordinate(a, f, target)
        if solution is None:
            return None
        columns_by_row.append(solution)
    return IntMatrix.of(columns_by_row, len(a.invariant_factors))


def pointed_hom_exists(a: PointedAbelianSignature,
                       b: PointedAbelianSignature) -> bool:
    return hom_witness(a, b) is not None


def obstruction(a: PointedAbelianSignature,
                b: PointedAbelianSignature) -> Optional[str]:
    """Why no pointed homomorphism a -> b exists, or None if one does."""
    for j, (f, target) in enumerate(zip(b.invariant_factors, b.element)):
        if _solve_coordinate(a, f, target) is None:
            group = "Z" if f == 0 else f"Z/{f}"
            return (f"coordinate {j} ({group}) of the target element is "
                    f"{target}, outside the image of the source element")
    return None


# ---------------------------------------------------------------------------
# Tasks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TaskAlgebra:
    presentation: GroupPresentation
    abelianization: Abelianization
    signature: PointedAbelianSignature


@lru_cache(maxsize=128)
def task_algebra(t) -> TaskAlgebra:
    """Presentation at v0, abelianization and signature of a task."""
    p = presentation(t.output, t.loop.v0)
    ab = abelianize(p)
    sig = abelian_signature(p, loop_word(p, as_edge_loop(t.loop)), ab)
    logger.info("signature of %s: factors %s element %s", t.label,
                sig.invariant_factors, sig.element)
    return TaskAlgebra(p, ab, sig)


def task_signature(t) -> PointedAbelianSignature:
    return task_algebra(t).signature


def is_certified_abelian(t) -> bool:
    """π₁ known abelian: catalog-derived, or cyclic by presentation size."""
    return t.abelian or len(task_algebra(t).presentation.generators) <= 1


class Outcome(Enum):
    IMPLEMENTS = "IMPLEMENTS"
    NOT_IMPLEMENTS = "NOT_IMPLEMENTS"
    UNKNOWN = "UNKNOWN"
    EQUIVALENT = "EQUIVALENT"
    NOT_EQUIVALENT = "NOT_EQUIVALENT"


@dataclass(frozen=True)
class Verdict:
    """Outcome plus a witness matrix or an obstruction description."""
    outcome: Outcome
    detail: str
    witnesses: Tuple[IntMatrix, ...] = ()
    source: Optional[PointedAbelianSignature] = None
    target: Optional[PointedAbelianSignature] = None


def decide_implements(sources: Sequence, tgt) -> Verdict:
    """Do the sources jointly implement tgt? Decided on abelianizations.

    NOT_IMPLEMENTS is always sound: a homomorphism of groups induces one of
    abelianizations. IMPLEMENTS needs every π₁ involved to be certified
    abelian; otherwise the answer is UNKNOWN.
    """
    if not sources:
        raise EmptyInput("no source tasks")
    sigs = [task_signature(s) for s in sources]
    source = sigs[0] if len(sigs) == 1 else direct_sum(sigs)
    target = task_signature(tgt)
    witness = hom_witness(source, target)
    if witness is None:
        return Verdict(Outcome.NOT_IMPLEMENTS, obstruction(source, target),
                       source=source, target=target)
    if all(is_certified_abelian(t) for t in [*sources, tgt]):
        return Verdict(Outcome.IMPLEMENTS,
                       "pointed homomorphism between abelian groups",
                       (witness,), source, target)
    return Verdict(Outcome.UNKNOWN,
                   "abelianizations admit a pointed homomorphism but π₁ is "
                   "not certified abelian", (witness,), source, target)


def tasks_equivalent(t1, t2) -> Verdict:
    """Both directions of decide_implements, met in the verdict lattice."""
    forward = decide_implements([t1], t2)
    backward = decide_implements([t2], t1)
    outcomes = {forward.outcome, backward.outcome}
    if Outcome.NOT_IMPLEMENTS in outcomes:
        failed = forward if forward.outcome is Outcome.NOT_IMPLEMENTS else backward
        direction = "forward" if failed is forward else "backward"
        return Verdict(Outcome.NOT_EQUIVALENT, f"{direction}: {failed.detail}",
                       source=forward.source, target=forward.target)
    witnesses = forward.witnesses + backward.witnesses
    if Outcome.UNKNOWN in outcomes:
        return Verdict(Outcome.UNKNOWN, "equivalence not certified",
                       witnesses, forward.source, forward.target)
    return Verdict(Outcome.EQUIVALENT, "pointed homomorphisms both ways",
                   witnesses, forward.source, forward.target)
