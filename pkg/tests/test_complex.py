"""Unit tests for simplicial complexes, products, subdivision and maps."""

import itertools

import pytest
from loopagree.complex import (Complex, SimplicialMap, bary_id,
                               bary_subcomplex, barycentric,
                               barycentric_power, bfs_tree, build,
                               check_simplicial, compose_maps, dimension,
                               identity_map, induced_bary_map,
                               induced_bary_power, is_connected, make_simplex,
                               pair_id, path_complex, product, skeleton)
from loopagree.constants import PROJECTIVE_PLANE, TORUS
from loopagree.errors import (DuplicateVertex, EmptyComplex, EmptyInput,
                              NotSimplicial, NotSubcomplex, PartialAssignment,
                              TargetSourceMismatch)
from loopagree.task import catalog


# Small complexes shared by the tests below.
TRIANGLE = build([("a", "b", "c")])
HOLLOW = build([("a", "b"), ("b", "c"), ("c", "a")])
TETRA = build([("0", "1", "2", "3")])
SQUARE = build([("w", "x"), ("x", "y"), ("y", "z"), ("z", "w")])


# ── Construction ──────────────────────────────────────────────────────────

class TestMakeSimplex:
    def test_sorted(self):
        assert make_simplex(["c", "a", "b"]) == ("a", "b", "c")

    def test_empty_rejected(self):
        with pytest.raises(EmptyInput):
            make_simplex([])

    def test_duplicate_rejected(self):
        with pytest.raises(DuplicateVertex):
            make_simplex(["a", "a"])

    def test_non_string_rejected(self):
        with pytest.raises(EmptyInput):
            make_simplex([1, 2])


class TestBuild:
    @pytest.mark.parametrize("maximal,count", [
        ([("a", "b", "c")], 7),
        ([("a",)], 1),
        ([("a", "b"), ("b", "c"), ("c", "a")], 6),
    ])
    def test_simplex_counts(self, maximal, count):
        assert len(build(maximal)) == count

    def test_no_sets(self):
        with pytest.raises(EmptyInput):
            build([])

    def test_duplicate_in_set(self):
        with pytest.raises(DuplicateVertex):
            build([("a", "b", "a")])

    def test_downward_closed(self):
        for s in TETRA.simplexes:
            for v in s:
                face = tuple(x for x in s if x != v)
                if face:
                    assert face in TETRA

    def test_accessors(self):
        assert TRIANGLE.vertices == ("a", "b", "c")
        assert TRIANGLE.edges == (("a", "b"), ("a", "c"), ("b", "c"))
        assert TRIANGLE.triangles == (("a", "b", "c"),)
        assert TRIANGLE.maximal == (("a", "b", "c"),)
        assert HOLLOW.maximal == (("a", "b"), ("a", "c"), ("b", "c"))
        assert TRIANGLE.f_vector == (3, 3, 1)
        assert TRIANGLE.contains(["c", "a"])
        assert not HOLLOW.contains(["a", "b", "c"])

    def test_subcomplex(self):
        assert HOLLOW.is_subcomplex_of(TRIANGLE)
        assert not TRIANGLE.is_subcomplex_of(HOLLOW)


class TestSkeletonAndDimension:
    def test_skeleton_one_of_triangle(self):
        assert skeleton(TRIANGLE, 1) == HOLLOW
        assert len(skeleton(TRIANGLE, 1)) == 6

    def test_skeleton_zero(self):
        assert skeleton(TETRA, 0).simplexes == {("0",), ("1",), ("2",), ("3",)}

    def test_skeleton_two_of_tetrahedron(self):
        assert len(skeleton(TETRA, 2)) == 14

    @pytest.mark.parametrize("c,dim", [
        (TRIANGLE, 2), (HOLLOW, 1), (build([("v",)]), 0), (TETRA, 3),
    ])
    def test_dimension(self, c, dim):
        assert dimension(c) == dim

    def test_dimension_empty(self):
        with pytest.raises(EmptyComplex):
            dimension(Complex(frozenset()))

    def test_path_complex(self):
        c = path_complex(["a", "b", "c", "b"])
        assert c.simplexes == {("a",), ("b",), ("c",), ("a", "b"), ("b", "c")}


# ── Connectivity ──────────────────────────────────────────────────────────

class TestConnectivity:
    def test_triangle(self):
        assert is_connected(TRIANGLE)

    def test_two_points(self):
        assert not is_connected(build([("a",), ("b",)]))

    def test_bowtie(self):
        assert is_connected(build([("a", "b", "c"), ("c", "d", "e")]))

    def test_empty(self):
        with pytest.raises(EmptyComplex):
            is_connected(Complex(frozenset()))

    def test_bfs_tree_canonical(self):
        parents = bfs_tree(SQUARE, "w")
        assert parents == {"w": None, "x": "w", "z": "w", "y": "x"}

    def test_bfs_tree_rank(self):
        parents = bfs_tree(SQUARE, "w", rank=lambda v: -ord(v))
        assert parents["y"] == "z"


# ── Products ──────────────────────────────────────────────────────────────

class TestNaming:
    def test_pair(self):
        assert pair_id("a", "b") == "a|b"

    def test_pair_escapes(self):
        assert pair_id("a|b", "c") == "a\\|b|c"
        assert pair_id("a", "b|c") != pair_id("a|b", "c")

    def test_bary(self):
        assert bary_id(("a", "b")) == "{a,b}"

    def test_bary_escapes(self):
        assert bary_id(("a,b",)) == "{a\\,b}"
        assert bary_id(("{x}",)) == "{\\{x\\}}"


class TestProduct:
    def test_edge_times_edge_is_tetrahedron(self):
        p = product(build([("a", "b")]), build([("c", "d")]))
        assert len(p) == 15
        assert dimension(p) == 3

    def test_times_point(self):
        p = product(TRIANGLE, build([("v",)]))
        assert p.f_vector == TRIANGLE.f_vector
        assert set(p.vertices) == {pair_id(x, "v") for x in "abc"}

    def test_vertex_count(self):
        assert len(product(HOLLOW, HOLLOW).vertices) == 9

    def test_projections_are_simplexes(self):
        p = product(HOLLOW, TRIANGLE)
        left = {pair_id(x, y): x for x in HOLLOW.vertices
                for y in TRIANGLE.vertices}
        right = {pair_id(x, y): y for x in HOLLOW.vertices
                 for y in TRIANGLE.vertices}
        for s in p.simplexes:
            assert HOLLOW.contains(left[v] for v in s)
            assert TRIANGLE.contains(right[v] for v in s)

    def test_max_dim_is_skeleton(self):
        full = product(TRIANGLE, HOLLOW)
        assert product(TRIANGLE, HOLLOW, max_dim=2) == skeleton(full, 2)

    def test_empty(self):
        with pytest.raises(EmptyComplex):
            product(Complex(frozenset()), TRIANGLE)

def _swapped(a, b):
    swap = {pair_id(x, y): pair_id(y, x)
            for x in a.vertices for y in b.vertices}
    return swap, {v: k for k, v in swap.items()}


class TestProductSymmetry:
    SHAPES = {"triangle": TRIANGLE, "hollow": HOLLOW, "square": SQUARE,
              "edge": build([("p", "q")]), "point": build([("p",)])}

    @pytest.mark.parametrize("left,right", itertools.combinations_with_replacement(
        sorted(SHAPES), 2))
    def test_coordinate_swap(self, left, right):
        a, b = self.SHAPES[left], self.SHAPES[right]
        ab, ba = product(a, b), product(b, a)
        forward, backward = _swapped(a, b)
        assert frozenset(tuple(sorted(forward[v] for v in s))
                         for s in ab.simplexes) == ba.simplexes
        assert check_simplicial(SimplicialMap(ab, ba, forward))
        assert check_simplicial(SimplicialMap(ba, ab, backward))

    def test_capped_catalog_pair(self):
        a, b = catalog(TORUS).output, catalog(PROJECTIVE_PLANE).output
        ab, ba = product(a, b, max_dim=2), product(b, a, max_dim=2)
        forward, _ = _swapped(a, b)
        assert frozenset(tuple(sorted(forward[v] for v in s))
                         for s in ab.simplexes) == ba.simplexes


# ── Subdivision ───────────────────────────────────────────────────────────

class TestBarycentric:
    def test_edge(self):
        b = barycentric(build([("a", "b")]))
        assert b.f_vector == (3, 2)
        assert b.edges == (("{a,b}", "{a}"), ("{a,b}", "{b}"))

    def test_triangle(self):
        assert barycentric(TRIANGLE).f_vector == (7, 12, 6)

    def test_vertex(self):
        assert barycentric(build([("v",)])).simplexes == {("{v}",)}

    def test_power(self):
        assert len(barycentric_power(TRIANGLE, 2).vertices) == 25
        assert barycentric_power(TRIANGLE, 0) == TRIANGLE

    def test_subcomplex_whole(self):
        assert bary_subcomplex(TRIANGLE, TRIANGLE) == barycentric(TRIANGLE)

    def test_subcomplex_vertex(self):
        assert bary_subcomplex(TRIANGLE, build([("a",)])).simplexes == {("{a}",)}

    def test_subcomplex_edge(self):
        sub = bary_subcomplex(TRIANGLE, build([("a", "b")]))
        assert sub.f_vector == (3, 2)
        assert sub.is_subcomplex_of(barycentric(TRIANGLE))

    def test_not_subcomplex(self):
        with pytest.raises(NotSubcomplex):
            bary_subcomplex(HOLLOW, TRIANGLE)

class TestBarycentricConnectivity:
    @pytest.mark.parametrize("c", [
        TRIANGLE, HOLLOW, TETRA, SQUARE,
        build([("a", "b"), ("c",)]),
        build([("a", "b", "c"), ("d", "e")]),
        build([("a",)]),
    ])
    def test_preserved(self, c):
        assert is_connected(barycentric(c)) == is_connected(c)
        assert is_connected(barycentric_power(c, 2)) == is_connected(c)


# ── Simplicial maps ───────────────────────────────────────────────────────

def _map(source, target, **assignment):
    return SimplicialMap(source, target, assignment)


class TestSimplicialMaps:
    def test_identity(self):
        assert check_simplicial(identity_map(TRIANGLE))

    def test_collapse(self):
        point = build([("p",)])
        assert check_simplicial(_map(TRIANGLE, point, a="p", b="p", c="p"))

    def test_no_chord_in_square(self):
        m = _map(HOLLOW, SQUARE, a="w", b="y", c="x")
        assert not check_simplicial(m)

    def test_partial(self):
        with pytest.raises(PartialAssignment):
            check_simplicial(_map(TRIANGLE, TRIANGLE, a="a", b="b"))

    def test_compose(self):
        rot = _map(HOLLOW, HOLLOW, a="b", b="c", c="a")
        twice = compose_maps(rot, rot)
        assert dict(twice.assignment) == {"a": "c", "b": "a", "c": "b"}

    def test_compose_mismatch(self):
        with pytest.raises(TargetSourceMismatch):
            compose_maps(identity_map(HOLLOW), identity_map(TRIANGLE))

    def test_image_path_drops_repeats(self):
        m = _map(HOLLOW, HOLLOW, a="a", b="a", c="c")
        assert m.image_path(["a", "b", "c", "a"]) == ["a", "c", "a"]


class TestInducedBaryMap:
    def test_identity(self):
        induced = induced_bary_map(identity_map(TRIANGLE))
        assert induced == identity_map(barycentric(TRIANGLE))

    def test_functorial(self):
        m1 = _map(HOLLOW, HOLLOW, a="b", b="c", c="a")
        m2 = _map(HOLLOW, HOLLOW, a="a", b="a", c="c")
        left = induced_bary_map(compose_maps(m1, m2))
        right = compose_maps(induced_bary_map(m1), induced_bary_map(m2))
        assert dict(left.assignment) == dict(right.assignment)

    def test_collapse(self):
        point = build([("p",)])
        induced = induced_bary_map(_map(TRIANGLE, point, a="p", b="p", c="p"))
        assert set(induced.assignment.values()) == {"{p}"}

    def test_not_simplicial(self):
        with pytest.raises(NotSimplicial):
            induced_bary_map(_map(HOLLOW, SQUARE, a="w", b="y", c="x"))

    def test_power(self):
        m = induced_bary_power(identity_map(HOLLOW), 2)
        assert m.source == barycentric_power(HOLLOW, 2)
        assert all(k == v for k, v in m.assignment.items())


def _all_maps(source, target):
    vertices = source.vertices
    for images in itertools.product(target.vertices, repeat=len(vertices)):
        m = SimplicialMap(source, target, dict(zip(vertices, images)))
        if check_simplicial(m):
            yield m


class TestInducedBaryFunctor:
    @pytest.mark.parametrize("a,b,c", [
        (HOLLOW, HOLLOW, HOLLOW),
        (TRIANGLE, HOLLOW, TRIANGLE),
        (SQUARE, HOLLOW, TRIANGLE),
        (HOLLOW, TRIANGLE, SQUARE),
    ], ids=["hollow", "triangle-hollow", "square-hollow", "hollow-square"])
    def test_every_pair(self, a, b, c):
        seconds = [(g, induced_bary_map(g)) for g in _all_maps(b, c)]
        assert seconds
        for f in _all_maps(a, b):
            bary_f = induced_bary_map(f)
            for g, bary_g in seconds:
                left = induced_bary_map(compose_maps(f, g))
                right = compose_maps(bary_f, bary_g)
                assert dict(left.assignment) == dict(right.assignment)

    @pytest.mark.parametrize("c", [TRIANGLE, HOLLOW, TETRA, SQUARE])
    def test_identity(self, c):
        assert induced_bary_map(identity_map(c)) == identity_map(barycentric(c))
