from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from scipy.spatial import ConvexHull

from conftest import TETRAHEDRON, point_sets, points
from widthlab.geometry import (DimensionError, EmptyIntersectionError, GeometryError,
                               Halfspace, Polytope, UnboundedError, contains,
                               contains_polytope, convex_hull, equal,
                               intersect_halfspaces, lift, minkowski_sum,
                               plane_section, scale_translate)
from widthlab.norms import l1_norm, make_ball

F = Fraction


def square(s=1):
    return convex_hull([(s, s), (s, -s), (-s, s), (-s, -s)])


def test_hull_of_cross_polytope():
    P = convex_hull([(1, 0), (-1, 0), (0, 1), (0, -1)])
    assert len(P.vertices) == 4 and len(P.facets) == 4
    assert {h.a for h in P.facets} == {(1, 1), (1, -1), (-1, 1), (-1, -1)}
    assert all(h.b == 1 for h in P.facets)


def test_hull_of_tetrahedron():
    P = convex_hull(TETRAHEDRON)
    assert P.vertices == tuple(sorted(TETRAHEDRON))
    assert len(P.facets) == 4 and P.is_full_dimensional


def test_collinear_points_give_a_segment():
    P = convex_hull([(0, 0), (1, 1), (2, 2)])
    assert P.vertices == ((0, 0), (2, 2))
    assert P.is_degenerate and P.affine_dim == 1


def test_empty_input():
    with pytest.raises(GeometryError):
        convex_hull([])


def test_intersect_halfspaces_square():
    hs = [Halfspace((1, 0), 1), Halfspace((-1, 0), 1), Halfspace((0, 1), 1), Halfspace((0, -1), 1)]
    assert equal(intersect_halfspaces(hs), square())


def test_two_l1_balls_intersect_in_the_unit_diamond():
    n = l1_norm(2)
    hs = list(make_ball(n, (1, 0), 2).materialized.facets) + \
        list(make_ball(n, (-1, 0), 2).materialized.facets)
    P = intersect_halfspaces(hs)
    assert equal(P, n.ball)
    # oracle: dense grid membership in both balls
    g = np.linspace(-3, 3, 121)
    X, Y = np.meshgrid(g, g)
    both = (np.abs(X - 1) + np.abs(Y) <= 2) & (np.abs(X + 1) + np.abs(Y) <= 2)
    assert np.array_equal(both, np.abs(X) + np.abs(Y) <= 1)


def test_intersection_errors():
    with pytest.raises(EmptyIntersectionError):
        intersect_halfspaces([Halfspace((1,), 0), Halfspace((-1,), -1)])
    with pytest.raises(UnboundedError):
        intersect_halfspaces([Halfspace((1, 0), 1), Halfspace((0, 1), 1)])


def test_minkowski_examples():
    assert equal(minkowski_sum(square(), square()), square(2))
    seg = convex_hull([(-1, 0), (1, 0)])
    assert equal(minkowski_sum(seg, convex_hull([(0, 0)])), seg)
    with pytest.raises(DimensionError):
        minkowski_sum(seg, convex_hull([(0, 0, 0)]))


def test_difference_body_of_tetrahedron():
    K = convex_hull(TETRAHEDRON)
    D = minkowski_sum(K, scale_translate(K, -1))
    # oracle: brute force over vertex pairs and qhull
    diffs = np.array([np.subtract(a, b) for a in TETRAHEDRON for b in TETRAHEDRON], dtype=float)
    ref = ConvexHull(diffs)
    assert sorted(map(tuple, diffs[ref.vertices].tolist())) == \
        sorted(tuple(float(c) for c in v) for v in D.vertices)
    assert len(D.vertices) == 12      # cuboctahedron


def test_scale_translate_examples():
    assert equal(scale_translate(square(), 2), square(2))
    K = convex_hull(TETRAHEDRON)
    assert equal(scale_translate(K, 1), K)
    assert set(scale_translate(K, -1).vertices) == {tuple(-c for c in v) for v in TETRAHEDRON}
    moved = scale_translate(square(), F(1, 2), (3, 0))
    assert contains(moved, (F(7, 2), F(1, 2))) and not contains(moved, (3, 1))


def test_predicates():
    assert contains(square(), (1, 1))
    assert contains_polytope(convex_hull([(2, 0), (-2, 0), (0, 2), (0, -2)]), square())
    P = square()
    assert equal(P, P)


def test_plane_sections():
    ball = l1_norm(3).ball
    S = plane_section(ball, (1, 0, 0), (0, 1, 0))
    assert equal(S, convex_hull([(1, 0), (-1, 0), (0, 1), (0, -1)]))
    S = plane_section(ball, (0, 0, 1), (1, 1, 0))
    assert S.vertices == tuple(sorted([(1, 0), (-1, 0), (0, F(1, 2)), (0, F(-1, 2))]))
    cube = convex_hull([(x, y, z) for x in (1, -1) for y in (1, -1) for z in (1, -1)])
    hexagon = plane_section(cube, (1, -1, 0), (1, 1, -2))
    assert len(hexagon.vertices) == 6
    with pytest.raises(GeometryError):
        plane_section(ball, (1, 0, 0), (2, 0, 0))


def test_json_round_trip():
    K = convex_hull(TETRAHEDRON)
    data = K.to_json()
    assert data["vertices"][0] == ["-1/1", "-1/1", "-1/1"]
    assert equal(Polytope.from_json(data), K)
    facets_only = {"dim": 3, "facets": data["facets"]}
    assert equal(Polytope.from_json(facets_only), K)


@given(st.one_of(point_sets(2, 3, 8), point_sets(3, 4, 8)))
def test_hull_matches_qhull(pts):
    P = convex_hull(pts)
    arr = np.array(pts, dtype=float)
    assume(P.is_full_dimensional)
    ref = ConvexHull(arr)
    assert sorted(map(tuple, arr[ref.vertices].tolist())) == \
        sorted(tuple(float(c) for c in v) for v in P.vertices)


@given(st.one_of(point_sets(2, 1, 7), point_sets(3, 1, 7)))
def test_round_trips(pts):
    P = convex_hull(pts)
    assert equal(convex_hull(P.vertices), P)
    for v in P.vertices:
        assert all(h.evaluate(v) <= 0 for h in P.facets)
    if P.is_full_dimensional:
        assert equal(intersect_halfspaces(P.facets), P)


@given(point_sets(2, 1, 5), point_sets(2, 1, 5))
def test_minkowski_commutes(a, b):
    P, Q = convex_hull(a), convex_hull(b)
    assert equal(minkowski_sum(P, Q), minkowski_sum(Q, P))
    assert equal(minkowski_sum(P, convex_hull([(0, 0)])), P)


@given(point_sets(3, 1, 6), points(3))
def test_contains_agrees_with_facets(pts, x):
    P = convex_hull(pts)
    assert contains(P, x) == all(h.a[0] * x[0] + h.a[1] * x[1] + h.a[2] * x[2] <= h.b
                                 for h in P.facets)


@given(point_sets(2, 1, 5), point_sets(2, 1, 5))
def test_equal_iff_mutual_containment(a, b):
    P, Q = convex_hull(a), convex_hull(b)
    assert equal(P, Q) == (contains_polytope(P, Q) and contains_polytope(Q, P))


@given(point_sets(3, 4, 7), points(3, lo=-2, hi=2), points(3, lo=-2, hi=2))
def test_section_vertices_lie_on_the_boundary(pts, u, w):
    P = convex_hull(pts)
    assume(P.is_full_dimensional)
    cr = (u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0])
    assume(any(cr))
    try:
        S = plane_section(P, u, w)
    except GeometryError:
        return
    for v in S.vertices:
        x = lift(v, u, w)
        assert contains(P, x)
        assert any(h.evaluate(x) == 0 for h in P.facets)
