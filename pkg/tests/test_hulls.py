import math

import numpy as np
import pytest
from hypothesis import given

from conftest import planar_norms, point_sets
from widthlab.geometry import contains, contains_polytope, convex_hull, equal
from widthlab.hulls import (AnalyticNormError, sampled_tight_hull, sampled_wide_hull,
                            tight_spherical_hull, wide_spherical_hull)
from widthlab.metrics import diameter
from widthlab.norms import EuclideanNorm, hexagonal_bipyramid_norm, l1_norm, linf_norm
from widthlab.oracle import oracle_membership_eta

SEG = [(-1, 0), (1, 0)]


def test_l1_segment_hulls_are_the_ball(l12):
    wide = wide_spherical_hull(l12, SEG)
    assert equal(wide.hull, l12.ball) and wide.base_diameter == 2 and wide.kind == "wide"
    tight = tight_spherical_hull(l12, SEG)
    assert equal(tight.hull, l12.ball) and tight.kind == "tight"
    # oracle: grid membership agrees with the exact hull
    g = np.linspace(-1.5, 1.5, 41) + 1e-3
    X = np.array([(x, y) for x in g for y in g])
    ours = np.array([contains(wide.hull, tuple(p)) for p in X.tolist()])
    assert np.array_equal(ours, oracle_membership_eta(l12, SEG, X))


def test_tetrahedron_is_its_own_wide_hull(l13, tetrahedron):
    assert equal(wide_spherical_hull(l13, tetrahedron).hull, tetrahedron)
    assert equal(tight_spherical_hull(l13, tetrahedron).hull, tetrahedron)


@pytest.mark.parametrize("norm", [l1_norm(2), linf_norm(3), hexagonal_bipyramid_norm()])
def test_balls_are_their_own_hulls(norm):
    assert equal(wide_spherical_hull(norm, norm.ball).hull, norm.ball)


def test_linf_segment_hull_radii(linf2):
    wide = wide_spherical_hull(linf2, SEG)
    assert equal(wide.hull, convex_hull([(1, 2), (1, -2), (-1, 2), (-1, -2)]))
    assert diameter(linf2, wide.hull).value == 4
    # tight hull uses radius diam K = 2, not diam eta = 4
    tight = tight_spherical_hull(linf2, SEG, wide)
    assert tight.base_diameter == 2
    assert equal(tight.hull, convex_hull(SEG))


def test_provenance_names_a_vertex(linf2):
    res = wide_spherical_hull(linf2, SEG)
    assert set(res.provenance.values()) <= set(convex_hull(SEG).vertices)
    data = res.to_json()
    assert data["base_diameter"] == "2/1"
    assert all("center" in f for f in data["hull"]["facets"])


def test_analytic_norm_error():
    with pytest.raises(AnalyticNormError):
        wide_spherical_hull(EuclideanNorm(2), [(-1.0, 0.0), (1.0, 0.0)])


def test_euclidean_segment_sampled_hulls():
    n = EuclideanNorm(2)
    K = convex_hull([(-1.0, 0.0), (1.0, 0.0)])
    wide = sampled_wide_hull(n, K)
    assert abs(wide.diameter()[0] - 2 * math.sqrt(3)) <= 1e-6
    tight = sampled_tight_hull(n, K, wide=wide)
    assert tight.radius == 2.0
    assert tight.contains([0.0, 0.0]) and not tight.contains([0.0, 1.1])
    # strictly between K and the lens
    assert tight.contains([0.0, 0.2]) and wide.contains([0.0, 1.1])
    assert tight.diameter()[0] <= 2 + 1e-6


@given(planar_norms(), point_sets(2, 1, 5))
def test_sandwich_and_diameters(norm, pts):
    K = convex_hull(pts)
    wide = wide_spherical_hull(norm, K)
    tight = tight_spherical_hull(norm, K, wide)
    assert contains_polytope(tight.hull, K)
    assert contains_polytope(wide.hull, tight.hull)
    D = diameter(norm, K).value
    assert wide.base_diameter == D
    assert diameter(norm, tight.hull).value == D
    unique = diameter(norm, wide.hull).value == D
    assert unique == equal(wide.hull, tight.hull)


@given(planar_norms(), point_sets(2, 2, 5))
def test_idempotence_on_complete_sets(norm, pts):
    from widthlab.completeness import complete_greedily
    C = complete_greedily(norm, convex_hull(pts), track_progress=False)
    assert C.complete
    assert equal(wide_spherical_hull(norm, C.body).hull, C.body)
    assert equal(wide_spherical_hull(norm, wide_spherical_hull(norm, C.body).hull).hull, C.body)


def test_sandwich_in_space(l13):
    K = convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 1)])
    wide = wide_spherical_hull(l13, K)
    tight = tight_spherical_hull(l13, K, wide)
    assert contains_polytope(tight.hull, K) and contains_polytope(wide.hull, tight.hull)
    assert diameter(l13, tight.hull).value == diameter(l13, K).value
