import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import TETRAHEDRON, planar_norms, point_sets, points
from widthlab.geometry import GeometryError, convex_hull, scale_translate
from widthlab.hulls import sampled_wide_hull
from widthlab.metrics import (circumradius, convexity_profile, critical_functionals,
                              diameter, farthest_distance, modulus_of_convexity, width,
                              width_report)
from widthlab.norms import (DualFunctional, EuclideanNorm, NormError,
                            dual_unit_functionals, hexagonal_bipyramid_norm,
                            icosahedron_norm, l1_norm, linf_norm, make_ball)
from widthlab.oracle import (oracle_circumradius, oracle_diameter, oracle_modulus,
                             oracle_widths)

F = Fraction


def test_diameter_of_tetrahedron(l13, tetrahedron):
    d = diameter(l13, tetrahedron)
    assert d.value == 4
    assert d.witness == ((-1, -1, -1), (-1, 1, 1))
    assert oracle_diameter(l13, tetrahedron) == 4.0


@pytest.mark.parametrize("norm", [l1_norm(2), linf_norm(2), hexagonal_bipyramid_norm(),
                                  icosahedron_norm()])
def test_diameter_of_unit_segment(norm):
    u = norm.ball.vertices[0]
    assert diameter(norm, convex_hull([u, tuple(-c for c in u)])).value == 2


def test_diameter_of_singleton_is_zero(l12):
    assert diameter(l12, convex_hull([(1, 1)])).value == 0


def test_euclidean_lens_diameter():
    H = sampled_wide_hull(EuclideanNorm(2), convex_hull([(-1.0, 0.0), (1.0, 0.0)]))
    assert abs(H.diameter()[0] - 2 * math.sqrt(3)) <= 1e-6


def test_widths(l12, l13, tetrahedron):
    assert width(l13, tetrahedron, DualFunctional((1, 0, 0))) == 2
    assert width(l12, convex_hull([(-1, 0), (1, 0)]), DualFunctional((1, 1))) == 2
    for f in dual_unit_functionals(l12):
        assert width(l12, l12.ball, f) == 2
    with pytest.raises(NormError):
        width(l12, l12.ball, DualFunctional((2, 0)))


def test_width_report_of_tetrahedron(l13, tetrahedron):
    rep = width_report(l13, tetrahedron)
    assert rep.min_width == 2 and rep.max_width == 4 and rep.diameter == 4
    ws, _ = oracle_widths(l13, tetrahedron)
    assert ws.min() == 2.0 and abs(ws.max() - 4.0) < 1e-12
    # the eight extreme dual functionals of l1^3
    fs = {f.a for f in dual_unit_functionals(l13)}
    assert fs == {(a, b, c) for a in (1, -1) for b in (1, -1) for c in (1, -1)}


def test_width_report_of_balls(l12, linf2):
    for n in (l12, linf2):
        rep = width_report(n, n.ball)
        assert rep.min_width == rep.max_width == 2


def test_circumradius_of_tetrahedron(l13, tetrahedron):
    r, c = circumradius(l13, tetrahedron)
    # frozen from the grid-search oracle: strictly above diam / 2 = 2
    assert r == 3 and c == (0, 0, 0)
    ro, co = oracle_circumradius(l13, tetrahedron)
    assert ro == 3.0 and np.allclose(co, 0)
    assert max(l13(tuple(a - b for a, b in zip(v, c))) for v in TETRAHEDRON) == r


def test_circumradius_of_ball_and_segment(l12):
    B = make_ball(l12, (1, 2), 3).materialized
    assert circumradius(l12, B) == (3, (1, 2))
    seg = convex_hull([(-1, 0), (1, 0)])
    r, c = circumradius(l12, seg)
    assert r == 1 and farthest_distance(l12, seg, c) <= 1


def test_circumradius_euclidean_triangle():
    T = convex_hull([(0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3) / 2)])
    r, _ = circumradius(EuclideanNorm(2), T)
    assert abs(r - 1 / math.sqrt(3)) < 1e-9


def test_modulus_examples(l12):
    assert modulus_of_convexity(l12, 2) == 0
    assert modulus_of_convexity(l12, 0) == 0
    d = modulus_of_convexity(EuclideanNorm(2), 1.0)
    assert abs(d - (1 - math.sqrt(3) / 2)) <= 1e-9
    assert abs(oracle_modulus(EuclideanNorm(2), 1.0) - (1 - math.sqrt(3) / 2)) <= 1e-6


def test_convexity_profiles():
    prof = convexity_profile(l1_norm(2))
    assert prof.eps0 == 2 and all(d == 0 for d in prof.delta_values)
    prof = convexity_profile(EuclideanNorm(2), [0, 0.5, 1.0, 2.0])
    assert prof.eps0 == 0
    for e, d in zip(prof.epsilons, prof.delta_values):
        assert abs(d - (1 - math.sqrt(1 - e * e / 4))) <= 1e-9
    with pytest.raises(ValueError):
        convexity_profile(l1_norm(2), [3])


@pytest.mark.parametrize("norm", [icosahedron_norm(), hexagonal_bipyramid_norm(), linf_norm(3)])
def test_exact_modulus_is_below_sampled_upper_bound(norm):
    for eps in (F(1), F(3, 2), F(2)):
        exact = modulus_of_convexity(norm, eps)
        sampled = oracle_modulus(norm, eps, n=1000)
        assert float(exact) <= sampled + 1e-9
        assert sampled - float(exact) <= 0.05


def test_icosahedron_modulus_at_two():
    # frozen from the exact LP; the sampled oracle (ball vertices included) agrees
    assert modulus_of_convexity(icosahedron_norm(), 2) == F(309, 809)
    assert abs(oracle_modulus(icosahedron_norm(), 2, n=500) - 309 / 809) < 1e-12


@given(planar_norms())
def test_modulus_nondecreasing(norm):
    prof = convexity_profile(norm)
    assert all(a <= b for a, b in zip(prof.delta_values, prof.delta_values[1:]))
    assert all(d == 0 for e, d in zip(prof.epsilons, prof.delta_values) if e <= prof.eps0)
    assert 0 <= prof.eps0 <= 2


@given(planar_norms(), point_sets(2, 1, 6), points(2), st.fractions(-3, 3).filter(bool))
def test_diameter_invariances(norm, pts, t, lam):
    K = convex_hull(pts)
    D = diameter(norm, K).value
    assert diameter(norm, scale_translate(K, -1)).value == D
    assert diameter(norm, scale_translate(K, 1, t)).value == D
    assert diameter(norm, scale_translate(K, lam)).value == abs(lam) * D


@given(planar_norms(), point_sets(2, 2, 6))
def test_diameter_against_pair_enumeration(norm, pts):
    K = convex_hull(pts)
    ref = max(norm(tuple(a - b for a, b in zip(p, q))) for p in pts for q in pts)
    assert diameter(norm, K).value == ref
    assert abs(oracle_diameter(norm, K) - float(ref)) < 1e-9


@given(planar_norms(), point_sets(2, 1, 5), point_sets(2, 1, 3))
def test_width_monotone(norm, a, b):
    K = convex_hull(a)
    K2 = convex_hull(a + b)
    for f in dual_unit_functionals(norm):
        assert width(norm, K, f) <= width(norm, K2, f)


@given(planar_norms(), point_sets(2, 1, 6))
def test_max_width_is_diameter(norm, pts):
    K = convex_hull(pts)
    rep = width_report(norm, K)
    assert rep.max_width == rep.diameter
    assert rep.min_width <= rep.max_width


@given(planar_norms(), point_sets(2, 2, 6))
def test_min_width_over_critical_functionals(norm, pts):
    # the critical set contains the true minimiser: compare with a dense sample
    K = convex_hull(pts)
    rep = width_report(norm, K)
    ws, _ = oracle_widths(norm, K, directions=2000)
    assert float(rep.min_width) <= ws.min() + 1e-9
    crit = critical_functionals(norm, K)
    assert any(width(norm, K, f) == rep.min_width for f in crit)


@given(planar_norms(), point_sets(2, 2, 5))
def test_circumradius_bounds(norm, pts):
    K = convex_hull(pts)
    r, c = circumradius(norm, K)
    D = diameter(norm, K).value
    assert 2 * r >= D
    assert farthest_distance(norm, K, c) == r
    ro, _ = oracle_circumradius(norm, K)
    assert float(r) <= ro + 1e-9
