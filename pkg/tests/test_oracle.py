import math

import numpy as np
import pytest

from widthlab.geometry import convex_hull
from widthlab.norms import EuclideanNorm, icosahedron_norm, l1_norm, linf_norm, make_ball
from widthlab.oracle import (MAX_GRID_POINTS, GridSpec, bounding_grid, oracle_circumradius,
                             oracle_constant_width, oracle_diameter, oracle_gauge,
                             oracle_membership_eta, oracle_modulus, oracle_widths)

TETRA = [(-1, -1, -1), (1, 1, -1), (1, -1, 1), (-1, 1, 1)]


def test_grid_validation():
    with pytest.raises(ValueError):
        GridSpec(((0, 1),), resolution=2)
    with pytest.raises(ValueError):
        GridSpec(resolution=5).points()


def test_grid_is_deterministic_and_capped():
    g = GridSpec(((0.0, 1.0), (0.0, 1.0), (0.0, 1.0)), resolution=500, seed=3)
    assert g.axis_resolution(3) ** 3 <= MAX_GRID_POINTS
    P, Q = g.points(), g.points()
    assert np.array_equal(P, Q)
    assert not np.array_equal(P, GridSpec(g.bounds, 500, seed=4).points())


def test_grid_jitter_is_bounded():
    g = GridSpec(((0.0, 2.0), (0.0, 2.0)), resolution=5)
    base = GridSpec(g.bounds, 5, jitter=False).points()
    assert np.max(np.abs(g.points() - base)) <= 0.25 * g.spacing() + 1e-12


def test_bounding_grid_pads():
    g = bounding_grid([(0, 0), (1, 2)], 11, pad=0.5)
    assert g.bounds == ((-0.5, 1.5), (-0.5, 2.5))


def test_gauge_matches_norm():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(50, 3))
    for norm, ref in [(l1_norm(3), lambda X: np.abs(X).sum(axis=1)),
                      (linf_norm(3), lambda X: np.abs(X).max(axis=1))]:
        g = oracle_gauge(norm)
        assert np.allclose(g(X), ref(X))
    assert np.allclose(oracle_gauge(l1_norm(3)).dual(X), np.abs(X).max(axis=1))


def test_tetrahedron_oracles():
    n = l1_norm(3)
    assert oracle_diameter(n, TETRA) == 4.0
    assert not oracle_constant_width(n, TETRA)
    w, G = oracle_widths(n, TETRA)
    assert abs(w.min() - 2) <= 1e-9
    r, c = oracle_circumradius(n, convex_hull(TETRA))
    assert abs(r - 3) <= 1e-9 and np.allclose(c, 0)


def test_l1_segment_membership():
    n = l1_norm(2)
    seg = [(-1, 0), (1, 0)]
    assert oracle_membership_eta(n, seg, (0, 1))
    assert not oracle_membership_eta(n, seg, (0, 1.01))
    assert list(oracle_membership_eta(n, seg, [(0, 0), (2, 0)])) == [True, False]


def test_euclidean_ball_diameter():
    n = EuclideanNorm(2)
    d = oracle_diameter(n, make_ball(n, (0, 0), 1))
    assert 1.999 < d <= 2.0


def test_reuleaux_triangle_constant_width():
    n = EuclideanNorm(2)
    verts = np.array([(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)])
    arcs = []
    for i in range(3):
        c = verts[i]
        a, b = verts[(i + 1) % 3] - c, verts[(i + 2) % 3] - c
        t0, t1 = math.atan2(a[1], a[0]), math.atan2(b[1], b[0])
        if t1 < t0:
            t1 += 2 * math.pi
        t = np.linspace(t0, t1, 400)
        arcs.append(c + np.stack([np.cos(t), np.sin(t)], axis=1))
    pts = np.vstack(arcs)
    assert oracle_constant_width(n, pts, tol=1e-3)
    assert not oracle_constant_width(n, verts, tol=1e-3)


def test_modulus_oracle():
    assert oracle_modulus(l1_norm(2), 2) == pytest.approx(0, abs=1e-12)
    assert oracle_modulus(EuclideanNorm(2), 1) == pytest.approx(1 - math.sqrt(3) / 2, abs=1e-5)
    assert oracle_modulus(icosahedron_norm(), 2, n=500) == pytest.approx(309 / 809, abs=1e-9)
