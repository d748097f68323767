"""Norms on R^2 / R^3 given by a unit ball.

Polytopal norms are exact: the gauge of a centrally symmetric polytope with
facets ``a_i . x <= 1`` is ``max_i a_i . x``.  The analytic norms (Euclidean
and the bicone ``|(p, z)| = sqrt(p1^2 + p2^2) + |z|``) evaluate in floating
point and are handled by the sampling routines elsewhere.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from widthlab._scalar import add, dot, fmt, fmt_vector, sign, to_scalar, to_vector
from widthlab.geometry import (DimensionError, GeometryError, Polytope,
                               contains, convex_hull, scale_translate)


class NormError(ValueError):
    pass


class DualFunctional(NamedTuple):
    """Linear functional ``x -> a . x``."""

    a: tuple
    dual_unit: bool = True

    def __call__(self, x):
        return dot(self.a, x)

    def to_json(self):
        return {"a": fmt_vector(self.a), "dual_unit": self.dual_unit}


class Norm:
    kind = "abstract"
    polytopal = False
    dim: int

    def __call__(self, x):
        raise NotImplementedError

    def dual_norm(self, g):
        raise NotImplementedError

    def is_extreme(self, u):
        raise NotImplementedError

    def to_json(self):
        return {"kind": self.kind, "dim": self.dim}

    def _check_dim(self, x):
        if np.shape(x)[-1] != self.dim:
            raise DimensionError(
                f"vector of dimension {np.shape(x)[-1]} for a norm on R^{self.dim}")


class PolytopalNorm(Norm):
    """Gauge of a centrally symmetric polytope containing 0 in its interior."""

    kind = "polytopal"
    polytopal = True

    def __init__(self, ball: Polytope, name=None):
        if not ball.is_full_dimensional:
            raise NormError("unit ball must be full-dimensional")
        if any(sign(h.b) <= 0 for h in ball.facets):
            raise NormError("unit ball must contain the origin in its interior")
        verts = set(ball.vertices)
        if any(tuple(-c for c in v) not in verts for v in verts):
            raise NormError("unit ball must be centrally symmetric")
        self.ball = ball
        self.dim = ball.dim
        self.name = name
        # facets are normalised to b == 1 because b > 0
        self.functionals = tuple(h.a for h in ball.facets)
        self._A = np.array([[float(c) for c in a] for a in self.functionals])

    def __call__(self, x):
        if isinstance(x, np.ndarray):
            self._check_dim(x)
            return np.max(x @ self._A.T, axis=-1)
        self._check_dim(x)
        return max(dot(a, x) for a in self.functionals)

    def dual_norm(self, g):
        return max(dot(g, v) for v in self.ball.vertices)

    def is_extreme(self, u):
        return tuple(u) in set(self.ball.vertices)

    def to_json(self):
        if self.name in ("l1", "linf"):
            return {"kind": self.name, "dim": self.dim}
        return {"kind": "polytopal", "ball": self.ball.to_json()}

    def __repr__(self):
        label = self.name or f"{len(self.ball.vertices)}-vertex ball"
        return f"PolytopalNorm({label}, dim={self.dim})"


class EuclideanNorm(Norm):
    kind = "l2"

    def __init__(self, dim):
        if dim not in (2, 3):
            raise DimensionError("dimension must be 2 or 3")
        self.dim = dim

    def __call__(self, x):
        self._check_dim(x)
        if isinstance(x, np.ndarray):
            return np.linalg.norm(x, axis=-1)
        return math.sqrt(sum(float(c) ** 2 for c in x))

    def dual_norm(self, g):
        return self(g)

    def is_extreme(self, u):
        return True

    def __repr__(self):
        return f"EuclideanNorm(dim={self.dim})"


class BiconeNorm(Norm):
    """Norm whose unit ball is the convex hull of the unit disc and +-e3."""

    kind = "bicone"
    dim = 3

    def __call__(self, x):
        self._check_dim(x)
        if isinstance(x, np.ndarray):
            return np.hypot(x[..., 0], x[..., 1]) + np.abs(x[..., 2])
        return math.hypot(float(x[0]), float(x[1])) + abs(float(x[2]))

    def dual_norm(self, g):
        if isinstance(g, np.ndarray):
            return np.maximum(np.hypot(g[..., 0], g[..., 1]), np.abs(g[..., 2]))
        return max(math.hypot(float(g[0]), float(g[1])), abs(float(g[2])))

    def is_extreme(self, u):
        tol = 1e-9
        return abs(math.hypot(float(u[0]), float(u[1]))) <= tol or abs(float(u[2])) <= tol

    def __repr__(self):
        return "BiconeNorm()"


# ---------------------------------------------------------------------------
# constructors


def l1_norm(dim):
    verts = []
    for i in range(dim):
        for s in (1, -1):
            v = [0] * dim
            v[i] = s
            verts.append(tuple(v))
    return PolytopalNorm(convex_hull(verts), name="l1")


def linf_norm(dim):
    return PolytopalNorm(convex_hull(list(itertools.product((1, -1), repeat=dim))),
                         name="linf")


def hexagonal_bipyramid_norm():
    """Bipyramid with apexes +-e3 over an affinely regular hexagon.

    The hexagon (1,0), (0,1), (-1,1), (-1,0), (0,-1), (1,-1) is a linear
    image of the regular one, so the norm is isometric to the regular case
    and stays rational.
    """
    hexagon = [(1, 0, 0), (0, 1, 0), (-1, 1, 0), (-1, 0, 0), (0, -1, 0), (1, -1, 0)]
    return PolytopalNorm(convex_hull(hexagon + [(0, 0, 1), (0, 0, -1)]),
                         name="hexagonal_bipyramid")


def icosahedron_norm(phi=Fraction(809, 500)):
    """Icosahedral ball with vertices cyclic permutations of (0, +-1, +-phi).

    The golden ratio is replaced by a rational value, so the default
    ``phi = 1.618`` gives a slightly perturbed (but still centrally
    symmetric, 20-faced) icosahedron.  The ball is rescaled so that
    the vertices have norm one automatically.
    """
    phi = Fraction(phi)
    verts = []
    for s1 in (1, -1):
        for s2 in (1, -1):
            base = (0, s1, s2 * phi)
            for k in range(3):
                verts.append(tuple(base[(i - k) % 3] for i in range(3)))
    return PolytopalNorm(convex_hull(verts), name="icosahedron")


def make_norm(kind, dim=None, ball=None):
    if kind == "l1":
        return l1_norm(dim)
    if kind == "linf":
        return linf_norm(dim)
    if kind == "l2":
        return EuclideanNorm(dim)
    if kind == "bicone":
        if dim not in (None, 3):
            raise DimensionError("the bicone norm lives in dimension 3")
        return BiconeNorm()
    if kind == "hexagonal_bipyramid":
        return hexagonal_bipyramid_norm()
    if kind == "icosahedron":
        return icosahedron_norm()
    if kind == "polytopal":
        if ball is None:
            raise NormError("polytopal norm needs a ball")
        return PolytopalNorm(ball)
    raise NormError(f"unknown norm kind {kind!r}")


def norm_from_json(data, exact=True):
    kind = data.get("kind")
    if kind == "polytopal":
        return PolytopalNorm(Polytope.from_json(data["ball"], exact=exact),
                             name=data.get("name"))
    return make_norm(kind, data.get("dim"))


# ---------------------------------------------------------------------------
# balls and functionals


@dataclass(frozen=True)
class Ball:
    center: tuple
    radius: object
    norm: Norm = field(repr=False)
    materialized: Polytope | None = None

    def contains(self, x):
        if self.materialized is not None:
            return contains(self.materialized, x)
        d = self.norm(tuple(float(a) - float(b) for a, b in zip(x, self.center)))
        return d <= float(self.radius) + 1e-9


def make_ball(norm: Norm, center, radius) -> Ball:
    if sign(radius) < 0:
        raise NormError("radius must be nonnegative")
    if len(center) != norm.dim:
        raise DimensionError("center has wrong dimension")
    center = tuple(center)
    poly = None
    if norm.polytopal:
        poly = scale_translate(norm.ball, radius, center)
    return Ball(center, radius, norm, poly)


def sphere_directions(dim, n):
    """Deterministic, roughly uniform Euclidean unit directions."""
    if dim == 2:
        t = 2 * np.pi * np.arange(n) / n
        return np.stack([np.cos(t), np.sin(t)], axis=1)
    k = np.arange(n) + 0.5
    z = 1 - 2 * k / n
    r = np.sqrt(np.maximum(0.0, 1 - z * z))
    golden = np.pi * (3 - np.sqrt(5))
    t = golden * k
    return np.stack([r * np.cos(t), r * np.sin(t), z], axis=1)


def default_sample_count(dim):
    return 720 if dim == 2 else 2562


def dual_unit_functionals(norm: Norm, n=None):
    """Functionals of dual norm one.

    Polytopal norms: the facet normals of the unit ball, i.e. the extreme
    points of the dual ball.  Analytic norms: ``n`` sampled directions
    rescaled to dual norm one.
    """
    if norm.polytopal:
        return [DualFunctional(a) for a in norm.functionals]
    n = n or default_sample_count(norm.dim)
    dirs = sphere_directions(norm.dim, n)
    out = []
    for g in dirs:
        s = float(norm.dual_norm(g))
        out.append(DualFunctional(tuple(float(c) / s for c in g)))
    return out


def is_dual_unit(norm: Norm, f) -> bool:
    a = f.a if isinstance(f, DualFunctional) else tuple(f)
    val = norm.dual_norm(a)
    if norm.polytopal:
        return sign(val - 1) == 0
    return abs(val - 1) <= 1e-9


def is_unit_ball_vertex(norm: Norm, u) -> bool:
    """True iff ``u`` (a unit vector) is an extreme point of the unit ball."""
    val = norm(tuple(u))
    if norm.polytopal:
        if sign(val - 1) != 0:
            raise NormError("u must have norm one")
    elif abs(val - 1) > 1e-9:
        raise NormError("u must have norm one")
    return norm.is_extreme(u)


def unit_boundary_point(norm: Norm, direction):
    """The point of the unit sphere on the ray through ``direction``."""
    s = norm(direction)
    if norm.polytopal and not isinstance(direction, np.ndarray):
        return tuple(c / s for c in direction)
    return np.asarray(direction, dtype=float) / s
