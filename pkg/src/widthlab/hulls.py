"""Wide and tight spherical hulls.

For a body ``K`` of diameter ``D`` the wide hull is the intersection of the
balls ``B(x, D)`` over ``x`` in K, and the tight hull is the intersection of
the balls ``B(x, D)`` over ``x`` in the wide hull.  Both radii are ``D`` =
diam K; in particular the tight hull does *not* use the diameter of the
wide hull.  For a polytopal norm both are polytopes: the distance to a
polytope is maximised at a vertex, so only vertex-centred balls are needed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from widthlab._scalar import dot, fmt, fmt_vector
from widthlab.geometry import Halfspace, Polytope, as_polytope, intersect_halfspaces
from widthlab.metrics import diameter
from widthlab.norms import Norm, NormError, sphere_directions

WIDE = "wide"
TIGHT = "tight"


class AnalyticNormError(NormError):
    """Raised when an exact polytope is requested for a non-polytopal norm."""


@dataclass
class HullResult:
    hull: Polytope
    base_diameter: object
    kind: str
    provenance: dict = field(default_factory=dict, repr=False)

    def to_json(self):
        facets = []
        for h in self.hull.facets:
            entry = h.to_json()
            if h in self.provenance:
                entry["center"] = fmt_vector(self.provenance[h])
            facets.append(entry)
        out = self.hull.to_json()
        out["facets"] = facets
        return {"kind": self.kind, "base_diameter": fmt(self.base_diameter),
                "hull": out}


def ball_intersection(norm: Norm, centers, radius, interior=None):
    """Exact intersection of ``B(c, radius)`` over the given centres.

    Returns ``(polytope, provenance)`` where provenance maps each facet to
    the centre whose ball contributed it.
    """
    if not norm.polytopal:
        raise AnalyticNormError(
            f"{norm!r} is not polytopal; use sampled_wide_hull/sampled_tight_hull")
    hs, origin = [], {}
    for c in centers:
        for a in norm.functionals:
            h = Halfspace(a, radius + dot(a, c))
            hs.append(h)
            origin.setdefault(h.normalized(), c)
    P = intersect_halfspaces(hs, dim=norm.dim, interior=interior)
    return P, {h: origin[h] for h in P.facets if h in origin}


def wide_spherical_hull(norm: Norm, K) -> HullResult:
    K = as_polytope(K)
    D = diameter(norm, K).value
    # the vertex centroid is strictly inside every ball B(v, D)
    P, prov = ball_intersection(norm, K.vertices, D, interior=K.centroid())
    return HullResult(P, D, WIDE, prov)


def tight_spherical_hull(norm: Norm, K, wide: HullResult | None = None) -> HullResult:
    K = as_polytope(K)
    if wide is None:
        wide = wide_spherical_hull(norm, K)
    D = wide.base_diameter
    P, prov = ball_intersection(norm, wide.hull.vertices, D, interior=K.centroid())
    return HullResult(P, D, TIGHT, prov)


# ---------------------------------------------------------------------------
# sampled hulls for analytic norms


def default_boundary_count(dim):
    return 8000 if dim == 2 else 2562


@dataclass
class SampledHull:
    """Boundary samples of an intersection of equal-radius balls.

    ``centers`` is the (finite) set of ball centres and ``radius`` their
    common radius.  ``boundary`` holds points found by radial bisection from
    ``origin``; ``anchors`` are extra points known to lie in the set (the
    vertices of the generating body), included in diameter estimates.
    """

    norm: Norm = field(repr=False)
    centers: np.ndarray = field(repr=False)
    radius: float
    origin: np.ndarray
    boundary: np.ndarray = field(repr=False)
    anchors: np.ndarray = field(repr=False)
    kind: str = WIDE

    def gap(self, X):
        """``max_c |x - c| - radius``; nonpositive exactly on the set."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        out = np.empty(len(X))
        for s in range(0, len(X), 2048):
            chunk = X[s:s + 2048]
            d = self.norm(chunk[:, None, :] - self.centers[None, :, :])
            out[s:s + 2048] = d.max(axis=1) - self.radius
        return out

    def contains(self, x, tol=1e-9):
        return bool(self.gap(x)[0] <= tol)

    def points(self):
        return np.vstack([self.boundary, self.anchors])

    def diameter(self):
        """Largest pairwise distance among the samples; ``(value, (p, q))``."""
        X = self.points()
        best, pair = -1.0, (0, 0)
        for s in range(0, len(X), 512):
            d = self.norm(X[s:s + 512, None, :] - X[None, :, :])
            k = int(np.argmax(d))
            i, j = divmod(k, len(X))
            if d[i, j] > best:
                best, pair = float(d[i, j]), (s + i, j)
        return best, (X[pair[0]], X[pair[1]])

    def widths(self, functionals):
        A = np.array([f.a for f in functionals], dtype=float)
        vals = self.points() @ A.T
        return vals.max(axis=0) - vals.min(axis=0)

    def radial_deviation(self, center, radius):
        """Largest ``| |p - center| - radius |`` over the boundary samples."""
        d = self.norm(self.boundary - np.asarray(center, dtype=float))
        return float(np.max(np.abs(d - radius)))


def _radial_boundary(gap, origin, dirs, iters=64):
    if np.any(gap(origin[None, :]) >= 0):
        raise ValueError("origin is not strictly inside the sampled set")
    lo = np.zeros(len(dirs))
    hi = np.ones(len(dirs))
    for _ in range(200):
        out = gap(origin + hi[:, None] * dirs) > 0
        if out.all():
            break
        hi = np.where(out, hi, 2 * hi)
    for _ in range(iters):
        mid = (lo + hi) / 2
        inside = gap(origin + mid[:, None] * dirs) <= 0
        lo = np.where(inside, mid, lo)
        hi = np.where(inside, hi, mid)
    return origin + lo[:, None] * dirs


def _float_vertices(K):
    return np.array([[float(c) for c in v] for v in K.vertices])


def sampled_wide_hull(norm: Norm, K, n=None) -> SampledHull:
    K = as_polytope(K)
    n = n or default_boundary_count(norm.dim)
    V = _float_vertices(K)
    D = float(diameter(norm, K).value)
    origin = V.mean(axis=0)
    H = SampledHull(norm, V, D, origin, np.empty((0, norm.dim)), V, WIDE)
    H.boundary = _radial_boundary(H.gap, origin, sphere_directions(norm.dim, n))
    return H


def sampled_tight_hull(norm: Norm, K, n=None, wide: SampledHull | None = None) -> SampledHull:
    """Tight hull with the wide hull replaced by its boundary samples.

    The distance to a convex set is maximised on its boundary, so the
    sampled centres approximate the full family from inside.
    """
    K = as_polytope(K)
    if wide is None:
        wide = sampled_wide_hull(norm, K, n=n or (720 if norm.dim == 2 else 1000))
    n = n or (720 if norm.dim == 2 else 1000)
    centers = np.vstack([wide.boundary, wide.anchors])
    H = SampledHull(norm, centers, wide.radius, wide.origin,
                    np.empty((0, norm.dim)), wide.anchors, TIGHT)
    H.boundary = _radial_boundary(H.gap, wide.origin, sphere_directions(norm.dim, n))
    return H
