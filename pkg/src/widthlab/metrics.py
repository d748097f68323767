"""Diameter, widths, circumradius and the modulus of convexity."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from widthlab._scalar import cross, dot, fmt, fmt_vector, is_exact, sign, sub
from widthlab.geometry import (GeometryError, Polytope, as_polytope, minkowski_sum,
                               rank, scale_translate)
from widthlab.lp import linprog
from widthlab.norms import (DualFunctional, Norm, NormError, dual_unit_functionals,
                            is_dual_unit, sphere_directions)

log = logging.getLogger(__name__)


class Diameter(NamedTuple):
    value: object
    witness: tuple

    def to_json(self):
        return {"diam": fmt(self.value),
                "witness": [fmt_vector(p) for p in self.witness]}


def diameter(norm: Norm, K) -> Diameter:
    """Largest distance between two points of ``K``, with the attaining pair.

    The supremum over a polytope is attained at a pair of vertices.  For
    polytopal norms it is computed as the largest width over the facet
    normals of the unit ball, which avoids the quadratic pair loop; the
    witness is the lexicographically smallest attaining pair.
    """
    K = as_polytope(K)
    verts = K.vertices
    if len(verts) == 1:
        log.warning("diameter of a singleton is zero")
        return Diameter(verts[0][0] * 0, (verts[0], verts[0]))
    if norm.polytopal:
        best, pairs = None, []
        for a in norm.functionals:
            vals = [dot(a, v) for v in verts]
            hi, lo = max(vals), min(vals)
            w = hi - lo
            if best is None or sign(w - best) > 0:
                best, pairs = w, []
            if sign(w - best) == 0:
                highs = [v for v, t in zip(verts, vals) if sign(t - hi) == 0]
                lows = [v for v, t in zip(verts, vals) if sign(t - lo) == 0]
                pairs.extend(tuple(sorted((p, q))) for p in lows for q in highs)
        return Diameter(best, min(pairs))
    X = np.array([[float(c) for c in v] for v in verts])
    D = norm(X[:, None, :] - X[None, :, :])
    i, j = np.unravel_index(np.argmax(D), D.shape)
    p, q = sorted((verts[i], verts[j]))
    return Diameter(float(D[i, j]), (p, q))


def farthest_distance(norm: Norm, K, x):
    """``sup {|x - a| : a in K}``, the radius of the smallest ball at ``x`` covering K."""
    K = as_polytope(K)
    return max(norm(sub(x, v)) for v in K.vertices)


def width(norm: Norm, K, f) -> object:
    """``sup f(K) - inf f(K)`` for a functional of dual norm one."""
    K = as_polytope(K)
    if not isinstance(f, DualFunctional):
        f = DualFunctional(tuple(f))
    if not is_dual_unit(norm, f):
        raise NormError("functional does not have dual norm one")
    vals = [f(v) for v in K.vertices]
    return max(vals) - min(vals)


# ---------------------------------------------------------------------------
# width report


def _facet_vertex_sets(P):
    return [frozenset(v for v in P.vertices if sign(h.evaluate(v)) == 0)
            for h in P.facets]


def _edge_directions(P):
    """Directions of the edges of a full-dimensional 3-polytope."""
    inc = _facet_vertex_sets(P)
    dirs = []
    for i in range(len(inc)):
        for j in range(i + 1, len(inc)):
            if len(inc[i] & inc[j]) >= 2:
                d = cross(P.facets[i].a, P.facets[j].a)
                if any(sign(c) for c in d):
                    dirs.append(d)
    return dirs


def _normalise_functional(norm, g):
    s = norm.dual_norm(g)
    if sign(s) <= 0:
        return None
    g = tuple(c / s for c in g)
    # canonical sign: width is invariant under f -> -f
    first = next(c for c in g if sign(c))
    return g if sign(first) > 0 else tuple(-c for c in g)


def critical_functionals(norm: Norm, K) -> list:
    """Finite set of dual-unit functionals containing a minimiser of the width.

    The width ``f -> h_{K-K}(f)`` and the dual norm are both piecewise
    linear; the ratio is minimised at a ray of the common refinement of the
    two normal fans.  Those rays are the facet normals of the unit ball,
    the facet normals of ``K - K`` and (in 3D) the cross products of an
    edge direction of each.  The facet normals of the unit ball alone also
    give the maximum, which is the diameter.
    """
    K = as_polytope(K)
    D = minkowski_sum(K, scale_translate(K, -1))
    raw = list(norm.functionals)
    if D.is_full_dimensional:
        raw.extend(h.a for h in D.facets)
        if norm.dim == 3:
            eb = _edge_directions(norm.ball)
            ed = _edge_directions(D)
            raw.extend(cross(p, q) for p in eb for q in ed)
    else:
        # K - K is flat: any functional vanishing on its span has width 0
        raw.extend(h.a for h in D.facets)
    seen = {}
    for g in raw:
        if not any(sign(c) for c in g):
            continue
        f = _normalise_functional(norm, g)
        if f is not None:
            seen.setdefault(f, None)
    return [DualFunctional(f) for f in sorted(seen)]


@dataclass
class WidthReport:
    widths: list = field(repr=False)
    min_width: object
    max_width: object
    diameter: object
    diameter_witness: tuple
    min_witness: DualFunctional
    exact: bool = True

    def to_json(self):
        return {
            "diam": fmt(self.diameter),
            "min_width": fmt(self.min_width),
            "max_width": fmt(self.max_width),
            "min_width_functional": fmt_vector(self.min_witness.a),
            "diameter_witness": [fmt_vector(p) for p in self.diameter_witness],
            "exact": self.exact,
            "widths": [{"f": fmt_vector(f.a), "w": fmt(w)} for f, w in self.widths],
        }


def width_report(norm: Norm, K, n=None) -> WidthReport:
    """Widths of ``K`` over a set of dual-unit functionals.

    Polytopal norms use :func:`critical_functionals`, so ``min_width`` and
    ``max_width`` are exact.  Analytic norms use ``n`` sampled functionals.
    """
    K = as_polytope(K)
    diam = diameter(norm, K)
    if norm.polytopal:
        funcs = critical_functionals(norm, K)
    else:
        funcs = dual_unit_functionals(norm, n)
    widths = []
    for f in funcs:
        vals = [f(v) for v in K.vertices]
        widths.append((f, max(vals) - min(vals)))
    fmin, wmin = min(widths, key=lambda t: (t[1], t[0].a))
    wmax = max(w for _, w in widths)
    if norm.polytopal and wmax != diam.value:
        raise AssertionError("largest width differs from the diameter")
    return WidthReport(widths, wmin, wmax, diam.value, diam.witness, fmin,
                       exact=norm.polytopal)


# ---------------------------------------------------------------------------
# circumradius


def circumradius(norm: Norm, K):
    """Smallest radius of a ball containing ``K``; returns ``(radius, center)``.

    For a polytopal norm this is the linear program
    ``min r  s.t.  a_i . (x - v) <= r`` over ball facets ``a_i`` and
    vertices ``v`` of K, solved exactly.
    """
    K = as_polytope(K)
    d = K.dim
    if norm.polytopal and K.exact:
        A, b = [], []
        for v in K.vertices:
            for a in norm.functionals:
                A.append(list(a) + [-1])
                b.append(dot(a, v))
        res = linprog([0] * d + [1], A, b)
        if not res.success:
            raise GeometryError(f"circumradius LP failed: {res.status}")
        return res.x[d], tuple(res.x[:d])
    from scipy.optimize import minimize

    X = np.array([[float(c) for c in v] for v in K.vertices])

    def objective(x):
        return float(np.max(norm(X - x)))

    x0 = X.mean(axis=0)
    res = minimize(objective, x0, method="Nelder-Mead",
                   options={"xatol": 1e-12, "fatol": 1e-12, "maxiter": 20000})
    return float(res.fun), tuple(float(c) for c in res.x)


# ---------------------------------------------------------------------------
# modulus of convexity


@dataclass
class ConvexityProfile:
    epsilons: list
    delta_values: list
    eps0: object
    method: str

    def to_json(self):
        return {"epsilons": [fmt(e) for e in self.epsilons],
                "delta": [fmt(d) for d in self.delta_values],
                "eps0": fmt(self.eps0), "method": self.method}


def _representatives(vectors):
    """One vector out of each pair {a, -a}."""
    out, seen = [], set()
    for a in vectors:
        neg = tuple(-c for c in a)
        if neg in seen:
            continue
        seen.add(a)
        out.append(a)
    return out


def modulus_exact(norm: Norm, eps) -> Fraction:
    """``delta(eps)`` for a polytopal norm, by linear programming.

    ``|x - y| >= eps`` holds iff ``a_j . (x - y) >= eps`` for some facet
    normal ``a_j``, and ``|(x + y)/2| = max_i a_i . (x + y)/2``, so the
    infimum splits into one LP per pair ``(i, j)``.  Central symmetry and
    the swap ``x <-> y`` let both indices range over one normal of each
    opposite pair.
    """
    eps = Fraction(eps)
    if eps < 0 or eps > 2:
        raise ValueError("eps must lie in [0, 2]")
    if eps == 0:
        return Fraction(0)
    d = norm.dim
    A = []
    for a in norm.functionals:
        A.append(list(a) + [0] * d)
        A.append([0] * d + list(a))
    b = [1] * len(A)
    reps = _representatives(norm.functionals)
    best = None
    for aj in reps:
        row = [-c for c in aj] + list(aj)
        for ai in reps:
            res = linprog([c / 2 for c in ai] * 2, A + [row], b + [-eps],
                          maximize=True)
            if res.success and (best is None or res.fun > best):
                best = res.fun
                if best == 1:
                    return Fraction(0)
    if best is None:
        raise ValueError(f"no pair of unit vectors at distance {eps}")
    return 1 - best


def _modulus_sampled_2d(norm, eps, n=720):
    from scipy.optimize import brentq, minimize_scalar

    def point(t):
        v = np.array([math.cos(t), math.sin(t)])
        return v / float(norm(v))

    def value(theta):
        x = point(theta)

        def chord(s):
            return float(norm(x - point(theta + s))) - eps

        s = math.pi if chord(math.pi) <= 0 else brentq(
            chord, 0.0, math.pi, xtol=1e-15, rtol=1e-15)
        y = point(theta + s)
        return 1.0 - float(norm((x + y) / 2))

    thetas = 2 * math.pi * np.arange(n) / n
    vals = [value(t) for t in thetas]
    k = int(np.argmin(vals))
    step = 2 * math.pi / n
    res = minimize_scalar(value, bounds=(thetas[k] - step, thetas[k] + step),
                          method="bounded", options={"xatol": 1e-12})
    return min(vals[k], float(res.fun))


def _modulus_sampled_3d(norm, eps, n=400, m=36):
    from scipy.optimize import brentq

    best = math.inf
    for x in sphere_directions(3, n):
        x = x / float(norm(x))
        helper = np.array([1.0, 0, 0]) if abs(x[0]) < 0.9 else np.array([0, 1.0, 0])
        e1 = np.cross(x, helper)
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(x, e1)
        e2 /= np.linalg.norm(e2)
        for phi in np.linspace(0, 2 * math.pi, m, endpoint=False):
            w = math.cos(phi) * e1 + math.sin(phi) * e2
            xe = x / np.linalg.norm(x)

            def point(s):
                v = math.cos(s) * xe + math.sin(s) * w
                return v / float(norm(v))

            def chord(s):
                return float(norm(x - point(s))) - eps

            if chord(math.pi) < -1e-12:
                continue
            s = math.pi if chord(math.pi) <= 0 else brentq(
                chord, 0.0, math.pi, xtol=1e-13)
            y = point(s)
            best = min(best, 1.0 - float(norm((x + y) / 2)))
    return best


def modulus_of_convexity(norm: Norm, eps):
    if norm.polytopal:
        return modulus_exact(norm, eps)
    eps = float(eps)
    if eps < 0 or eps > 2:
        raise ValueError("eps must lie in [0, 2]")
    if eps == 0:
        return 0.0
    if norm.dim == 2:
        return _modulus_sampled_2d(norm, eps)
    return _modulus_sampled_3d(norm, eps)


def default_eps_grid():
    return [Fraction(k, 4) for k in range(9)]


def convexity_profile(norm: Norm, eps_grid=None, tol=1e-9) -> ConvexityProfile:
    """Modulus of convexity on a grid and the characteristic ``eps0``.

    ``eps0`` is the largest grid value where the modulus vanishes (exactly
    for polytopal norms, within ``tol`` otherwise).
    """
    grid = sorted(eps_grid or default_eps_grid())
    for e in grid:
        if e < 0 or e > 2:
            raise ValueError("eps must lie in [0, 2]")
    deltas = [modulus_of_convexity(norm, e) for e in grid]
    if norm.polytopal:
        zeros = [e for e, dv in zip(grid, deltas) if dv == 0]
        method = "exact-lp"
    else:
        zeros = [e for e, dv in zip(grid, deltas) if abs(dv) <= tol]
        method = "sampled-2d" if norm.dim == 2 else "sampled-estimate-3d"
    eps0 = max(zeros) if zeros else grid[0]
    return ConvexityProfile(list(grid), deltas, eps0, method)
