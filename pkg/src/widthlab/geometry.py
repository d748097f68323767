"""Exact convex polytopes in dimension 2 and 3.

A :class:`Polytope` always carries both representations: the extreme
points (sorted lexicographically) and an irredundant list of normalised
facet inequalities ``a . x <= b``.  Lower-dimensional polytopes (points,
segments, polygons in space) are ordinary values; their affine hull is
encoded in the H-representation as pairs of opposite inequalities.

Coordinates are :class:`fractions.Fraction` in exact mode.  Float
coordinates are accepted too, in which case every predicate compares
against the global tolerance from :mod:`widthlab._scalar`.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from widthlab._scalar import (add, cross, dot, fmt, fmt_vector, is_exact,
                              scale, sign, sub, to_scalar, to_vector)
from widthlab.lp import linprog


class GeometryError(ValueError):
    pass


class DimensionError(GeometryError):
    pass


class EmptyIntersectionError(GeometryError):
    pass


class UnboundedError(GeometryError):
    pass


class Halfspace(NamedTuple):
    """The set ``{x : a . x <= b}``."""

    a: tuple
    b: object

    def normalized(self):
        a, b = self.a, self.b
        if all(sign(c) == 0 for c in a):
            raise GeometryError("halfspace normal must be nonzero")
        if sign(b) > 0:
            k = b
        else:
            k = max(abs(c) for c in a)
        if is_exact(k):
            k = Fraction(k)
        return Halfspace(tuple(c / k for c in a), b / k)

    def evaluate(self, x):
        return dot(self.a, x) - self.b

    def to_json(self):
        return {"a": fmt_vector(self.a), "b": fmt(self.b)}


def _coerce(v):
    """Rational coordinates become Fractions so that division stays exact."""
    return tuple(Fraction(c) if is_exact(c) else c for c in v)


class Polytope:
    """Bounded convex polytope with synchronised V- and H-representations.

    Build instances with :func:`convex_hull` or :func:`intersect_halfspaces`;
    the constructor trusts its arguments.
    """

    __slots__ = ("vertices", "facets", "dim", "affine_dim")

    def __init__(self, vertices, facets, dim, affine_dim):
        self.vertices = tuple(sorted(tuple(v) for v in vertices))
        self.facets = tuple(sorted({h.normalized() for h in facets}))
        self.dim = dim
        self.affine_dim = affine_dim

    @property
    def is_full_dimensional(self):
        return self.affine_dim == self.dim

    @property
    def is_degenerate(self):
        return self.affine_dim < self.dim

    @property
    def exact(self):
        return all(is_exact(c) for v in self.vertices for c in v)

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return equal(self, other)

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        verts = ", ".join("(" + ", ".join(str(c) for c in v) + ")"
                          for v in self.vertices[:6])
        more = ", ..." if len(self.vertices) > 6 else ""
        return (f"Polytope(dim={self.dim}, affine_dim={self.affine_dim}, "
                f"vertices=[{verts}{more}])")

    def centroid(self):
        n = len(self.vertices)
        return tuple(sum(c) / n for c in zip(*self.vertices))

    def cyclic_vertices(self):
        """Vertices of a full-dimensional polygon in counter-clockwise order."""
        if self.dim != 2:
            raise DimensionError("cyclic order is only defined for polygons")
        if self.affine_dim < 2:
            return list(self.vertices)
        return _monotone_chain(list(self.vertices))

    def to_json(self):
        return {
            "dim": self.dim,
            "vertices": [fmt_vector(v) for v in self.vertices],
            "facets": [h.to_json() for h in self.facets],
        }

    @classmethod
    def from_json(cls, data, exact=True):
        if "vertices" in data and data["vertices"]:
            return convex_hull([to_vector(v, exact) for v in data["vertices"]])
        hs = [Halfspace(to_vector(f["a"], exact), to_scalar(f["b"], exact))
              for f in data["facets"]]
        return intersect_halfspaces(hs, dim=data.get("dim"))


# ---------------------------------------------------------------------------
# linear algebra helpers


def _orient2(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _orient3(a, b, c, d):
    return dot(cross(sub(b, a), sub(c, a)), sub(d, a))


def rank(vectors):
    """Rank of a list of vectors, by exact (or tolerant) elimination."""
    rows = [list(_coerce(v)) for v in vectors]
    if not rows:
        return 0
    ncol = len(rows[0])
    r = 0
    for col in range(ncol):
        piv = None
        best = None
        for i in range(r, len(rows)):
            if sign(rows[i][col]) != 0:
                if best is None or abs(rows[i][col]) > best:
                    piv, best = i, abs(rows[i][col])
                    if is_exact(rows[i][col]):
                        break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        for i in range(r + 1, len(rows)):
            f = rows[i][col] / p
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def solve_linear(A, b):
    """Solve a square system exactly; returns None if singular."""
    n = len(A)
    M = [list(_coerce(list(row) + [bi])) for row, bi in zip(A, b)]
    for col in range(n):
        piv = None
        best = None
        for i in range(col, n):
            if sign(M[i][col]) != 0:
                if best is None or abs(M[i][col]) > best:
                    piv, best = i, abs(M[i][col])
                    if is_exact(M[i][col]):
                        break
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for i in range(n):
            if i != col and M[i][col]:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[col])]
    return tuple(row[-1] for row in M)


def nullspace(vectors, d):
    """A basis of the orthogonal complement of ``span(vectors)`` in R^d."""
    rows = [list(_coerce(v)) for v in vectors]
    pivots = []
    r = 0
    for col in range(d):
        piv = next((i for i in range(r, len(rows)) if sign(rows[i][col])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    one = Fraction(1) if all(is_exact(x) for row in rows for x in row) else 1.0
    basis = []
    for free in (c for c in range(d) if c not in pivots):
        v = [0 * one] * d
        v[free] = one
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][free]
        basis.append(tuple(v))
    return basis


# ---------------------------------------------------------------------------
# convex hull


def _dedupe(points):
    pts = sorted(set(tuple(p) for p in points))
    if pts and not is_exact(pts[0][0]):
        out = []
        for p in pts:
            if not any(all(sign(a - b) == 0 for a, b in zip(p, q)) for q in out):
                out.append(p)
        pts = out
    return pts


def _monotone_chain(pts):
    """Counter-clockwise hull of 2D points, collinear points dropped."""
    pts = sorted(pts)
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and sign(_orient2(lower[-2], lower[-1], p)) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and sign(_orient2(upper[-2], upper[-1], p)) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _polygon_facets(cyc):
    facets = []
    n = len(cyc)
    for i in range(n):
        p, q = cyc[i], cyc[(i + 1) % n]
        # outward normal of a counter-clockwise edge p -> q
        a = (q[1] - p[1], p[0] - q[0])
        facets.append(Halfspace(a, dot(a, p)))
    return facets


def _hull3d(pts):
    """Incremental 3D hull.  Returns (vertices, facets) of a full-dim body."""
    p0 = pts[0]
    i1 = next(i for i, p in enumerate(pts) if p != p0)
    p1 = pts[i1]
    i2 = next(i for i, p in enumerate(pts)
              if any(sign(c) for c in cross(sub(p1, p0), sub(p, p0))))
    p2 = pts[i2]
    i3 = next(i for i, p in enumerate(pts) if sign(_orient3(p0, p1, p2, p)))
    p3 = pts[i3]
    init = [0, i1, i2, i3]
    if sign(_orient3(p0, p1, p2, p3)) > 0:
        faces = [(0, i2, i1), (0, i1, i3), (0, i3, i2), (i1, i2, i3)]
    else:
        faces = [(0, i1, i2), (0, i3, i1), (0, i2, i3), (i1, i3, i2)]
    planes = {}

    def plane(f):
        pl = planes.get(f)
        if pl is None:
            a, b, c = pts[f[0]], pts[f[1]], pts[f[2]]
            n = cross(sub(b, a), sub(c, a))
            pl = (n, dot(n, a))
            planes[f] = pl
        return pl

    for idx in range(len(pts)):
        if idx in init:
            continue
        p = pts[idx]
        visible = []
        hidden = []
        for f in faces:
            n, off = plane(f)
            (visible if sign(dot(n, p) - off) > 0 else hidden).append(f)
        if not visible:
            continue
        edges = set()
        for a, b, c in visible:
            edges.update(((a, b), (b, c), (c, a)))
        horizon = [(a, b) for (a, b) in edges if (b, a) not in edges]
        faces = hidden + [(a, b, idx) for (a, b) in horizon]

    facets = {Halfspace(*plane(f)).normalized() for f in faces}
    used = sorted({i for f in faces for i in f})
    verts = []
    for i in used:
        p = pts[i]
        tight = [h.a for h in facets if sign(h.evaluate(p)) == 0]
        if rank(tight) >= 3:
            verts.append(p)
    return verts, list(facets)


def _flat_facets(verts, d):
    """H-representation of a lower-dimensional polytope given its vertices."""
    p0 = verts[0]
    diffs = [sub(v, p0) for v in verts[1:]]
    normals = nullspace(diffs, d)
    facets = []
    for n in normals:
        facets.append(Halfspace(n, dot(n, p0)))
        facets.append(Halfspace(tuple(-c for c in n), -dot(n, p0)))
    k = d - len(normals)
    if k == 1:
        direction = sub(verts[-1], verts[0])
        vals = [dot(direction, v) for v in verts]
        facets.append(Halfspace(direction, max(vals)))
        facets.append(Halfspace(tuple(-c for c in direction), -min(vals)))
    elif k == 2:
        # polygon in 3-space; verts is cyclic
        normal = normals[0]
        n = len(verts)
        centre = tuple(sum(c) / n for c in zip(*verts))
        for i in range(n):
            p, q = verts[i], verts[(i + 1) % n]
            a = cross(sub(q, p), normal)
            if sign(dot(a, sub(centre, p))) > 0:
                a = tuple(-c for c in a)
            facets.append(Halfspace(a, dot(a, p)))
    return facets


def _check_points(points):
    if not points:
        raise GeometryError("convex hull of an empty point set")
    d = len(points[0])
    if any(len(p) != d for p in points):
        raise DimensionError("points of mixed dimension")
    if d not in (1, 2, 3):
        raise DimensionError(f"unsupported dimension {d}")
    return d


def convex_hull(points: Sequence[Sequence]) -> Polytope:
    """Convex hull of a finite point set.

    Lower-dimensional input yields a degenerate polytope whose
    ``affine_dim`` records the true dimension.
    """
    points = [_coerce(p) for p in points]
    d = _check_points(points)
    pts = _dedupe(points)
    p0 = pts[0]
    k = rank([sub(p, p0) for p in pts[1:]])
    if k == 0:
        verts = [p0]
        return Polytope(verts, _flat_facets(verts, d), d, 0)
    if k == 1:
        direction = next(sub(p, p0) for p in pts if p != p0)
        lo = min(pts, key=lambda p: dot(direction, p))
        hi = max(pts, key=lambda p: dot(direction, p))
        verts = [lo, hi]
        return Polytope(verts, _flat_facets(verts, d), d, 1)
    if d == 2:
        cyc = _monotone_chain(pts)
        return Polytope(cyc, _polygon_facets(cyc), 2, 2)
    if k == 2:
        normal = nullspace([sub(p, p0) for p in pts[1:]], 3)[0]
        drop = max(range(3), key=lambda i: abs(normal[i]))
        keep = [i for i in range(3) if i != drop]
        proj = {(p[keep[0]], p[keep[1]]): p for p in pts}
        cyc = [proj[q] for q in _monotone_chain(list(proj))]
        return Polytope(cyc, _flat_facets(cyc, 3), 3, 2)
    verts, facets = _hull3d(pts)
    return Polytope(verts, facets, 3, 3)


# ---------------------------------------------------------------------------
# halfspace intersection


def _prepare_halfspaces(halfspaces, dim):
    hs = []
    for h in halfspaces:
        h = Halfspace(_coerce(h[0]), _coerce((h[1],))[0])
        if dim is None:
            dim = len(h.a)
        if len(h.a) != dim:
            raise DimensionError("halfspaces of mixed dimension")
        if all(sign(c) == 0 for c in h.a):
            if sign(h.b) < 0:
                raise EmptyIntersectionError("inconsistent constant constraint")
            continue
        hs.append(h.normalized())
    if dim is None:
        raise GeometryError("no halfspaces given")
    return sorted(set(hs)), dim


def _float_interior(hs, dim):
    """Approximate Chebyshev centre via HiGHS; (x, radius) or None."""
    from scipy.optimize import linprog as sp_linprog

    A = np.array([[float(c) for c in h.a] for h in hs])
    b = np.array([float(h.b) for h in hs])
    norms = np.linalg.norm(A, axis=1)
    scale_ = max(1.0, float(np.max(np.abs(b))))
    A_ub = np.hstack([A, norms[:, None]])
    c = np.zeros(dim + 1)
    c[-1] = -1.0
    bounds = [(None, None)] * dim + [(None, scale_)]
    res = sp_linprog(c, A_ub=A_ub, b_ub=b, bounds=bounds, method="highs")
    if res.status != 0:
        return None
    return res.x[:dim], res.x[-1] / scale_


def _strictly_inside(hs, x):
    return all(sign(h.evaluate(x)) < 0 for h in hs)


def _exact_interior(hs, dim):
    """Exact LP: maximise t s.t. a.x + t*|a|_1 <= b, t <= 1."""
    A = [list(h.a) + [sum(abs(c) for c in h.a)] for h in hs]
    A.append([0] * dim + [1])
    b = [h.b for h in hs] + [1]
    res = linprog([0] * dim + [1], A, b, maximize=True)
    return res.x[:dim], res.x[dim]


def find_interior_point(hs, dim):
    """A strictly interior point of ``{x : hs}``, or None if there is none.

    Raises EmptyIntersectionError when the set is empty.
    """
    exact = all(is_exact(h.b) and all(is_exact(c) for c in h.a) for h in hs)
    approx = _float_interior(hs, dim)
    if approx is not None and approx[1] > 1e-9:
        if not exact:
            x = tuple(float(c) for c in approx[0])
            if _strictly_inside(hs, x):
                return x
        else:
            for denom in (1, 12, 1000, 10 ** 6, None):
                x = tuple(Fraction(float(c)) if denom is None
                          else Fraction(float(c)).limit_denominator(denom)
                          for c in approx[0])
                if _strictly_inside(hs, x):
                    return x
    if not exact:
        if approx is None:
            raise EmptyIntersectionError("halfspaces have empty intersection")
        if approx[1] < -1e-9:
            raise EmptyIntersectionError("halfspaces have empty intersection")
        return None
    x, t = _exact_interior(hs, dim)
    if t < 0:
        raise EmptyIntersectionError("halfspaces have empty intersection")
    if t == 0:
        return None
    return x


def enumerate_vertices(halfspaces, dim=None):
    """Brute-force vertex enumeration: every ``dim``-subset of tight constraints.

    Slow (combinatorial) but correct for lower-dimensional intersections.
    The caller must know the set is bounded.
    """
    hs, dim = _prepare_halfspaces(halfspaces, dim)
    found = set()
    for combo in itertools.combinations(hs, dim):
        x = solve_linear([h.a for h in combo], [h.b for h in combo])
        if x is None:
            continue
        if all(sign(h.evaluate(x)) <= 0 for h in hs):
            found.add(x)
    return _dedupe(found)


def _is_bounded_exact(hs, dim):
    for k in range(dim):
        for s in (1, -1):
            c = [0] * dim
            c[k] = s
            res = linprog(c, [h.a for h in hs], [h.b for h in hs], maximize=True)
            if res.status == "unbounded":
                return False
    return True


def intersect_halfspaces(halfspaces, dim=None, interior=None) -> Polytope:
    """Intersection of finitely many halfspaces ``a . x <= b``.

    ``interior`` is an optional hint for a strictly interior point; it is
    verified and ignored when it is not strictly inside.  Raises
    :class:`EmptyIntersectionError` or :class:`UnboundedError`.
    """
    hs, dim = _prepare_halfspaces(halfspaces, dim)
    if not hs:
        raise UnboundedError("no constraints: the whole space")
    if interior is not None and not _strictly_inside(hs, interior):
        interior = None
    if interior is None:
        interior = find_interior_point(hs, dim)
    if interior is None:
        return _intersect_degenerate(hs, dim)
    if dim == 1:
        hi = min(h.b / h.a[0] for h in hs if sign(h.a[0]) > 0) if any(
            sign(h.a[0]) > 0 for h in hs) else None
        lo = max(h.b / h.a[0] for h in hs if sign(h.a[0]) < 0) if any(
            sign(h.a[0]) < 0 for h in hs) else None
        if hi is None or lo is None:
            raise UnboundedError("unbounded intersection")
        return convex_hull([(lo,), (hi,)])
    # polar dual: primal vertices <-> facets of the hull of a/(b - a.x0)
    dual = {}
    for h in hs:
        slack = h.b - dot(h.a, interior)
        q = tuple(c / slack for c in h.a)
        dual.setdefault(q, h)
    dual_pts = list(dual)
    if len(dual_pts) < dim + 1 or rank(
            [sub(q, dual_pts[0]) for q in dual_pts[1:]]) < dim:
        raise UnboundedError("unbounded intersection")
    D = convex_hull(dual_pts)
    if any(sign(f.b) <= 0 for f in D.facets):
        raise UnboundedError("unbounded intersection")
    verts = [add(tuple(c / f.b for c in f.a), interior) for f in D.facets]
    facets = [dual[q] for q in D.vertices]
    return Polytope(verts, facets, dim, dim)


def _intersect_degenerate(hs, dim):
    verts = enumerate_vertices(hs, dim)
    if not verts:
        raise UnboundedError("unbounded intersection (no vertices)")
    exact = all(is_exact(c) for v in verts for c in v)
    if exact and not _is_bounded_exact(hs, dim):
        raise UnboundedError("unbounded intersection")
    return convex_hull(verts)


# ---------------------------------------------------------------------------
# arithmetic


def minkowski_sum(P: Polytope, Q: Polytope) -> Polytope:
    if P.dim != Q.dim:
        raise DimensionError("Minkowski sum of polytopes of different dimension")
    return convex_hull([add(p, q) for p in P.vertices for q in Q.vertices])


def scale_translate(P: Polytope, lam, t=None) -> Polytope:
    """The image ``lam * P + t``.  Negative ``lam`` reflects."""
    if t is None:
        t = (0,) * P.dim
    if len(t) != P.dim:
        raise DimensionError("translation vector has wrong dimension")
    verts = [add(scale(lam, v), t) for v in P.vertices]
    if sign(lam) == 0:
        return convex_hull([tuple(t)])
    facets = []
    for h in P.facets:
        a = h.a if sign(lam) > 0 else tuple(-c for c in h.a)
        facets.append(Halfspace(a, h.b * abs(lam) + dot(a, t)))
    return Polytope(verts, facets, P.dim, P.affine_dim)


def contains(P: Polytope, x) -> bool:
    if len(x) != P.dim:
        raise DimensionError("point has wrong dimension")
    return all(sign(h.evaluate(x)) <= 0 for h in P.facets)


def contains_polytope(P: Polytope, Q: Polytope) -> bool:
    if P.dim != Q.dim:
        raise DimensionError("polytopes of different dimension")
    return all(contains(P, v) for v in Q.vertices)


def equal(P: Polytope, Q: Polytope) -> bool:
    if P.dim != Q.dim or P.affine_dim != Q.affine_dim:
        return False
    if len(P.vertices) != len(Q.vertices):
        return False
    if P.exact and Q.exact:
        return P.vertices == Q.vertices
    return contains_polytope(P, Q) and contains_polytope(Q, P)


def plane_section(P: Polytope, u, w) -> Polytope:
    """``P`` intersected with ``span{u, w}``, in coordinates of the basis (u, w)."""
    if P.dim != 3:
        raise DimensionError("plane sections need a 3-dimensional polytope")
    if len(u) != 3 or len(w) != 3:
        raise DimensionError("plane basis vectors must be 3-dimensional")
    if all(sign(c) == 0 for c in cross(u, w)):
        raise GeometryError("plane basis vectors are linearly dependent")
    hs = [Halfspace((dot(h.a, u), dot(h.a, w)), h.b) for h in P.facets]
    return intersect_halfspaces(hs, dim=2)


def lift(point2, u, w):
    """Map section coordinates back to space."""
    return add(scale(point2[0], u), scale(point2[1], w))


def as_polytope(obj) -> Polytope:
    if isinstance(obj, Polytope):
        return obj
    return convex_hull(obj)
