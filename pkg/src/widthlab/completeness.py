"""Completeness tests, completions, and the uniqueness-of-completion properties.

Everything here is exact for polytopal norms.  For the analytic norms the
same questions are answered from boundary samples of the spherical hulls
(see :mod:`widthlab.hulls`) with explicit tolerances.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from widthlab._scalar import (add, cross, dot, fmt, fmt_vector, is_exact, scale,
                              sign, sub)
from widthlab.geometry import (GeometryError, Halfspace, Polytope, as_polytope,
                               contains, contains_polytope, convex_hull, equal,
                               intersect_halfspaces, minkowski_sum, nullspace,
                               plane_section, rank, scale_translate)
from widthlab.hulls import (sampled_wide_hull, tight_spherical_hull,
                            wide_spherical_hull)
from widthlab.metrics import critical_functionals, diameter, width_report
from widthlab.norms import (Norm, dual_unit_functionals, make_ball,
                            sphere_directions)

log = logging.getLogger(__name__)

HOLDS = "holds"
FAILS = "fails"
HOLDS_ON_INSTANCES = "holds_on_instances"
FAILS_ON_INSTANCE = "fails_on_instance"
NOT_TESTED = "not_tested"

SAMPLED_TOL = 1e-6


class NotEquilateralError(ValueError):
    def __init__(self, pair, distances):
        self.pair = pair
        self.distances = distances
        super().__init__(f"simplex is not equilateral: offending pair {pair}")


class CompletionGuardError(RuntimeError):
    pass


def _jsonable(obj):
    if isinstance(obj, Polytope):
        return obj.to_json()
    if isinstance(obj, Fraction):
        return fmt(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, int):
        return obj
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return obj


@dataclass
class PropertyVerdict:
    property: str
    verdict: str
    witness: dict = field(default_factory=dict)

    @property
    def holds(self):
        return self.verdict in (HOLDS, HOLDS_ON_INSTANCES)

    def to_json(self):
        return {"property": self.property, "verdict": self.verdict,
                "witness": _jsonable(self.witness)}


# ---------------------------------------------------------------------------
# basic tests


def _sampled_inside(K: Polytope, X, tol=SAMPLED_TOL):
    A = np.array([[float(c) for c in h.a] for h in K.facets])
    b = np.array([float(h.b) for h in K.facets])
    return np.all(X @ A.T - b <= tol, axis=1)


def is_complete(norm: Norm, K) -> bool:
    """``K`` cannot be enlarged without increasing its diameter.

    Exact criterion: the wide spherical hull equals ``K``.
    """
    K = as_polytope(K)
    if len(K.vertices) == 1:
        return True
    if norm.polytopal:
        return equal(wide_spherical_hull(norm, K).hull, K)
    H = sampled_wide_hull(norm, K, n=2000 if norm.dim == 2 else 1000)
    return bool(np.all(_sampled_inside(K, H.boundary)))


def is_ball(norm: Norm, K):
    """Return ``(True, center, radius)`` if K is a ball, else ``(False, None, None)``.

    A ball is centrally symmetric about its centre, so the only candidate
    is the vertex centroid with radius half the diameter.
    """
    K = as_polytope(K)
    if not norm.polytopal:
        raise NotImplementedError("polytopes are never balls of an analytic norm")
    c = K.centroid()
    r = diameter(norm, K).value / 2
    if equal(K, make_ball(norm, c, r).materialized):
        return True, c, r
    return False, None, None


@dataclass
class ConstantWidthResult:
    constant_width: bool
    diameter: object
    min_width: object
    functional: tuple | None
    difference_body_check: bool | None = None

    def __bool__(self):
        return self.constant_width

    def to_json(self):
        return {"constant_width": self.constant_width, "diam": fmt(self.diameter),
                "min_width": fmt(self.min_width),
                "functional": None if self.functional is None else fmt_vector(self.functional),
                "difference_body_check": self.difference_body_check}


def is_constant_width(norm: Norm, K, n=None) -> ConstantWidthResult:
    """Every dual-unit functional gives width equal to the diameter.

    Polytopal norms: decided by the exact identity ``K - K = diam(K) * B``
    and cross-checked against the minimum width over the critical
    functionals.  If false, ``functional`` is a dual-unit witness whose
    width is below the diameter.
    """
    K = as_polytope(K)
    if norm.polytopal:
        rep = width_report(norm, K)
        D = rep.diameter
        diff = minkowski_sum(K, scale_translate(K, -1))
        by_body = equal(diff, scale_translate(norm.ball, D))
        by_width = rep.min_width == D
        if by_body != by_width:
            raise AssertionError("width minimum and difference body disagree")
        witness = None if by_width else rep.min_witness.a
        return ConstantWidthResult(by_body, D, rep.min_width, witness, by_body)
    funcs = dual_unit_functionals(norm, n)
    X = np.array([[float(c) for c in v] for v in K.vertices])
    A = np.array([f.a for f in funcs])
    vals = X @ A.T
    w = vals.max(axis=0) - vals.min(axis=0)
    D = float(diameter(norm, K).value)
    k = int(np.argmin(w))
    ok = bool(w[k] >= D - SAMPLED_TOL)
    return ConstantWidthResult(ok, D, float(w[k]), None if ok else funcs[k].a)


def unique_completion(norm: Norm, K) -> bool:
    """``K`` has exactly one completion iff its wide hull has the same diameter."""
    K = as_polytope(K)
    D = diameter(norm, K).value
    if norm.polytopal:
        return diameter(norm, wide_spherical_hull(norm, K).hull).value == D
    H = sampled_wide_hull(norm, K)
    return abs(H.diameter()[0] - float(D)) <= SAMPLED_TOL


@dataclass
class CompletenessReport:
    is_complete: bool
    is_constant_width: bool
    is_ball: bool
    unique_completion: bool
    diam: object
    diam_eta: object
    center: tuple | None = None
    radius: object = None
    constant_width_witness: tuple | None = None

    def to_json(self):
        return {
            "is_complete": self.is_complete,
            "is_constant_width": self.is_constant_width,
            "is_ball": self.is_ball,
            "unique_completion": self.unique_completion,
            "diam": fmt(self.diam),
            "diam_eta": fmt(self.diam_eta),
            "center": None if self.center is None else fmt_vector(self.center),
            "radius": None if self.radius is None else fmt(self.radius),
            "constant_width_witness": (None if self.constant_width_witness is None
                                       else fmt_vector(self.constant_width_witness)),
        }


def completeness_report(norm: Norm, K) -> CompletenessReport:
    K = as_polytope(K)
    if not norm.polytopal:
        raise NotImplementedError("completeness reports are exact-only")
    D = diameter(norm, K).value
    eta = wide_spherical_hull(norm, K).hull
    D_eta = diameter(norm, eta).value
    cw = is_constant_width(norm, K)
    ball, c, r = is_ball(norm, K)
    return CompletenessReport(equal(eta, K), cw.constant_width, ball, D_eta == D,
                              D, D_eta, c, r, cw.functional)


# ---------------------------------------------------------------------------
# completion


@dataclass
class Completion:
    body: Polytope
    complete: bool
    iterations: int
    added: list = field(default_factory=list)
    progress: list = field(default_factory=list)

    def to_json(self):
        return {"complete": self.complete, "iterations": self.iterations,
                "added": [fmt_vector(v) for v in self.added],
                "hausdorff_progress": self.progress,
                "body": self.body.to_json()}


def _hausdorff_to(norm, K, points):
    """Float estimate of ``max_p dist(p, K)`` (each distance is a small LP)."""
    from scipy.optimize import linprog as sp_linprog

    V = np.array([[float(c) for c in v] for v in K.vertices])
    A = np.array([[float(c) for c in a] for a in norm.functionals])
    worst = 0.0
    for p in points:
        p = np.array([float(c) for c in p])
        # variables: lambda (|V|), r ; a.(p - V^T lambda) <= r
        n = len(V)
        A_ub = np.hstack([-(A @ V.T), -np.ones((len(A), 1))])
        b_ub = -(A @ p)
        A_eq = np.hstack([np.ones((1, n)), np.zeros((1, 1))])
        c = np.zeros(n + 1)
        c[-1] = 1
        res = sp_linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=[1],
                         bounds=[(0, None)] * n + [(None, None)], method="highs")
        if res.status == 0:
            worst = max(worst, float(res.fun))
    return worst


def complete_greedily(norm: Norm, K, tie_rule="lex", max_iters=None,
                     strict=False, track_progress=True) -> Completion:
    """Grow ``K`` into a completion by repeatedly adding wide-hull vertices.

    Each step adds the lexicographically smallest (``tie_rule="lex"``) or
    largest (``"reverse"``) vertex of the current wide hull that is not in
    the current body.  Any point of the wide hull is within the diameter of
    every point of the body, so the diameter never changes.  The loop stops
    when the wide hull equals the body; the result is then complete.

    Termination is not guaranteed in general, so the loop is capped at
    ``max_iters`` (default ``10 * #ball facets * #initial vertices``).  When
    the cap is hit the current body is returned with ``complete=False``, or
    :class:`CompletionGuardError` is raised if ``strict``.
    """
    if not norm.polytopal:
        raise NotImplementedError("greedy completion needs a polytopal norm")
    if tie_rule not in ("lex", "reverse"):
        raise ValueError("tie_rule must be 'lex' or 'reverse'")
    K = as_polytope(K)
    if max_iters is None:
        max_iters = 10 * len(norm.functionals) * len(K.vertices)
    D = diameter(norm, K).value
    added, progress = [], []
    for it in range(max_iters + 1):
        eta = wide_spherical_hull(norm, K).hull
        outside = [v for v in eta.vertices if not contains(K, v)]
        if track_progress:
            progress.append(_hausdorff_to(norm, K, outside) if outside else 0.0)
        if not outside:
            return Completion(K, True, it, added, progress)
        if it == max_iters:
            break
        v = outside[0] if tie_rule == "lex" else outside[-1]
        added.append(v)
        K = convex_hull(list(K.vertices) + [v])
        assert diameter(norm, K).value == D
    log.warning("greedy completion stopped after %d iterations", max_iters)
    if strict:
        raise CompletionGuardError(f"no completion after {max_iters} iterations")
    return Completion(K, False, max_iters, added, progress)


# ---------------------------------------------------------------------------
# ball intersection identity


@dataclass
class BallLemmaResult:
    holds: bool
    intersection: Polytope
    ball: Polytope

    def __bool__(self):
        return self.holds

    def to_json(self):
        return {"holds": self.holds, "intersection": self.intersection.to_json(),
                "ball": self.ball.to_json()}


def ball_intersection_identity(norm: Norm, x, y, gamma) -> BallLemmaResult:
    """Compare ``B(x, g) & B(y, g)`` with ``B((x + y)/2, g - |x - y|/2)``."""
    if not norm.polytopal:
        raise NotImplementedError("exact identity check needs a polytopal norm")
    gamma = Fraction(gamma)
    x, y = tuple(Fraction(c) for c in x), tuple(Fraction(c) for c in y)
    half = norm(sub(x, y)) / 2
    if gamma < half:
        raise ValueError("gamma must be at least |x - y| / 2")
    hs = [Halfspace(a, gamma + dot(a, c)) for c in (x, y) for a in norm.functionals]
    inter = intersect_halfspaces(hs, dim=norm.dim)
    mid = tuple((p + q) / 2 for p, q in zip(x, y))
    ball = make_ball(norm, mid, gamma - half).materialized
    return BallLemmaResult(equal(inter, ball), inter, ball)


# ---------------------------------------------------------------------------
# property (U1)


def _segment(u):
    return convex_hull([tuple(u), tuple(-c for c in u)])


def _is_parallelogram_with_vertex(section: Polytope, vertex):
    if section.affine_dim != 2 or len(section.vertices) != 4:
        return False
    if tuple(vertex) not in set(section.vertices):
        return False
    cyc = section.cyclic_vertices()
    a, b, c, d = cyc
    return add(a, c) == add(b, d)


def section_planes(norm: Norm, u, limit=8):
    """Second spanning vectors for a sample of planes through ``u``."""
    cands = []
    for v in norm.ball.vertices:
        if any(sign(c) for c in cross(u, v)):
            cands.append(v)
    for i in range(3):
        e = tuple(Fraction(int(i == k)) for k in range(3))
        if any(sign(c) for c in cross(u, e)):
            cands.append(e)
    out, seen = [], []
    for w in cands:
        n = cross(u, w)
        if any(rank([n, m]) < 2 for m in seen):
            continue
        seen.append(n)
        out.append(w)
        if len(out) >= limit:
            break
    return out


def check_u1(norm: Norm, candidates=None) -> PropertyVerdict:
    """Is there a nontrivial segment with a unique completion?

    It suffices to test the segments ``[-u, u]`` for ``u`` an extreme point
    of the unit ball, because a unit vector whose planar sections are all
    parallelograms with a vertex at ``u`` is necessarily extreme.  For a
    polytopal ball that is a finite scan of the vertices (taken in
    descending lexicographic order).  When a certifying ``u`` is found in
    3D, the planar sections through ``u`` over a sample of planes are
    checked to be parallelograms with vertex ``u``.
    """
    if norm.polytopal:
        certified, margins = [], {}
        for u in sorted(norm.ball.vertices, reverse=True):
            S = _segment(u)
            eta = wide_spherical_hull(norm, S).hull
            d_eta = diameter(norm, eta).value
            margins[u] = d_eta - 2
            if d_eta == 2:
                certified.append(u)
        if not certified:
            return PropertyVerdict("U1", FAILS, {
                "min_excess": min(margins.values()),
                "excess_by_vertex": [[fmt_vector(u), fmt(m)] for u, m in margins.items()]})
        u = certified[0]
        witness = {"u": u, "certified": certified}
        if norm.dim == 3:
            sections = [w for w in section_planes(norm, u)]
            witness["sections_checked"] = len(sections)
            witness["sections_consistent"] = all(
                _is_parallelogram_with_vertex(plane_section(norm.ball, u, w), (1, 0))
                for w in sections)
        else:
            witness["sections_consistent"] = _is_parallelogram_with_vertex(
                norm.ball, u)
        return PropertyVerdict("U1", HOLDS, witness)
    return _check_u1_sampled(norm, candidates)


def _check_u1_sampled(norm, candidates=None):
    if candidates is None:
        dirs = sphere_directions(norm.dim, 48 if norm.dim == 2 else 98)
        if norm.dim == 2:
            # u and -u span the same segment
            dirs = dirs[:24]
        else:
            dirs = np.vstack([dirs, [[0, 0, 1.0], [0, 0, -1.0]]])
        candidates = [d / float(norm(d)) for d in dirs]
        candidates = [u for u in candidates if norm.is_extreme(u)]
    best = math.inf
    for u in candidates:
        u = np.asarray(u, dtype=float)
        S = convex_hull([tuple(u), tuple(-u)])
        d_eta = sampled_wide_hull(norm, S, n=1000 if norm.dim == 2 else 1500).diameter()[0]
        best = min(best, d_eta - 2)
        if d_eta - 2 <= SAMPLED_TOL:
            return PropertyVerdict("U1", HOLDS, {"u": tuple(float(c) for c in u),
                                                 "diam_eta": d_eta, "sampled": True})
    return PropertyVerdict("U1", FAILS, {"min_excess": best, "sampled": True})


# ---------------------------------------------------------------------------
# properties (U_m) and (U_m^b)


def check_equilateral(norm: Norm, simplex):
    verts = list(simplex.vertices)
    dists = {(i, j): norm(sub(verts[i], verts[j]))
             for i, j in itertools.combinations(range(len(verts)), 2)}
    ref = next(iter(dists.values()))
    exact = norm.polytopal and simplex.exact
    for pair, d in dists.items():
        bad = (d != ref) if exact else abs(float(d) - float(ref)) > 1e-9
        if bad:
            raise NotEquilateralError((verts[pair[0]], verts[pair[1]]), dists)
    return ref


@dataclass
class SimplexVerdict:
    m: int
    um: PropertyVerdict
    umb: PropertyVerdict

    def to_json(self):
        return {"m": self.m, "U_m": self.um.to_json(), "U_m^b": self.umb.to_json()}


def _sample_circumradius(norm, X):
    from scipy.optimize import minimize

    def radius(c):
        return float(np.max(norm(X - c)))

    c = X.mean(axis=0)
    # Nelder-Mead stalls on the nonsmooth max; restarting rebuilds the simplex
    for _ in range(6):
        res = minimize(radius, c, method="Nelder-Mead",
                       options={"xatol": 1e-13, "fatol": 1e-14, "maxiter": 40000})
        c = res.x
    return float(res.fun), res.x


def check_um(norm: Norm, simplex, m=None) -> SimplexVerdict:
    """Does the equilateral ``m``-simplex have a unique completion, and is it a ball?"""
    simplex = as_polytope(simplex)
    k = len(simplex.vertices) - 1
    if m is None:
        m = k
    if k != m or simplex.affine_dim != m:
        raise GeometryError(f"expected an affinely independent {m}-simplex")
    if m > norm.dim:
        raise GeometryError("simplex dimension exceeds the space dimension")
    side = check_equilateral(norm, simplex)
    name, name_b = f"U{m}", f"U{m}b"
    if norm.polytopal:
        eta = wide_spherical_hull(norm, simplex).hull
        d_eta = diameter(norm, eta).value
        unique = d_eta == side
        ball = unique and is_ball(norm, eta)[0]
        wit = {"side": side, "diam_eta": d_eta, "eta": eta}
    else:
        H = sampled_wide_hull(norm, simplex)
        d_eta, (p, q) = H.diameter()
        unique = abs(d_eta - float(side)) <= SAMPLED_TOL
        widths = H.widths(dual_unit_functionals(norm))
        # a complete set whose circumradius is half its diameter is a ball
        gamma, center = _sample_circumradius(norm, H.points())
        ball = unique and gamma - d_eta / 2 <= SAMPLED_TOL
        wit = {"side": float(side), "diam_eta": d_eta,
               "min_width_eta": float(widths.min()),
               "max_width_eta": float(widths.max()),
               "circumradius_eta": gamma, "ball_test_center": center,
               "radial_deviation": H.radial_deviation(center, d_eta / 2),
               "sampled": True}
    um = PropertyVerdict(name, HOLDS if unique else FAILS, dict(wit))
    umb = PropertyVerdict(name_b, HOLDS if ball else FAILS, dict(wit))
    return SimplexVerdict(m, um, umb)


# ---------------------------------------------------------------------------
# extending an equilateral triangle


@dataclass
class ExtensionResult:
    side: object
    pieces: list
    candidates: list
    off_plane: list
    extendable: bool
    two_point_set: list | None = None
    exact: bool = True

    def to_json(self):
        out = {"side": fmt(self.side), "exact": self.exact,
               "extendable": self.extendable,
               "candidates": [fmt_vector(c) for c in self.candidates],
               "off_plane": [fmt_vector(c) for c in self.off_plane]}
        if self.pieces:
            out["pieces"] = [p.to_json() for p in self.pieces]
        if self.two_point_set is not None:
            out["two_point_set"] = [fmt_vector(c) for c in self.two_point_set]
        return out


def _affine_solution(A, b):
    """Solutions of ``A y = b`` as ``(y0, N)`` with ``y = y0 + N t``; None if none."""
    d = len(A[0])
    M = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(A, b)]
    pivots, r = [], 0
    for col in range(d):
        piv = next((i for i in range(r, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][col]
        M[r] = [x / p for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col]:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
    if any(row[-1] for row in M[r:]):
        return None
    y0 = [Fraction(0)] * d
    for i, pc in enumerate(pivots):
        y0[pc] = M[i][-1]
    return tuple(y0), nullspace([row[:d] for row in M[:r]], d)


def _equidistant_pieces(norm, verts, D):
    """Exact ``{y : |y - w| = D for every w in verts}`` as a list of polytopes."""
    ineqs = [(a, D + dot(a, w)) for w in verts for a in norm.functionals]
    pieces = set()
    for combo in itertools.product(norm.functionals, repeat=len(verts)):
        sol = _affine_solution(list(combo), [D + dot(a, w) for a, w in zip(combo, verts)])
        if sol is None:
            continue
        y0, N = sol
        k = len(N)
        if k == 0:
            if all(dot(a, y0) <= b for a, b in ineqs):
                pieces.add(convex_hull([y0]))
            continue
        hs = [Halfspace(tuple(dot(a, n) for n in N), b - dot(a, y0)) for a, b in ineqs]
        if k == 1:
            lo, hi = None, None
            ok = True
            for h in hs:
                c = h.a[0]
                if c > 0:
                    hi = h.b / c if hi is None else min(hi, h.b / c)
                elif c < 0:
                    lo = h.b / c if lo is None else max(lo, h.b / c)
                elif h.b < 0:
                    ok = False
            if not ok or lo is None or hi is None or lo > hi:
                continue
            pts = [add(y0, scale(t, N[0])) for t in (lo, hi)]
            pieces.add(convex_hull(pts))
            continue
        try:
            P = intersect_halfspaces(hs, dim=k)
        except GeometryError:
            continue
        pts = [y0]
        for t in P.vertices:
            pt = y0
            for ti, n in zip(t, N):
                pt = add(pt, scale(ti, n))
            pts.append(pt)
        pieces.add(convex_hull(pts[1:]))
    # drop pieces that are faces of other pieces
    pieces = sorted(pieces, key=lambda P: (-P.affine_dim, P.vertices))
    kept = []
    for P in pieces:
        if not any(contains_polytope(Q, P) for Q in kept):
            kept.append(P)
    return kept


def experiment_extend_simplex(norm: Norm, T, samples=200, pair=(0, 1)) -> ExtensionResult:
    """Points at distance ``diam T`` from every vertex of the triangle ``T``.

    A point off the plane of ``T`` extends ``T`` to an equilateral 3-simplex.
    Polytopal norms give the exact solution set as a union of polytopes.
    Analytic norms are sampled: the two-vertex set for the vertices named
    by ``pair`` is traced over ``samples`` half-planes around their axis,
    then the third condition is solved along that curve.
    """
    T = as_polytope(T)
    if norm.dim != 3:
        raise GeometryError("the extension experiment needs dimension 3")
    if len(T.vertices) != 3 or T.affine_dim != 2:
        raise GeometryError("T must be a 2-simplex (a nondegenerate triangle)")
    D = diameter(norm, T).value
    verts = T.vertices
    normal = cross(sub(verts[1], verts[0]), sub(verts[2], verts[0]))
    if norm.polytopal:
        pieces = _equidistant_pieces(norm, verts, D)
        cands = sorted({v for P in pieces for v in P.vertices})
        off = [v for v in cands if sign(dot(normal, sub(v, verts[0])))]
        return ExtensionResult(D, pieces, cands, off, bool(off))
    curve, cands = _sampled_extension(norm, verts, float(D), samples, pair)
    nrm = np.array([float(c) for c in normal])
    w0 = np.array([float(c) for c in verts[0]])
    off = [c for c in cands
           if abs(np.dot(nrm, c - w0)) / np.linalg.norm(nrm) > SAMPLED_TOL]
    def plain(v):
        return tuple(float(c) for c in v)

    return ExtensionResult(float(D), [], [plain(c) for c in cands],
                           [plain(c) for c in off], bool(off),
                           two_point_set=[plain(c) for c in curve], exact=False)


def _sampled_extension(norm, verts, D, samples, pair):
    from scipy.optimize import brentq, minimize_scalar

    W = [np.array([float(c) for c in v]) for v in verts]
    i0, i1 = pair
    w0, w1 = W[i0], W[i1]
    w2 = W[3 - i0 - i1]
    axis = (w1 - w0) / np.linalg.norm(w1 - w0)
    helper = np.array([1.0, 0, 0]) if abs(axis[0]) < 0.9 else np.array([0, 1.0, 0])
    e1 = np.cross(axis, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)
    psi_grid = np.linspace(0, math.pi, 257)

    def on_sphere(phi, psi):
        d = math.cos(psi) * axis + math.sin(psi) * (math.cos(phi) * e1 + math.sin(phi) * e2)
        return w0 + D * d / float(norm(d))

    def solve(phi):
        def h(psi):
            return float(norm(on_sphere(phi, psi) - w1)) - D

        vals = [h(p) for p in psi_grid]
        for k in range(len(psi_grid) - 1):
            if vals[k] == 0:
                return on_sphere(phi, psi_grid[k])
            if vals[k] * vals[k + 1] < 0:
                psi = brentq(h, psi_grid[k], psi_grid[k + 1], xtol=1e-15)
                return on_sphere(phi, psi)
        return None

    phis = 2 * math.pi * np.arange(samples) / samples
    curve = [y for y in (solve(p) for p in phis) if y is not None]

    def k(phi):
        y = solve(phi)
        return float(norm(y - w2)) - D

    fine = 2 * math.pi * np.arange(4 * samples + 1) / (4 * samples)
    kv = [k(p) for p in fine]
    found = []
    for j in range(len(fine) - 1):
        if kv[j] * kv[j + 1] < 0:
            found.append(brentq(k, fine[j], fine[j + 1], xtol=1e-14))
        elif kv[j] == 0:
            found.append(fine[j])
    for j in range(1, len(fine) - 1):
        if abs(kv[j]) <= abs(kv[j - 1]) and abs(kv[j]) <= abs(kv[j + 1]):
            res = minimize_scalar(lambda p: abs(k(p)), bounds=(fine[j - 1], fine[j + 1]),
                                  method="bounded", options={"xatol": 1e-13})
            if abs(res.fun) <= 1e-9:
                found.append(float(res.x))
    cands = []
    for phi in found:
        y = solve(phi)
        if not any(np.linalg.norm(y - c) <= 1e-6 for c in cands):
            cands.append(y)
    return curve, cands


# ---------------------------------------------------------------------------
# instance-level evidence for properties (A), (D), (E)


def experiment_properties_ade(norm: Norm, instances, lambdas=(Fraction(1, 4),
                              Fraction(1, 2), Fraction(3, 4))) -> list:
    """Test (A), (D), (E) on concrete bodies.

    (A) every complete set has constant width: checked on each completion.
    (D) sums of complete sets are complete: checked on the sum of the two
        tie-rule completions.
    (E) completions form a convex family: when the two tie rules give
        different completions C1, C2, each ``l*C1 + (1-l)*C2`` is checked to
        contain K, keep the diameter, and be complete.
    Verdicts are evidence on these instances only.
    """
    if not norm.polytopal:
        raise NotImplementedError("property experiments need a polytopal norm")
    results = {"A": None, "D": None, "E": None}
    tested = {"A": 0, "D": 0, "E": 0}
    for idx, K in enumerate(instances):
        K = as_polytope(K)
        D = diameter(norm, K).value
        c1 = complete_greedily(norm, K, "lex", track_progress=False)
        c2 = complete_greedily(norm, K, "reverse", track_progress=False)
        if not (c1.complete and c2.complete):
            continue
        for C in (c1.body, c2.body):
            tested["A"] += 1
            cw = is_constant_width(norm, C)
            if not cw and results["A"] is None:
                results["A"] = {"instance": idx, "complete_body": C,
                                "functional": cw.functional, "width": cw.min_width,
                                "diam": cw.diameter}
        tested["D"] += 1
        S = minkowski_sum(c1.body, c2.body)
        if not is_complete(norm, S) and results["D"] is None:
            results["D"] = {"instance": idx, "sum": S}
        if not equal(c1.body, c2.body):
            for lam in lambdas:
                tested["E"] += 1
                M = minkowski_sum(scale_translate(c1.body, lam),
                                  scale_translate(c2.body, 1 - lam))
                ok = (contains_polytope(M, K) and diameter(norm, M).value == D
                      and is_complete(norm, M))
                if not ok and results["E"] is None:
                    results["E"] = {"instance": idx, "lambda": lam, "combination": M}
    out = []
    for prop in ("A", "D", "E"):
        if tested[prop] == 0:
            out.append(PropertyVerdict(prop, NOT_TESTED, {"instances": 0}))
        elif results[prop] is None:
            out.append(PropertyVerdict(prop, HOLDS_ON_INSTANCES, {"checks": tested[prop]}))
        else:
            out.append(PropertyVerdict(prop, FAILS_ON_INSTANCE, results[prop]))
    return out
