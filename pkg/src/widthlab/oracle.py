"""Brute-force floating point references for differential testing.

Nothing here reuses the exact machinery.  A polytopal gauge is rebuilt from
the float vertices of its unit ball with qhull, bodies are reduced to float
point clouds, and every answer comes from sampling plus a pairwise max.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import ConvexHull, QhullError

MAX_GRID_POINTS = 10 ** 6


@dataclass(frozen=True)
class GridSpec:
    """Sampling grid: box ``bounds`` (``[(lo, hi), ...]``), points per axis, seed.

    ``resolution`` is capped so the full grid never exceeds
    ``MAX_GRID_POINTS``.  With ``jitter`` every point is moved by a
    uniform offset of at most a quarter of the spacing, drawn from ``seed``.
    """

    bounds: tuple | None = None
    resolution: int = 201
    seed: int = 0
    jitter: bool = True

    def __post_init__(self):
        if self.resolution < 3:
            raise ValueError("grid resolution must be at least 3")

    def axis_resolution(self, dim):
        return max(3, min(self.resolution, int(MAX_GRID_POINTS ** (1 / dim))))

    def spacing(self):
        r = self.axis_resolution(len(self.bounds))
        return max((hi - lo) / (r - 1) for lo, hi in self.bounds)

    def points(self):
        if self.bounds is None:
            raise ValueError("grid has no bounding box")
        dim = len(self.bounds)
        r = self.axis_resolution(dim)
        axes = [np.linspace(lo, hi, r) for lo, hi in self.bounds]
        P = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, dim)
        if self.jitter:
            rng = np.random.default_rng(self.seed)
            steps = np.array([(hi - lo) / (r - 1) for lo, hi in self.bounds])
            P = P + rng.uniform(-0.25, 0.25, size=P.shape) * steps
        return P


def bounding_grid(points, resolution, seed=0, pad=0.0, jitter=True):
    P = np.asarray(points, dtype=float)
    lo, hi = P.min(axis=0) - pad, P.max(axis=0) + pad
    return GridSpec(tuple(zip(lo.tolist(), hi.tolist())), resolution, seed, jitter)


# ---------------------------------------------------------------------------
# gauges


class _Gauge:
    def __init__(self, dim, f, dual):
        self.dim = dim
        self.f = f
        self.dual = dual

    def __call__(self, X):
        return self.f(np.asarray(X, dtype=float))


def oracle_gauge(norm):
    """Independent float gauge for ``norm`` (polytopal, l2 or bicone)."""
    spec = norm.to_json()
    kind, dim = spec["kind"], norm.dim
    if kind == "l2":
        return _Gauge(dim, lambda X: np.sqrt((X * X).sum(axis=-1)),
                      lambda G: np.sqrt((G * G).sum(axis=-1)))
    if kind == "bicone":
        return _Gauge(3, lambda X: np.hypot(X[..., 0], X[..., 1]) + np.abs(X[..., 2]),
                      lambda G: np.maximum(np.hypot(G[..., 0], G[..., 1]), np.abs(G[..., 2])))
    V = np.array([[float(c) for c in v] for v in norm.ball.vertices])
    hull = ConvexHull(V)
    normals = hull.equations[:, :-1] / -hull.equations[:, -1:]

    def gauge(X):
        return np.max(X @ normals.T, axis=-1)

    def dual(G):
        return np.max(G @ V.T, axis=-1)

    g = _Gauge(dim, gauge, dual)
    g.normals = normals
    return g


# ---------------------------------------------------------------------------
# bodies as samples


def body_points(K, grid: GridSpec | None = None, norm=None):
    """Float samples of a body.

    Polytopes and point lists give their points plus, when a grid is
    supplied, evenly spaced points on every segment between two of them.
    A ``Ball`` gives boundary samples.
    """
    if hasattr(K, "radius") and hasattr(K, "center"):
        g = oracle_gauge(norm or K.norm)
        c = np.array([float(x) for x in K.center])
        n = (grid or GridSpec()).resolution
        dirs = _directions(len(c), max(n, 3) * (1 if len(c) == 2 else n))
        return c + float(K.radius) * dirs / g(dirs)[:, None]
    verts = getattr(K, "vertices", K)
    V = np.array([[float(c) for c in v] for v in verts])
    if grid is None or len(V) < 2:
        return V
    t = np.linspace(0, 1, min(grid.resolution, 64))[1:-1]
    segs = [V]
    for i in range(len(V)):
        for j in range(i + 1, len(V)):
            segs.append(V[i] + t[:, None] * (V[j] - V[i]))
    return np.vstack(segs)


def _directions(dim, n):
    if dim == 2:
        t = np.linspace(0, 2 * math.pi, n, endpoint=False)
        return np.stack([np.cos(t), np.sin(t)], axis=1)
    i = np.arange(n) + 0.5
    z = 1 - 2 * i / n
    r = np.sqrt(1 - z * z)
    t = i * math.pi * (3 - math.sqrt(5))
    return np.stack([r * np.cos(t), r * np.sin(t), z], axis=1)


def _pairwise_max(g, X, Y=None):
    Y = X if Y is None else Y
    best = 0.0
    for s in range(0, len(X), 256):
        best = max(best, float(g(X[s:s + 256, None, :] - Y[None, :, :]).max()))
    return best


# ---------------------------------------------------------------------------
# operations


def oracle_diameter(norm, K, grid: GridSpec | None = None):
    """Largest sampled distance; exact (up to rounding) when vertices are sampled."""
    g = oracle_gauge(norm)
    return _pairwise_max(g, body_points(K, grid, norm))


def oracle_membership_eta(norm, K, x, grid: GridSpec | None = None, tol=1e-9, radius=None):
    """``max_v |x - v| <= diam K`` over the sampled points of K.

    ``radius`` replaces ``diam K``; the tight hull of K is the membership
    set for the wide hull's points with radius ``diam K``.
    """
    g = oracle_gauge(norm)
    P = body_points(K, grid, norm)
    D = _pairwise_max(g, P) if radius is None else float(radius)
    X = np.atleast_2d(np.asarray(x, dtype=float))
    out = np.array([_pairwise_max(g, X[i:i + 1], P) <= D + tol for i in range(len(X))])
    return bool(out[0]) if np.ndim(x) == 1 else out


def _difference_normals(P):
    try:
        H = ConvexHull((P[:, None, :] - P[None, :, :]).reshape(-1, P.shape[1]))
    except (QhullError, ValueError):
        return np.empty((0, P.shape[1]))
    return H.equations[:, :-1]


def oracle_widths(norm, K, directions=None, grid: GridSpec | None = None):
    """Widths of K along sampled directions, normalised to dual norm one.

    Besides ``directions`` sample directions the set includes the facet
    normals of K - K and of the unit ball, where the narrowest width of a
    polytope is attained.  Returns ``(widths, functionals)``.
    """
    g = oracle_gauge(norm)
    P = body_points(K, grid, norm)
    dim = P.shape[1]
    n = directions or (720 if dim == 2 else 2562)
    G = [_directions(dim, n)]
    if grid is not None:
        rng = np.random.default_rng(grid.seed)
        R = rng.normal(size=(n, dim))
        G.append(R / np.linalg.norm(R, axis=1)[:, None])
    G.append(_difference_normals(P))
    if hasattr(g, "normals"):
        G.append(g.normals)
    G = np.vstack(G)
    G = G / g.dual(G)[:, None]
    proj = P @ G.T
    return proj.max(axis=0) - proj.min(axis=0), G


def oracle_constant_width(norm, K, directions=None, grid: GridSpec | None = None, tol=1e-9):
    """True iff every sampled width is within ``tol`` of the sampled diameter."""
    w, _ = oracle_widths(norm, K, directions, grid)
    D = oracle_diameter(norm, K, grid)
    return bool(w.min() >= D - tol * max(1.0, D))


def oracle_circumradius(norm, K, grid: GridSpec | None = None):
    """Smallest ``max_v |c - v|`` over grid centres ``c`` in K's bounding box.

    An upper bound; exact when the optimal centre is a grid node (use an
    odd, unjittered grid for symmetric bodies).
    """
    g = oracle_gauge(norm)
    P = body_points(K)
    if grid is None:
        grid = bounding_grid(P, 41 if P.shape[1] == 3 else 201, jitter=False)
    C = grid.points()
    best, center = math.inf, None
    for s in range(0, len(C), 4096):
        r = g(C[s:s + 4096, None, :] - P[None, :, :]).max(axis=1)
        k = int(np.argmin(r))
        if r[k] < best:
            best, center = float(r[k]), C[s + k]
    return best, center


def unit_sphere_samples(norm, n=None):
    """Points of the unit sphere: ball vertices (if any) plus radial samples."""
    g = oracle_gauge(norm)
    n = n or (3600 if norm.dim == 2 else 4000)
    dirs = _directions(norm.dim, n)
    S = dirs / g(dirs)[:, None]
    if norm.polytopal:
        S = np.vstack([S, [[float(c) for c in v] for v in norm.ball.vertices]])
    return S


def oracle_modulus(norm, eps, n=None):
    """``min {1 - |x+y|/2 : |x| = |y| = 1, |x - y| >= eps}`` over sampled pairs.

    An upper bound for the modulus of convexity.
    """
    g = oracle_gauge(norm)
    S = unit_sphere_samples(norm, n)
    eps = float(eps)
    best = math.inf
    for s in range(0, len(S), 256):
        X = S[s:s + 256, None, :]
        far = g(X - S[None, :, :]) >= eps - 1e-12
        if far.any():
            mid = g((X + S[None, :, :]) / 2)
            best = min(best, float((1 - mid)[far].min()))
    return best


def oracle_ball_intersection(norm, x, y, gamma, grid: GridSpec | None = None, tol=1e-9):
    """Grid test of ``B(x, g) & B(y, g) == B((x + y)/2, g - |x - y|/2)``."""
    g = oracle_gauge(norm)
    x = np.array([float(c) for c in x])
    y = np.array([float(c) for c in y])
    gamma = float(gamma)
    r = gamma - float(g(x - y)) / 2
    if grid is None:
        lo = np.minimum(x, y) - 2 * gamma
        hi = np.maximum(x, y) + 2 * gamma
        grid = GridSpec(tuple(zip(lo.tolist(), hi.tolist())),
                        161 if len(x) == 2 else 41, jitter=False)
    P = grid.points()
    lhs = (g(P - x) <= gamma + tol) & (g(P - y) <= gamma + tol)
    rhs = g(P - (x + y) / 2) <= r + tol
    return bool(np.all(lhs == rhs))
