"""SVG figures of a body and its spherical hulls.

Planar input gives one panel with K, the wide hull and the tight hull
layered.  Spatial input gives one panel per section: the three coordinate
planes through the vertex centroid of K, plus an optional extra plane.
"""
from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

from widthlab._scalar import dot
from widthlab.geometry import (GeometryError, Halfspace, Polytope, as_polytope,
                               intersect_halfspaces)
from widthlab.hulls import (sampled_tight_hull, sampled_wide_hull,
                            tight_spherical_hull, wide_spherical_hull)

PANEL = 360
MARGIN = 24
LAYERS = (
    ("wide hull", "#dbe9f6", "#2b6cb0"),
    ("tight hull", "#fde2c8", "#c05621"),
    ("K", "#c6f6d5", "#276749"),
)


def _num(x):
    return f"{x:.4f}".rstrip("0").rstrip(".") if x == x else "0"


def _ordered(points):
    """Float polygon vertices in counter-clockwise order around their mean."""
    P = np.asarray(points, dtype=float)
    if len(P) < 3:
        return P
    c = P.mean(axis=0)
    ang = np.arctan2(P[:, 1] - c[1], P[:, 0] - c[0])
    return P[np.argsort(ang, kind="stable")]


def _section(P: Polytope, origin, u, w):
    """``P`` cut by the plane ``origin + span{u, w}``, in (u, w) coordinates."""
    hs = [Halfspace((dot(h.a, u), dot(h.a, w)), h.b - dot(h.a, origin)) for h in P.facets]
    try:
        return [[float(c) for c in v] for v in intersect_halfspaces(hs, dim=2).vertices]
    except GeometryError:
        return []


def _panel(layers, title, x0):
    pts = [p for _, poly in layers for p in poly]
    if not pts:
        return f'<g transform="translate({x0},0)"><text x="{MARGIN}" y="{MARGIN}">empty</text></g>'
    P = np.asarray(pts, dtype=float)
    lo, hi = P.min(axis=0), P.max(axis=0)
    span = float(max(hi - lo)) or 1.0
    s = (PANEL - 2 * MARGIN) / span
    cx, cy = (lo + hi) / 2

    def tx(p):
        return (_num(x0 + PANEL / 2 + (p[0] - cx) * s), _num(PANEL / 2 - (p[1] - cy) * s))

    out = [f'<g id="{escape(title)}">',
           f'<text x="{_num(x0 + MARGIN)}" y="16" font-size="12" '
           f'font-family="sans-serif">{escape(title)}</text>']
    style = {name: (fill, stroke) for name, fill, stroke in LAYERS}
    for name, poly in layers:
        if not len(poly):
            continue
        fill, stroke = style[name]
        coords = " ".join(",".join(tx(p)) for p in _ordered(poly))
        if len(poly) == 1:
            x, y = tx(poly[0])
            out.append(f'<circle cx="{x}" cy="{y}" r="3" fill="{stroke}"><title>{name}</title></circle>')
        elif len(poly) == 2:
            out.append(f'<polyline points="{coords}" fill="none" stroke="{stroke}" '
                       f'stroke-width="2"><title>{name}</title></polyline>')
        else:
            out.append(f'<polygon points="{coords}" fill="{fill}" fill-opacity="0.7" '
                       f'stroke="{stroke}" stroke-width="1.5"><title>{name}</title></polygon>')
    out.append("</g>")
    return "\n".join(out)


def _document(panels):
    width = PANEL * len(panels)
    legend = " ".join(f'<tspan fill="{stroke}">{name}</tspan>' for name, _, stroke in LAYERS)
    head = ('<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
            f'height="{PANEL + 20}" viewBox="0 0 {width} {PANEL + 20}">')
    foot = (f'<text x="{MARGIN}" y="{PANEL + 12}" font-size="12" '
            f'font-family="sans-serif">{legend}</text>\n</svg>\n')
    return "\n".join([head] + panels + [foot])


def render_svg(norm, K, section=None) -> str:
    """SVG text showing K, its wide hull and its tight hull.

    ``section`` is an optional extra plane ``(u, w)`` for spatial bodies.
    Analytic norms are drawn from boundary samples and need a planar body.
    """
    K = as_polytope(K)
    if not norm.polytopal:
        if norm.dim != 2:
            raise GeometryError("sampled rendering is only available in the plane")
        wide = sampled_wide_hull(norm, K, n=720)
        tight = sampled_tight_hull(norm, K, n=720, wide=wide)
        layers = [("wide hull", wide.boundary), ("tight hull", tight.boundary),
                  ("K", [[float(c) for c in v] for v in K.vertices])]
        return _document([_panel(layers, "plane", 0)])
    wide = wide_spherical_hull(norm, K)
    tight = tight_spherical_hull(norm, K, wide)
    bodies = [("wide hull", wide.hull), ("tight hull", tight.hull), ("K", K)]
    if norm.dim == 2:
        layers = [(name, [[float(c) for c in v] for v in P.vertices]) for name, P in bodies]
        return _document([_panel(layers, "plane", 0)])
    origin = K.centroid()
    planes = [("x1-x2 section", (1, 0, 0), (0, 1, 0)),
              ("x1-x3 section", (1, 0, 0), (0, 0, 1)),
              ("x2-x3 section", (0, 1, 0), (0, 0, 1))]
    if section is not None:
        planes.append(("named section", tuple(section[0]), tuple(section[1])))
    panels = []
    for i, (title, u, w) in enumerate(planes):
        layers = [(name, _section(P, origin, u, w)) for name, P in bodies]
        panels.append(_panel(layers, title, i * PANEL))
    return _document(panels)
