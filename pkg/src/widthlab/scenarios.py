"""Problem instances stored as JSON scenes.

A scene names a norm, some bodies and one query.  Every expected value
carries a ``basis``: ``reference`` (a value stated in the literature the
corpus reproduces), ``trivial`` (immediate from the definitions) or
``derived`` (computed once by an independent oracle, which ``oracle``
names).  :func:`run_scene` recomputes the query and compares.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from widthlab import completeness as cp
from widthlab import hulls, metrics, oracle
from widthlab._scalar import fmt, fmt_vector, to_scalar, to_vector
from widthlab.geometry import (DimensionError, GeometryError, Polytope, contains,
                               convex_hull, equal)
from widthlab.norms import Ball, make_ball, norm_from_json

BASES = ("reference", "trivial", "derived")

SCENE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["name", "norm", "bodies", "query", "expected"],
    "properties": {
        "name": {"type": "string"},
        "description": {"type": "string"},
        "exact": {"type": "boolean"},
        "norm": {
            "type": "object",
            "required": ["kind"],
            "properties": {"kind": {"enum": ["l1", "l2", "linf", "bicone",
                                             "hexagonal_bipyramid", "icosahedron",
                                             "polytopal"]},
                           "dim": {"enum": [2, 3]}},
        },
        "bodies": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "minProperties": 1,
                "maxProperties": 1,
                "properties": {
                    "points": {"type": "array", "minItems": 1},
                    "polytope": {"type": "object"},
                    "ball": {"type": "object", "required": ["center", "radius"]},
                },
                "additionalProperties": False,
            },
        },
        "query": {
            "type": "object",
            "required": ["op"],
            "properties": {"op": {"type": "string"}, "body": {"type": "string"},
                           "args": {"type": "object"}},
        },
        "expected": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["value", "basis"],
                "properties": {
                    "basis": {"enum": list(BASES)},
                    "oracle": {"type": "string"},
                    "tol": {"type": "number", "minimum": 0},
                    "cmp": {"enum": ["==", ">=", "<=", "set"]},
                },
                "if": {"properties": {"basis": {"const": "derived"}}},
                "then": {"required": ["oracle"]},
            },
        },
    },
}


class SceneError(ValueError):
    pass


@dataclass
class Scene:
    name: str
    norm: object = field(repr=False)
    bodies: dict = field(repr=False)
    query: dict
    expected: dict = field(repr=False)
    description: str = ""
    exact: bool = True
    source: dict = field(default_factory=dict, repr=False)

    def body(self, name=None):
        name = name or self.query.get("body") or next(iter(self.bodies), None)
        if name not in self.bodies:
            raise SceneError(f"scene {self.name!r} has no body {name!r}")
        return self.bodies[name]

    def to_json(self):
        return self.source


@dataclass
class SceneReport:
    name: str
    passed: bool
    computed: dict
    mismatches: list
    seconds: float

    def to_json(self):
        return {"name": self.name, "passed": self.passed,
                "computed": self.computed, "mismatches": self.mismatches}


# ---------------------------------------------------------------------------
# loading


def _parse_body(spec, norm, exact):
    if "points" in spec:
        pts = [to_vector(p, exact) for p in spec["points"]]
        if any(len(p) != norm.dim for p in pts):
            raise DimensionError("body point dimension does not match the norm")
        return convex_hull(pts)
    if "polytope" in spec:
        P = Polytope.from_json(spec["polytope"], exact=exact)
        if P.dim != norm.dim:
            raise DimensionError("polytope dimension does not match the norm")
        return P
    c = to_vector(spec["ball"]["center"], exact)
    r = to_scalar(spec["ball"]["radius"], exact)
    B = make_ball(norm, c, r)
    return B.materialized if B.materialized is not None else B


def scene_from_dict(data) -> Scene:
    try:
        jsonschema.validate(data, SCENE_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SceneError(f"schema violation: {exc.message}") from None
    exact = data.get("exact", True)
    norm = norm_from_json(data["norm"], exact=exact)
    bodies = {k: _parse_body(v, norm, exact) for k, v in data["bodies"].items()}
    return Scene(data["name"], norm, bodies, data["query"], data["expected"],
                 data.get("description", ""), exact, data)


def load_scene(path) -> Scene:
    path = Path(path)
    if not path.exists():
        candidate = corpus_dir() / path.name
        if candidate.exists():
            path = candidate
    with open(path) as fh:
        return scene_from_dict(json.load(fh))


def corpus_dir() -> Path:
    return Path(str(resources.files("widthlab") / "corpus"))


def corpus_paths():
    return sorted(corpus_dir().glob("*.json"))


def load_corpus():
    return [load_scene(p) for p in corpus_paths()]


# ---------------------------------------------------------------------------
# operations


def _vertices(P):
    return [fmt_vector(v) for v in P.vertices]


def _float_vec(v):
    return [float(c) for c in v]


def _op_diameter(scene, args):
    return cp._jsonable(metrics.diameter(scene.norm, scene.body()).to_json())


def _op_width_report(scene, args):
    return metrics.width_report(scene.norm, scene.body()).to_json()


def _op_circumradius(scene, args):
    r, c = metrics.circumradius(scene.norm, scene.body())
    return {"radius": fmt(r), "center": fmt_vector(c)}


def _hull_summary(norm, H, K, compare):
    D = metrics.diameter(norm, H).value
    out = {"vertices": _vertices(H), "diam": fmt(D),
           "contains_body": all(contains(H, v) for v in K.vertices)}
    for key, other in compare.items():
        out[f"equals_{key}"] = equal(H, other)
    return out


def _comparisons(scene, args):
    comp = {}
    for name in args.get("compare", []):
        if name == "unit_ball":
            comp[name] = scene.norm.ball
        elif name == "body":
            comp[name] = scene.body()
        else:
            comp[name] = scene.body(name)
    return comp


def _op_eta(scene, args):
    norm, K = scene.norm, scene.body()
    if not norm.polytopal:
        return _sampled_summary(scene, hulls.sampled_wide_hull(norm, K), args)
    H = hulls.wide_spherical_hull(norm, K).hull
    return _hull_summary(norm, H, K, _comparisons(scene, args))


def _op_tau(scene, args):
    norm, K = scene.norm, scene.body()
    if not norm.polytopal:
        return _sampled_summary(scene, hulls.sampled_tight_hull(norm, K), args)
    H = hulls.tight_spherical_hull(norm, K).hull
    return _hull_summary(norm, H, K, _comparisons(scene, args))


def _sampled_summary(scene, H, args):
    out = {"diam": H.diameter()[0], "sampled": True}
    if "points" in args:
        out["contains"] = [H.contains([float(c) for c in to_vector(p)], tol=1e-9)
                           for p in args["points"]]
    return out


def _op_unique_completion(scene, args):
    norm, K = scene.norm, scene.body()
    out = {"value": cp.unique_completion(norm, K)}
    if norm.polytopal:
        wide = hulls.wide_spherical_hull(norm, K)
        tight = hulls.tight_spherical_hull(norm, K, wide)
        out["eta_equals_tau"] = equal(wide.hull, tight.hull)
        out["diam_eta"] = fmt(metrics.diameter(norm, wide.hull).value)
        for key, other in _comparisons(scene, args).items():
            out[f"eta_equals_{key}"] = equal(wide.hull, other)
            out[f"tau_equals_{key}"] = equal(tight.hull, other)
    return out


def _op_report(scene, args):
    return cp.completeness_report(scene.norm, scene.body()).to_json()


def _op_is_complete(scene, args):
    return {"value": cp.is_complete(scene.norm, scene.body())}


def _op_is_constant_width(scene, args):
    res = cp.is_constant_width(scene.norm, scene.body())
    out = res.to_json()
    out["value"] = res.constant_width
    return out


def _op_complete(scene, args):
    norm, K = scene.norm, scene.body()
    C = cp.complete_greedily(norm, K, args.get("tie_rule", "lex"), track_progress=False)
    out = {"complete": C.complete, "vertices": _vertices(C.body),
           "diam": fmt(metrics.diameter(norm, C.body).value),
           "is_constant_width": bool(cp.is_constant_width(norm, C.body)),
           "is_ball": cp.is_ball(norm, C.body)[0]}
    return out


def _op_check_u1(scene, args):
    v = cp.check_u1(scene.norm)
    w = v.witness
    out = {"verdict": v.verdict}
    if "u" in w:
        out["u"] = fmt_vector(w["u"]) if scene.norm.polytopal else _float_vec(w["u"])
    if "min_excess" in w:
        out["min_excess"] = fmt(w["min_excess"])
    if "sections_consistent" in w:
        out["sections_consistent"] = w["sections_consistent"]
    return out


def _op_check_um(scene, args):
    v = cp.check_um(scene.norm, scene.body(), args.get("m"))
    w = v.um.witness
    out = {"U": v.um.verdict, "Ub": v.umb.verdict, "side": fmt(w["side"]),
           "diam_eta": fmt(w["diam_eta"])}
    if w.get("sampled"):
        out["min_width_eta"] = w["min_width_eta"]
        out["circumradius_eta"] = w["circumradius_eta"]
    return out


def _op_ball_lemma(scene, args):
    x = to_vector(args["x"], scene.exact)
    y = to_vector(args["y"], scene.exact)
    return {"holds": [cp.ball_intersection_identity(scene.norm, x, y,
                                                    to_scalar(g, scene.exact)).holds
                      for g in args["gammas"]]}


def _op_convexity(scene, args):
    grid = [to_scalar(e, scene.norm.polytopal) for e in args.get("eps", [])] or None
    prof = metrics.convexity_profile(scene.norm, grid)
    return prof.to_json()


def _op_extend_simplex(scene, args):
    res = cp.experiment_extend_simplex(scene.norm, scene.body(),
                                       samples=args.get("samples", 200))
    out = {"extendable": res.extendable}
    if res.exact:
        out["candidates"] = [fmt_vector(c) for c in res.candidates]
    else:
        out["candidates"] = [_float_vec(c) for c in res.candidates]
        if res.two_point_set:
            P = np.array(res.two_point_set)
            out["circle_error"] = float(max(np.abs(np.hypot(P[:, 0], P[:, 1]) - 1).max(),
                                            np.abs(P[:, 2]).max()))
            out["two_point_samples"] = len(P)
    return out


def _op_properties_ade(scene, args):
    names = args.get("bodies") or list(scene.bodies)
    verdicts = cp.experiment_properties_ade(scene.norm, [scene.body(n) for n in names])
    return {v.property: v.verdict for v in verdicts}


def _op_modulus(scene, args):
    eps = to_scalar(args["eps"], scene.norm.polytopal)
    d = metrics.modulus_of_convexity(scene.norm, eps)
    return {"delta": fmt(d) if scene.norm.polytopal else float(d)}


def _op_oracle_constant_width(scene, args):
    return {"value": oracle.oracle_constant_width(scene.norm, scene.body(),
                                                  tol=args.get("tol", 1e-9))}


OPS = {
    "diameter": _op_diameter,
    "width_report": _op_width_report,
    "circumradius": _op_circumradius,
    "eta": _op_eta,
    "tau": _op_tau,
    "unique_completion": _op_unique_completion,
    "report": _op_report,
    "is_complete": _op_is_complete,
    "is_constant_width": _op_is_constant_width,
    "complete": _op_complete,
    "check_u1": _op_check_u1,
    "check_um": _op_check_um,
    "ball_lemma": _op_ball_lemma,
    "convexity": _op_convexity,
    "extend_simplex": _op_extend_simplex,
    "properties_ade": _op_properties_ade,
    "modulus": _op_modulus,
    "oracle_constant_width": _op_oracle_constant_width,
}


def compute(scene: Scene) -> dict:
    op = scene.query["op"]
    if op not in OPS:
        raise SceneError(f"unknown operation {op!r}")
    return OPS[op](scene, scene.query.get("args", {}))


# ---------------------------------------------------------------------------
# comparison


def _as_number(v):
    if isinstance(v, str):
        return Fraction(v)
    return v


def _match(expected, got, tol, cmp):
    if cmp == "set":
        return (isinstance(got, list) and len(expected) == len(got)
                and all(any(_match(e, g, tol, "==") for g in got) for e in expected))
    if isinstance(expected, list):
        return (isinstance(got, list) and len(expected) == len(got)
                and all(_match(e, g, tol, cmp) for e, g in zip(expected, got)))
    if isinstance(expected, bool) or expected is None:
        return got is expected or got == expected
    try:
        e, g = _as_number(expected), _as_number(got)
    except (ValueError, ZeroDivisionError):
        return expected == got
    if isinstance(e, str) or isinstance(g, str):
        return expected == got
    if cmp == ">=":
        return g >= e - tol
    if cmp == "<=":
        return g <= e + tol
    if tol:
        return abs(float(e) - float(g)) <= tol
    return e == g


def run_scene(scene: Scene) -> SceneReport:
    t0 = time.perf_counter()
    computed = compute(scene)
    mismatches = []
    for key, exp in scene.expected.items():
        got = computed.get(key)
        if not _match(exp["value"], got, exp.get("tol", 0), exp.get("cmp", "==")):
            mismatches.append({"key": key, "expected": exp["value"], "got": got,
                               "basis": exp["basis"]})
    return SceneReport(scene.name, not mismatches, computed, mismatches,
                       time.perf_counter() - t0)


def run_corpus(paths=None):
    return [run_scene(load_scene(p)) for p in (paths or corpus_paths())]


# ---------------------------------------------------------------------------
# differential check against the oracles


def cross_check(scene: Scene, n_points=1000, seed=0) -> dict:
    """Compare exact results with the float oracles on every polytopal body.

    For each body: the diameter, membership in the wide hull for about
    ``n_points`` jittered grid points around it, and the constant width
    verdict.  Grid points are converted to rationals exactly, so both
    sides classify the same point.
    """
    norm = scene.norm
    if not norm.polytopal:
        raise SceneError("oracle cross-check needs a polytopal norm")
    out = {}
    for name, K in scene.bodies.items():
        if isinstance(K, Ball):
            continue
        D = metrics.diameter(norm, K).value
        d_or = oracle.oracle_diameter(norm, K)
        eta = hulls.wide_spherical_hull(norm, K).hull
        res = round(n_points ** (1 / norm.dim))
        grid = oracle.bounding_grid([_float_vec(v) for v in eta.vertices],
                                    max(res, 3), seed=seed, pad=0.25)
        pts = grid.points()
        exact_in = np.array([contains(eta, tuple(Fraction(float(c)) for c in p)) for p in pts])
        oracle_in = oracle.oracle_membership_eta(norm, K, pts)
        cw = cp.is_constant_width(norm, K).constant_width
        cw_or = oracle.oracle_constant_width(norm, K)
        out[name] = {
            "diameter": abs(float(D) - d_or) <= 1e-9 * max(1.0, float(D)),
            "eta_membership": bool(np.all(exact_in == oracle_in)),
            "eta_points": int(len(pts)),
            "eta_disagreements": int(np.sum(exact_in != oracle_in)),
            "constant_width": cw == cw_or,
        }
    return out
