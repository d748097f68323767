"""``widthlab`` command line.

Every verb prints one JSON object with sorted keys.  The tool version sits
in a separate ``header`` field so results stay byte-stable across runs.
Exit status: 0 when the answer holds (or for plain values), 1 when a
verdict fails or an oracle disagrees, 2 on errors (a JSON error object is
printed instead of a result).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from widthlab import __version__
from widthlab import completeness as cp
from widthlab import hulls, metrics, oracle, scenarios
from widthlab._scalar import fmt, fmt_vector, tolerance, to_scalar, to_vector
from widthlab.geometry import Polytope, convex_hull
from widthlab.norms import DualFunctional, norm_from_json
from widthlab.render import render_svg

EXIT_HOLDS, EXIT_FAILS, EXIT_ERROR = 0, 1, 2

VERBS = ("diam", "width", "circumradius", "eta", "tau", "complete", "is-complete",
         "is-constant-width", "unique-completion", "check-u1", "check-um",
         "ball-lemma", "convexity", "extend", "corpus", "render")


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _json_arg(text):
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    return json.loads(text)


def _build_parser():
    p = _Parser(prog="widthlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"widthlab {__version__}")
    sub = p.add_subparsers(dest="verb", required=True, metavar="VERB")
    common = _Parser(add_help=False)
    common.add_argument("--scene", help="scene JSON file (name or path)")
    common.add_argument("--norm", help="norm as JSON, e.g. '{\"kind\": \"l1\", \"dim\": 3}'")
    common.add_argument("--body", help="body as JSON list of points (\"p/q\" strings or numbers)")
    common.add_argument("--body-name", help="which body of the scene to use")
    common.add_argument("--oracle", action="store_true", help="cross-check with the float oracles")
    common.add_argument("--float", dest="inexact", action="store_true",
                        help="floating point instead of exact rationals")
    common.add_argument("--tol", type=float, default=1e-9, help="float tolerance (default 1e-9)")
    common.add_argument("--grid", type=int, default=None, help="oracle grid resolution per axis")
    common.add_argument("--out", help="write output to this file instead of stdout")
    helps = {
        "diam": "diameter with a witness pair",
        "width": "width along a functional, or the full width report",
        "circumradius": "circumradius and a Chebyshev centre",
        "eta": "wide spherical hull",
        "tau": "tight spherical hull",
        "complete": "greedy completion",
        "is-complete": "is the body complete",
        "is-constant-width": "is the body of constant width",
        "unique-completion": "does the body have exactly one completion",
        "check-u1": "property (U1) of the norm",
        "check-um": "properties (U_m) and (U_m^b) for an equilateral simplex",
        "ball-lemma": "compare B(x, g) & B(y, g) with B((x+y)/2, g - |x-y|/2)",
        "convexity": "modulus of convexity on a grid",
        "extend": "equidistant extension of an equilateral triangle",
        "corpus": "run the scene corpus",
        "render": "SVG figure of K and its hulls",
    }
    verbs = {}
    for verb in VERBS:
        verbs[verb] = sub.add_parser(verb, parents=[common], help=helps[verb])
    verbs["width"].add_argument("--functional", help="JSON coefficient list of a dual-unit functional")
    verbs["complete"].add_argument("--tie-rule", choices=("lex", "reverse"), default="lex")
    verbs["complete"].add_argument("--max-iters", type=int, default=None)
    verbs["check-um"].add_argument("--m", type=int, default=None)
    for name in ("--x", "--y"):
        verbs["ball-lemma"].add_argument(name, required=True, help="JSON point")
    verbs["ball-lemma"].add_argument("--gamma", action="append", required=True,
                                     help="radius (repeatable)")
    verbs["convexity"].add_argument("--eps", action="append", help="epsilon (repeatable)")
    verbs["extend"].add_argument("--samples", type=int, default=200)
    verbs["corpus"].add_argument("--dir", help="directory of scene files (default: bundled corpus)")
    verbs["render"].add_argument("--section", help="extra plane as JSON [u, w] for spatial bodies")
    return p


# ---------------------------------------------------------------------------
# inputs


class Inputs:
    def __init__(self, args):
        self.args = args
        self.exact = not args.inexact
        self.scene = scenarios.load_scene(args.scene) if args.scene else None
        self._norm = None
        if args.norm:
            self._norm = norm_from_json(_json_arg(args.norm), exact=self.exact)
        elif self.scene is not None:
            self._norm = self.scene.norm

    @property
    def norm(self):
        if self._norm is None:
            raise UsageError("give --norm or --scene")
        return self._norm

    def body(self):
        if self.args.body:
            pts = [to_vector(p, self.exact) for p in _json_arg(self.args.body)]
            if any(len(p) != self.norm.dim for p in pts):
                raise UsageError("body points do not match the norm dimension")
            return convex_hull(pts)
        if self.scene is not None and self.scene.bodies:
            K = self.scene.body(self.args.body_name)
            if not isinstance(K, Polytope):
                raise UsageError("this verb needs a polytope body")
            return K
        raise UsageError("give --body or a --scene with a body")

    def grid(self):
        return oracle.GridSpec(resolution=self.args.grid) if self.args.grid else None


# ---------------------------------------------------------------------------
# verbs; each returns (payload, exit code)


def _floats(P):
    return [[float(c) for c in v] for v in P.vertices]


def _close(a, b, tol=1e-9):
    return abs(float(a) - float(b)) <= tol * max(1.0, abs(float(a)))


def _with_oracle(payload, check):
    payload["oracle"] = check
    payload["oracle_agrees"] = bool(check.get("agrees", True))
    return payload


def cmd_diam(inp):
    K = inp.body()
    d = metrics.diameter(inp.norm, K)
    out = {"diam": fmt(d.value), "witness": [fmt_vector(p) for p in d.witness]}
    if inp.args.oracle:
        od = oracle.oracle_diameter(inp.norm, K, inp.grid())
        _with_oracle(out, {"diam": od, "agrees": _close(d.value, od)})
    return out, EXIT_HOLDS


def cmd_width(inp):
    K = inp.body()
    if inp.args.functional:
        f = DualFunctional(to_vector(_json_arg(inp.args.functional), inp.exact))
        w = metrics.width(inp.norm, K, f)
        out = {"functional": fmt_vector(f.a), "width": fmt(w)}
        if inp.args.oracle:
            P = oracle.body_points(K)
            proj = P @ np.array([float(c) for c in f.a])
            ow = float(proj.max() - proj.min())
            _with_oracle(out, {"width": ow, "agrees": _close(w, ow)})
        return out, EXIT_HOLDS
    rep = metrics.width_report(inp.norm, K)
    out = rep.to_json()
    if inp.args.oracle:
        ws, _ = oracle.oracle_widths(inp.norm, K, grid=inp.grid())
        _with_oracle(out, {"min_width": float(ws.min()),
                           "agrees": _close(rep.min_width, ws.min(), 1e-6)})
    return out, EXIT_HOLDS


def cmd_circumradius(inp):
    K = inp.body()
    r, c = metrics.circumradius(inp.norm, K)
    out = {"radius": fmt(r), "center": fmt_vector(c)}
    if inp.args.oracle:
        orad, _ = oracle.oracle_circumradius(inp.norm, K)
        # the grid search is an upper bound within one grid cell
        _with_oracle(out, {"radius_upper_bound": orad,
                           "agrees": float(r) <= orad + 1e-9})
    return out, EXIT_HOLDS


def _hull_cmd(inp, tight):
    K = inp.body()
    norm = inp.norm
    if not norm.polytopal:
        H = hulls.sampled_tight_hull(norm, K) if tight else hulls.sampled_wide_hull(norm, K)
        d, _ = H.diameter()
        return {"sampled": True, "diam": d, "boundary_points": len(H.boundary),
                "base_diameter": H.radius}, EXIT_HOLDS
    wide = hulls.wide_spherical_hull(norm, K)
    res = hulls.tight_spherical_hull(norm, K, wide) if tight else wide
    out = res.to_json()
    out["diam"] = fmt(metrics.diameter(norm, res.hull).value)
    if inp.args.oracle:
        V = _floats(res.hull)
        if tight:
            inside = oracle.oracle_membership_eta(norm, wide.hull, V, radius=float(res.base_diameter))
        else:
            inside = oracle.oracle_membership_eta(norm, K, V)
        _with_oracle(out, {"vertices_inside": bool(np.all(inside)),
                           "agrees": bool(np.all(inside))})
    return out, EXIT_HOLDS


def cmd_eta(inp):
    return _hull_cmd(inp, tight=False)


def cmd_tau(inp):
    return _hull_cmd(inp, tight=True)


def cmd_complete(inp):
    K = inp.body()
    C = cp.complete_greedily(inp.norm, K, inp.args.tie_rule, inp.args.max_iters)
    out = C.to_json()
    out["diam"] = fmt(metrics.diameter(inp.norm, C.body).value)
    if inp.args.oracle:
        a, b = oracle.oracle_diameter(inp.norm, K), oracle.oracle_diameter(inp.norm, C.body)
        _with_oracle(out, {"diam_before": a, "diam_after": b, "agrees": _close(a, b)})
    return out, EXIT_HOLDS if C.complete else EXIT_FAILS


def _grid_complete(norm, K, res):
    """Oracle completeness: no grid point outside K lies in the wide hull."""
    V = oracle.body_points(K)
    D = oracle.oracle_diameter(norm, K)
    grid = oracle.bounding_grid(V, res, pad=D)
    P = grid.points()
    A = np.array([[float(c) for c in h.a] for h in K.facets])
    b = np.array([float(h.b) for h in K.facets])
    slack = (P @ A.T - b) / np.linalg.norm(A, axis=1)
    outside = slack.max(axis=1) > 2 * grid.spacing()
    in_eta = oracle.oracle_membership_eta(norm, K, P[outside]) if outside.any() else np.array([])
    return not bool(np.any(in_eta))


def _verdict(holds):
    return ("holds" if holds else "fails"), (EXIT_HOLDS if holds else EXIT_FAILS)


def cmd_is_complete(inp):
    K = inp.body()
    val = cp.is_complete(inp.norm, K)
    verdict, code = _verdict(val)
    out = {"is_complete": val, "verdict": verdict}
    if inp.args.oracle and inp.norm.polytopal:
        oc = _grid_complete(inp.norm, K, inp.args.grid or (61 if inp.norm.dim == 2 else 21))
        _with_oracle(out, {"is_complete": oc, "agrees": oc == val})
    return out, code


def cmd_is_constant_width(inp):
    K = inp.body()
    res = cp.is_constant_width(inp.norm, K)
    verdict, code = _verdict(res.constant_width)
    out = res.to_json()
    out["verdict"] = verdict
    if inp.args.oracle:
        tol = 1e-9 if inp.norm.polytopal else 1e-3
        ocw = oracle.oracle_constant_width(inp.norm, K, grid=inp.grid(), tol=tol)
        _with_oracle(out, {"constant_width": ocw, "agrees": ocw == res.constant_width})
    return out, code


def cmd_unique_completion(inp):
    K = inp.body()
    val = cp.unique_completion(inp.norm, K)
    verdict, code = _verdict(val)
    out = {"unique_completion": val, "verdict": verdict}
    if inp.norm.polytopal:
        eta = hulls.wide_spherical_hull(inp.norm, K).hull
        out["diam"] = fmt(metrics.diameter(inp.norm, K).value)
        out["diam_eta"] = fmt(metrics.diameter(inp.norm, eta).value)
        if inp.args.oracle:
            a = oracle.oracle_diameter(inp.norm, K)
            b = oracle.oracle_diameter(inp.norm, eta)
            _with_oracle(out, {"diam": a, "diam_eta": b, "agrees": _close(a, b) == val})
    return out, code


def cmd_check_u1(inp):
    v = cp.check_u1(inp.norm)
    out = {"verdict": v.verdict, "witness": cp._jsonable(v.witness)}
    if "u" in v.witness:
        out["u"] = cp._jsonable(fmt_vector(v.witness["u"]) if inp.norm.polytopal
                                else v.witness["u"])
    if inp.args.oracle and inp.norm.polytopal:
        checks = {}
        for u in inp.norm.ball.vertices:
            seg = convex_hull([u, tuple(-c for c in u)])
            eta = hulls.wide_spherical_hull(inp.norm, seg).hull
            checks[json.dumps(fmt_vector(u))] = oracle.oracle_diameter(inp.norm, eta)
        holds = any(_close(d, 2) for d in checks.values())
        _with_oracle(out, {"diam_eta_by_vertex": checks, "agrees": holds == v.holds})
    return out, EXIT_HOLDS if v.holds else EXIT_FAILS


def cmd_check_um(inp):
    T = inp.body()
    v = cp.check_um(inp.norm, T, inp.args.m)
    out = cp._jsonable(v.to_json())
    if inp.args.oracle and inp.norm.polytopal:
        eta = v.um.witness["eta"]
        d = oracle.oracle_diameter(inp.norm, eta)
        ocw = oracle.oracle_constant_width(inp.norm, eta)
        _with_oracle(out, {"diam_eta": d, "eta_constant_width": ocw,
                           "agrees": _close(d, v.um.witness["side"]) == v.um.holds})
    return out, EXIT_HOLDS if v.um.holds else EXIT_FAILS


def cmd_ball_lemma(inp):
    a = inp.args
    x = to_vector(_json_arg(a.x), inp.exact)
    y = to_vector(_json_arg(a.y), inp.exact)
    results = []
    for g in a.gamma:
        gamma = to_scalar(_json_arg(g) if g.startswith("[") else g, inp.exact)
        r = cp.ball_intersection_identity(inp.norm, x, y, gamma)
        entry = {"gamma": fmt(gamma), "holds": r.holds}
        if a.oracle:
            entry["oracle_holds"] = oracle.oracle_ball_intersection(inp.norm, x, y, gamma)
        results.append(entry)
    holds = all(e["holds"] for e in results)
    out = {"results": results, "holds": holds}
    if a.oracle:
        out["oracle_agrees"] = all(e["holds"] == e["oracle_holds"] for e in results)
    return out, EXIT_HOLDS if holds else EXIT_FAILS


def cmd_convexity(inp):
    grid = None
    if inp.args.eps:
        grid = [to_scalar(e, inp.norm.polytopal and inp.exact) for e in inp.args.eps]
    prof = metrics.convexity_profile(inp.norm, grid, tol=inp.args.tol)
    out = prof.to_json()
    if inp.args.oracle:
        ob = [oracle.oracle_modulus(inp.norm, e) for e in prof.epsilons]
        # sampled values are upper bounds
        agrees = all(float(d) <= o + 1e-9 for d, o in zip(prof.delta_values, ob))
        _with_oracle(out, {"delta_upper_bounds": ob, "agrees": agrees})
    return out, EXIT_HOLDS


def cmd_extend(inp):
    res = cp.experiment_extend_simplex(inp.norm, inp.body(), samples=inp.args.samples)
    return cp._jsonable(res.to_json()), EXIT_HOLDS if res.extendable else EXIT_FAILS


def cmd_corpus(inp):
    paths = (sorted(Path(inp.args.dir).glob("*.json")) if inp.args.dir
             else scenarios.corpus_paths())
    rows, failed = [], 0
    for p in paths:
        scene = scenarios.load_scene(p)
        rep = scenarios.run_scene(scene)
        row = {"name": rep.name, "passed": rep.passed,
               "mismatches": cp._jsonable(rep.mismatches)}
        if inp.args.oracle and scene.norm.polytopal and any(
                isinstance(K, Polytope) for K in scene.bodies.values()):
            chk = scenarios.cross_check(scene)
            row["oracle"] = chk
            if not all(c["diameter"] and c["eta_membership"] and c["constant_width"]
                       for c in chk.values()):
                row["passed"] = False
        failed += not row["passed"]
        rows.append(row)
    out = {"scenes": rows, "total": len(rows), "failed": failed}
    return out, EXIT_FAILS if failed else EXIT_HOLDS


def cmd_render(inp):
    section = _json_arg(inp.args.section) if inp.args.section else None
    if section is not None:
        section = [to_vector(v, inp.exact) for v in section]
    return render_svg(inp.norm, inp.body(), section), EXIT_HOLDS


COMMANDS = {
    "diam": cmd_diam, "width": cmd_width, "circumradius": cmd_circumradius,
    "eta": cmd_eta, "tau": cmd_tau, "complete": cmd_complete,
    "is-complete": cmd_is_complete, "is-constant-width": cmd_is_constant_width,
    "unique-completion": cmd_unique_completion, "check-u1": cmd_check_u1,
    "check-um": cmd_check_um, "ball-lemma": cmd_ball_lemma,
    "convexity": cmd_convexity, "extend": cmd_extend, "corpus": cmd_corpus,
    "render": cmd_render,
}


def _dump(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _execute(argv):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        err = {"header": {"tool": "widthlab", "version": __version__, "verb": None},
               "error": {"type": "UsageError", "message": str(exc)}}
        return EXIT_ERROR, _dump(err), None
    header = {"tool": "widthlab", "version": __version__, "verb": args.verb}
    try:
        with tolerance(args.tol):
            inp = Inputs(args)
            payload, code = COMMANDS[args.verb](inp)
    except (ValueError, ArithmeticError, NotImplementedError, OSError, KeyError,
            TypeError, RuntimeError) as exc:
        err = {"header": header,
               "error": {"type": type(exc).__name__, "message": str(exc)}}
        return EXIT_ERROR, _dump(err), None
    if isinstance(payload, str):
        text = payload
    else:
        payload = dict(cp._jsonable(payload))
        if payload.get("oracle_agrees") is False:
            code = EXIT_FAILS
        payload["header"] = header
        text = _dump(payload)
    return code, text, args.out


def run(argv=None):
    """Execute one command; returns ``(exit code, output text)``."""
    code, text, _ = _execute(argv)
    return code, text


def main(argv=None):
    code, text, out = _execute(argv)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
