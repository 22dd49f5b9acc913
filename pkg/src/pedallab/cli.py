"""Command line front end.

Subcommands mirror the library layers: ``sample`` dumps curve points,
``area`` compares closed form against quadrature, ``scan`` runs a pole
sweep, ``identities`` runs the area-identity suite, ``centroid`` computes
curvature centroids, ``polygon`` handles the discrete analogue, and
``conjecture`` measures the contrapedal crossing claim.

Exit codes: 0 success, 1 a computation or certification failed, 2 bad
arguments.  PEDALLAB_TOL overrides the default tolerance wherever a --tol
flag is not given explicitly.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional, Tuple
from xml.etree import ElementTree as ET

import numpy as np

from .areas import (
    Polygon,
    closed_form_area,
    curvature_centroid_polygon,
    curvature_centroid_samples,
    curvature_centroid_support,
    pedal_polygon,
    polygon_signed_area,
    signed_area_quadrature,
)
from .curves import Ellipse, ParamGrid, SampledCurve, ellipse_point, ellipse_support, sample_curve
from .errors import DomainError, GeometryError, ZeroTotalWeight
from .harness import (
    LocusSpec,
    conjecture_check_contrapedal,
    family_evaluator,
    identity_suite,
    scan,
)
from .pedal import evolutoid_point

FAMILIES = ("ellipse", "pedal", "contrapedal", "rotated", "interpolated",
            "hybrid", "pseudo_talbot", "negative_pedal", "evolutoid")
SCAN_FAMILIES = ("ellipse", "pedal", "contrapedal", "rotated", "interpolated",
                 "hybrid", "pseudo_talbot", "negative_pedal")
OFFSET_FAMILIES = ("hybrid", "pseudo_talbot", "negative_pedal")


class UsageProblem(Exception):
    """Bad command line input; maps to exit code 2."""


def _default_tol(fallback: float) -> float:
    raw = os.environ.get("PEDALLAB_TOL")
    if raw is None:
        return fallback
    try:
        val = float(raw)
    except ValueError:
        raise UsageProblem(f"PEDALLAB_TOL is not a number: {raw!r}") from None
    if not (math.isfinite(val) and val > 0):
        raise UsageProblem(f"PEDALLAB_TOL must be a positive number, got {raw!r}")
    return val


def _parse_xy(raw: str) -> Tuple[float, float]:
    parts = raw.split(",")
    if len(parts) != 2:
        raise UsageProblem(f"expected a point as 'x,y', got {raw!r}")
    try:
        x, y = float(parts[0]), float(parts[1])
    except ValueError:
        raise UsageProblem(f"expected a point as 'x,y', got {raw!r}") from None
    if not (math.isfinite(x) and math.isfinite(y)):
        raise UsageProblem(f"point components must be finite, got {raw!r}")
    return x, y


def _parse_vertices(raw: str) -> np.ndarray:
    try:
        rows = [_parse_xy(chunk) for chunk in raw.split(";") if chunk]
    except UsageProblem:
        raise UsageProblem(f"expected vertices as 'x1,y1;x2,y2;...', got {raw!r}") from None
    if len(rows) < 3:
        raise UsageProblem("a polygon needs at least 3 vertices")
    return np.array(rows, dtype=float)


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _ellipse(args) -> Ellipse:
    if not (math.isfinite(args.a) and math.isfinite(args.b) and args.a >= args.b > 0):
        raise UsageProblem(f"require semi-axes a >= b > 0, got a={args.a}, b={args.b}")
    return Ellipse(args.a, args.b)


def _resolve_pole(args, e: Ellipse):
    """--m or --s into (pole, boundary parameter or None)."""
    if args.m is not None and args.s is not None:
        raise UsageProblem("give the pole as --m or --s, not both")
    if args.s is not None:
        p = ellipse_point(e, args.s)
        return (float(p[0]), float(p[1])), float(args.s)
    if args.m is not None:
        return _parse_xy(args.m), None
    return (0.0, 0.0), None


def _validated_grid_args(args) -> None:
    if args.n < 8:
        raise UsageProblem(f"--n must be >= 8, got {args.n}")
    off = getattr(args, "offset", None)
    if off is not None and not 0.0 <= off < 1.0:
        raise UsageProblem(f"--offset must lie in [0, 1), got {off}")


def _build_curve(args, e: Ellipse):
    """Sampled curve plus serializable metadata for the chosen family."""
    _validated_grid_args(args)
    fam = args.family
    if fam == "evolutoid":
        ev = lambda t: evolutoid_point(e, args.theta, t)
        m, s = None, None
        start = 0.0
        offset = args.offset if args.offset is not None else 0.0
    else:
        m, s = _resolve_pole(args, e)
        if fam == "pseudo_talbot" and s is None:
            raise UsageProblem("pseudo_talbot needs its pole on the ellipse: give --s")
        ev = family_evaluator(e, fam, m, theta=args.theta, mu=args.mu,
                              s=0.0 if s is None else s)
        on_boundary = fam in OFFSET_FAMILIES and s is not None
        start = s if on_boundary else 0.0
        offset = args.offset if args.offset is not None else (0.5 if on_boundary else 0.0)
    grid = ParamGrid(count=args.n, start=start, offset=offset)
    curve = sample_curve(ev, grid)
    meta = {
        "family": fam,
        "a": e.a,
        "b": e.b,
        "m": None if m is None else [m[0], m[1]],
        "params": {"theta": args.theta, "mu": args.mu, "s": s,
                   "n": args.n, "offset": offset},
    }
    return curve, meta, grid


# ---------------------------------------------------------------------------
# output formats


def _format_csv(curve: SampledCurve) -> str:
    lines = ["t,x,y"]
    for t, (x, y) in zip(curve.params, curve.points):
        lines.append(f"{t:.17g},{x:.17g},{y:.17g}")
    return "\n".join(lines) + "\n"


def _format_json(curve: SampledCurve, meta: dict) -> str:
    obj = {
        "meta": meta,
        "points": [[float(t), float(x), float(y)]
                   for t, (x, y) in zip(curve.params, curve.points)],
    }
    return json.dumps(obj, separators=(",", ":")) + "\n"


def _format_svg(curve: SampledCurve) -> str:
    x = curve.points[:, 0]
    y = -curve.points[:, 1]  # svg y grows downward
    minx, maxx = float(np.min(x)), float(np.max(x))
    miny, maxy = float(np.min(y)), float(np.max(y))
    w, h = maxx - minx, maxy - miny
    mx = 0.05 * w if w > 0 else 0.5
    my = 0.05 * h if h > 0 else 0.5
    d = "M " + " L ".join(f"{px:.8g} {py:.8g}" for px, py in zip(x, y)) + " Z"
    svg = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "viewBox": f"{minx - mx:.8g} {miny - my:.8g} {w + 2 * mx:.8g} {h + 2 * my:.8g}",
    })
    ET.SubElement(svg, "path", {
        "d": d,
        "fill": "none",
        "stroke": "black",
        "stroke-width": f"{0.004 * max(w, h, 1e-9):.6g}",
    })
    return ET.tostring(svg, encoding="unicode") + "\n"


# ---------------------------------------------------------------------------
# subcommands


def cmd_sample(args) -> int:
    e = _ellipse(args)
    curve, meta, _ = _build_curve(args, e)
    if args.format == "csv":
        text = _format_csv(curve)
    elif args.format == "json":
        text = _format_json(curve, meta)
    else:
        text = _format_svg(curve)
    _emit(text, args.output)
    return 0


def cmd_area(args) -> int:
    e = _ellipse(args)
    curve, meta, grid = _build_curve(args, e)
    quad = signed_area_quadrature(curve)
    grid2 = ParamGrid(count=2 * grid.count, start=grid.start, offset=grid.offset)
    quad2 = signed_area_quadrature(sample_curve(curve.evaluator, grid2))
    gap = abs(quad - quad2)
    try:
        if args.family == "evolutoid":
            closed = closed_form_area("evolutoid", e, theta=args.theta)
        elif args.family == "ellipse":
            closed = closed_form_area("ellipse", e)
        else:
            closed = closed_form_area(args.family, e, m=tuple(meta["m"]),
                                      theta=args.theta, mu=args.mu)
    except DomainError:
        closed = None
    out = dict(meta)
    out["closed"] = closed
    out["quadrature"] = quad
    out["doubling_gap"] = gap
    _emit(json.dumps(out, indent=2) + "\n", args.output)
    if gap > 1e-9 * max(1.0, abs(quad2)):
        print(f"error: quadrature not settled (gap {gap:.3e})", file=sys.stderr)
        return 1
    return 0


def cmd_scan(args) -> int:
    e = _ellipse(args)
    _validated_grid_args(args)
    if args.locus == "circle" and not args.r > 0:
        raise UsageProblem(f"--r must be positive, got {args.r}")
    if args.count < 1:
        raise UsageProblem(f"--count must be >= 1, got {args.count}")
    tol = args.tol if args.tol is not None else _default_tol(1e-8)
    locus = LocusSpec(kind=args.locus, r=args.r, count=args.count, phase=args.phase)
    report = scan(e, args.family, locus, n=args.n, theta=args.theta, mu=args.mu, tol=tol)
    text = json.dumps(report.to_dict(), indent=2) + "\n"
    if args.output:
        _emit(text, args.output)
    summary = (f"scan family={report.family} locus={args.locus} count={args.count} "
               f"mean={report.mean!r} max_rel_dev={report.max_rel_dev:.3e} "
               f"passed={report.passed}")
    print(summary)
    return 0 if report.passed else 1


def cmd_identities(args) -> int:
    e = _ellipse(args)
    if args.n < 8:
        raise UsageProblem(f"--n must be >= 8, got {args.n}")
    tol = args.tol if args.tol is not None else _default_tol(1e-8)
    m = _parse_xy(args.m)
    checks = identity_suite(e, m, n=args.n, tol=tol)
    if args.format == "json":
        text = json.dumps([c.to_dict() for c in checks], indent=2) + "\n"
    else:
        rows = [f"{c.name:38s} residual={c.residual:.3e} tol={c.tol:.1e} "
                f"{'PASS' if c.passed else 'FAIL'}" for c in checks]
        text = "\n".join(rows) + "\n"
    _emit(text, args.output)
    return 0 if all(c.passed for c in checks) else 1


def cmd_centroid(args) -> int:
    e = _ellipse(args)
    if args.source == "support":
        if args.family != "ellipse":
            raise UsageProblem("--source support is defined for the ellipse family only")
        k = curvature_centroid_support(ellipse_support(e), n=args.n)
        meta = {"family": "ellipse", "a": e.a, "b": e.b, "source": "support"}
    else:
        curve, meta, _ = _build_curve(args, e)
        meta["source"] = "samples"
        k = curvature_centroid_samples(curve)
    out = dict(meta)
    out["kx"] = k.x
    out["ky"] = k.y
    _emit(json.dumps(out, indent=2) + "\n", args.output)
    return 0


def cmd_polygon(args) -> int:
    verts = _parse_vertices(args.vertices)
    poly = Polygon(verts)
    m = _parse_xy(args.m)
    area = polygon_signed_area(poly)
    try:
        k = curvature_centroid_polygon(poly)
        centroid = [k.x, k.y]
        centroid_error = None
    except ZeroTotalWeight as exc:
        centroid = None
        centroid_error = str(exc)
    ped = pedal_polygon(poly, m)
    out = {
        "vertices": [[float(x), float(y)] for x, y in poly.vertices],
        "signed_area": area,
        "centroid": centroid,
        "centroid_error": centroid_error,
        "pole": [m[0], m[1]],
        "pedal_vertices": [[float(x), float(y)] for x, y in ped.vertices],
        "pedal_signed_area": polygon_signed_area(ped),
    }
    _emit(json.dumps(out, indent=2) + "\n", args.output)
    return 0


def cmd_conjecture(args) -> int:
    e = _ellipse(args)
    if args.n < 8:
        raise UsageProblem(f"--n must be >= 8, got {args.n}")
    tol = args.tol if args.tol is not None else _default_tol(1e-4)
    if args.m is not None:
        poles = [_parse_xy(args.m)]
    else:
        rng = np.random.default_rng(args.seed)
        poles = []
        while len(poles) < args.count:
            x = rng.uniform(-e.a, e.a)
            y = rng.uniform(-e.b, e.b)
            # interior with margin; off the axes so crossings stay transversal
            if e.implicit((x, y)) <= 0.92 and abs(x) > 0.05 * e.a and abs(y) > 0.05 * e.b:
                poles.append((float(x), float(y)))
    reports = [conjecture_check_contrapedal(e, m, n=args.n, tol=tol) for m in poles]
    ok = all(r.passed for r in reports)
    out = {"a": e.a, "b": e.b, "tol": tol, "passed": ok,
           "reports": [r.to_dict() for r in reports]}
    _emit(json.dumps(out, indent=2) + "\n", args.output)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# parser


def _add_ellipse(p):
    p.add_argument("--a", type=float, default=2.0, help="semi-major axis (default 2)")
    p.add_argument("--b", type=float, default=1.0, help="semi-minor axis (default 1)")


def _add_pole(p):
    p.add_argument("--m", type=str, default=None, help="pole as 'x,y'")
    p.add_argument("--s", type=float, default=None,
                   help="pole on the ellipse at parameter s (overrides --m)")


def _add_family(p, choices):
    p.add_argument("--family", choices=choices, default="pedal")
    p.add_argument("--theta", type=float, default=0.0,
                   help="line rotation / tangent crossing angle")
    p.add_argument("--mu", type=float, default=0.5, help="pedal-contrapedal blend")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pedallab",
        description="Numerical laboratory for pedal-type curves of an ellipse.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="dump curve samples as csv, json or svg")
    _add_ellipse(p)
    _add_pole(p)
    _add_family(p, FAMILIES)
    p.add_argument("--n", type=int, default=512, help="number of samples")
    p.add_argument("--offset", type=float, default=None,
                   help="fractional grid offset in [0, 1)")
    p.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    p.add_argument("--output", type=str, default=None)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("area", help="closed-form vs quadrature signed area")
    _add_ellipse(p)
    _add_pole(p)
    _add_family(p, FAMILIES)
    p.add_argument("--n", type=int, default=2048)
    p.add_argument("--offset", type=float, default=None)
    p.add_argument("--output", type=str, default=None)
    p.set_defaults(func=cmd_area)

    p = sub.add_parser("scan", help="area invariance over a pole locus")
    _add_ellipse(p)
    _add_family(p, SCAN_FAMILIES)
    p.add_argument("--locus", choices=("circle", "boundary"), required=True)
    p.add_argument("--r", type=float, default=1.0, help="circle locus radius")
    p.add_argument("--count", type=int, default=64, help="poles on the locus")
    p.add_argument("--phase", type=float, default=0.0, help="locus angular offset")
    p.add_argument("--n", type=int, default=2048)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--output", type=str, default=None, help="write the full JSON report")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("identities", help="pedal-family area identity suite")
    _add_ellipse(p)
    p.add_argument("--m", type=str, default="0.7,-0.4", help="pole as 'x,y'")
    p.add_argument("--n", type=int, default=2048)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", type=str, default=None)
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("centroid", help="curvature-weighted centroid of a curve")
    _add_ellipse(p)
    _add_pole(p)
    _add_family(p, FAMILIES)
    p.add_argument("--n", type=int, default=2048)
    p.add_argument("--offset", type=float, default=None)
    p.add_argument("--source", choices=("samples", "support"), default="samples")
    p.add_argument("--output", type=str, default=None)
    p.set_defaults(func=cmd_centroid)

    p = sub.add_parser("polygon", help="pedal polygon, area and centroid")
    p.add_argument("--vertices", type=str, required=True,
                   help="vertex list as 'x1,y1;x2,y2;...'")
    p.add_argument("--m", type=str, default="0,0", help="pole as 'x,y'")
    p.add_argument("--output", type=str, default=None)
    p.set_defaults(func=cmd_polygon)

    p = sub.add_parser("conjecture", help="contrapedal self-crossing location check")
    _add_ellipse(p)
    p.add_argument("--m", type=str, default=None,
                   help="pole as 'x,y'; omitted: random interior poles")
    p.add_argument("--count", type=int, default=10, help="random poles when --m is omitted")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=2048)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--output", type=str, default=None)
    p.set_defaults(func=cmd_conjecture)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageProblem as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except GeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
