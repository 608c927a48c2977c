"""Command-line front end.

Exit codes: 0 when every requested check passes, 1 when a check or an
extraction fails, 2 for usage or input-parsing problems.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import constructions
from .drawing import crossing_pattern, edge_key, validate_simple
from .errors import (
    BudgetExceeded,
    InvalidDrawing,
    IterationCapExceeded,
    LemmaViolation,
    NoPlane4Cycle,
    NotMutable,
    ParseError,
    TopofaceError,
)
from .faces import enumerate_plane_cycles, face_area, face_of_cycle
from .geometry import format_rational
from .interchange import dumps_drawing, read_drawing

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(payload, out: str | None = None) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=1) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# construct

def cmd_construct(args) -> int:
    if args.n is None or args.n < 1:
        raise UsageError("--n must be a positive integer")
    if args.kind == "random":
        d = constructions.random_straight_line(args.n, seed=args.seed)
    else:
        d = constructions.build(args.kind, args.n)
    if args.layout:
        if args.kind != "dn":
            raise UsageError("--layout is only available for dn drawings")
        _, layout = constructions.build_dn(args.n)
        Path(args.layout).write_text(json.dumps(_layout_json(layout), indent=1) + "\n")
    _emit(dumps_drawing(d), args.out)
    return EXIT_OK


def _layout_json(layout) -> dict:
    def poly(p):
        return [[format_rational(q.x), format_rational(q.y)] for q in p.vertices]

    return {
        "n": layout.n,
        "rectangles": [{"i": i, "polygon": poly(layout.rectangles[i])} for i in sorted(layout.rectangles)],
        "regions": [{"i": i, "polygon": poly(layout.regions[i])} for i in sorted(layout.regions)],
    }


# ---------------------------------------------------------------------------
# verify

def _check_simplicity(d, _arg, args):
    report = validate_simple(d)
    return report.passed, report.to_json()


def _check_pattern(d, kind, args):
    if kind not in constructions.PREDICATES:
        raise UsageError(f"unknown pattern {kind!r}; expected one of {sorted(constructions.PREDICATES)}")
    pattern = crossing_pattern(d)
    bad = constructions.pattern_mismatches(pattern, constructions.PREDICATES[kind])
    return not bad, {"mismatches": [[list(e), list(f)] for e, f in bad]}


def _check_heilbronn_lower(d, _arg, args):
    n = d.n
    bound = Fraction(1, 3 * n)
    lengths = [args.k] if args.k else list(range(3, n + 1))
    smallest, where, low = None, None, []
    for k in lengths:
        for c in enumerate_plane_cycles(d, k, budget=args.budget):
            a = face_area(face_of_cycle(c))
            if smallest is None or a < smallest:
                smallest, where = a, list(c.vertices)
            if a < bound:
                low.append(list(c.vertices))
    detail = {
        "bound": format_rational(bound),
        "min_area": format_rational(smallest) if smallest is not None else None,
        "min_cycle": where,
        "below_bound": low,
    }
    return not low, detail


def _check_naive(d, _arg, args):
    from .oracles import naive_crossing_check

    same = naive_crossing_check(d) == crossing_pattern(d)
    return same, {"agrees": same}


CHECKS = {
    "simplicity": _check_simplicity,
    "pattern": _check_pattern,
    "heilbronn-lower": _check_heilbronn_lower,
    "naive": _check_naive,
}


def cmd_verify(args) -> int:
    d = read_drawing(args.file)
    results = []
    for item in [s.strip() for s in args.checks.split(",") if s.strip()]:
        name, _, arg = item.partition("=")
        if name not in CHECKS:
            raise UsageError(f"unknown check {name!r}")
        if name == "pattern" and not arg:
            raise UsageError("pattern check needs a kind, e.g. pattern=dn")
        if name != "simplicity" and not validate_simple(d).passed:
            results.append({"check": item, "passed": False, "detail": {"reason": "drawing is not simple"}})
            continue
        passed, detail = CHECKS[name](d, arg, args)
        results.append({"check": item, "passed": passed, "detail": detail})
    ok = all(r["passed"] for r in results)
    _emit({"file": str(args.file), "passed": ok, "checks": results}, args.out)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# extract

def _kfaces(d, k):
    from .extremal import disjoint_kfaces_convex, disjoint_kfaces_twisted

    kind, m = d.meta.get("kind"), d.n
    if kind == "cm":
        return disjoint_kfaces_convex(m, k, d)
    if kind == "tm":
        return disjoint_kfaces_twisted(m, k, d)
    raise UsageError("--k extraction needs a convex (cm) or twisted (tm) drawing")


def cmd_extract(args) -> int:
    from .extremal import disjoint_4faces

    d = read_drawing(args.file)
    if not validate_simple(d).passed:
        _emit({"error": "InvalidDrawing", "message": "drawing is not simple"}, args.out)
        return EXIT_FAIL
    if args.k:
        faces = _kfaces(d, args.k)
        payload = {"k": args.k, "faces": [f.to_json(d) for f in faces]}
        polys = [f.boundary.vertices for f in faces]
        status = EXIT_OK
    else:
        try:
            cells, cert = disjoint_4faces(d, budget=args.budget)
        except (NoPlane4Cycle, LemmaViolation, IterationCapExceeded) as exc:
            _emit({"error": type(exc).__name__, "message": str(exc)}, args.out)
            return EXIT_FAIL
        problems = cert.problems() + cells.problems()
        payload = {
            "cells": cells.to_json(),
            "summary": {
                "n": d.n,
                "cells": len(cells),
                "bounded_cells": len(cells.bounded),
                "iterations": cert.iterations,
                "problems": problems,
            },
        }
        if args.certificate:
            Path(args.certificate).write_text(json.dumps(cert.to_json(), indent=1) + "\n")
        polys = [c.boundary.vertices for c in cells.bounded]
        status = EXIT_FAIL if problems else EXIT_OK
    if args.figure:
        _figure(d, args.figure, polys, [])
    _emit(payload, args.out)
    return status


# ---------------------------------------------------------------------------
# mutate

def _parse_edges(text: str):
    try:
        out = []
        for part in text.split(","):
            u, v = part.strip().split("-")
            out.append(edge_key(int(u), int(v)))
    except ValueError as exc:
        raise UsageError(f"bad edge list {text!r}; expected like 1-3,2-5,4-6") from exc
    if len(out) != 3:
        raise UsageError("mutation needs exactly three edges")
    return out


def cmd_mutate(args) -> int:
    from .extremal import find_mutable_triples, triangle_mutation

    d = read_drawing(args.file)
    if args.list:
        triples = find_mutable_triples(d)
        _emit({"mutable": [[list(e) for e in t] for t in triples]}, args.out)
        return EXIT_OK
    if not args.edges:
        raise UsageError("give --edges or --list")
    e1, e2, e3 = _parse_edges(args.edges)
    try:
        mutated = triangle_mutation(d, e1, e2, e3)
    except NotMutable as exc:
        _emit({"error": "NotMutable", "condition": exc.condition}, None)
        return EXIT_FAIL
    _emit(dumps_drawing(mutated), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# oracle

def cmd_oracle(args) -> int:
    from . import oracles

    d = read_drawing(args.file)
    try:
        if args.what == "crossings":
            pattern = oracles.naive_crossing_check(d)
            payload = dict(pattern.to_json(), agrees=(pattern == crossing_pattern(d)))
        elif args.what == "max-disjoint":
            res = oracles.max_disjoint_4faces_exact(d, budget=args.budget)
            payload = {"value": res.value, "witness": [list(c) for c in res.witness], "faces": res.faces}
        else:
            payload = {"min_area": format_rational(oracles.min_4face_area(d))}
    except (NoPlane4Cycle, InvalidDrawing) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, args.out)
        return EXIT_FAIL
    _emit(payload, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# render

def _overlay_polys(d, overlays):
    faces, rects = [], []
    if overlays == "faces":
        from .extremal import disjoint_4faces

        cells, _ = disjoint_4faces(d)
        faces = [c.boundary.vertices for c in cells.bounded]
    elif overlays == "rects":
        if d.meta.get("kind") != "dn":
            raise UsageError("rectangle overlay needs a dn drawing")
        _, layout = constructions.build_dn(d.n)
        if dict(layout.drawing.vertices) != dict(d.vertices):
            raise UsageError("drawing does not match the dn layout")
        rects = [layout.rectangles[i].vertices for i in sorted(layout.rectangles)]
    return faces, rects


def _figure(d, out, faces, rects):
    if str(out).lower().endswith(".svg"):
        from .svg import render_svg

        Path(out).write_text(render_svg(d, faces, rects))
    else:
        from .plotting import render_figure

        render_figure(d, out, faces, rects)


def cmd_render(args) -> int:
    d = read_drawing(args.file)
    faces, rects = _overlay_polys(d, args.overlays)
    _figure(d, args.out, faces, rects)
    return EXIT_OK


# ---------------------------------------------------------------------------
# report

REPORT_COLUMNS = [
    "family", "n", "crossing_pairs", "plane_4cycles", "cells", "bounded_cells",
    "iterations", "min_4face_area", "min_4face_area_float", "lower_bound", "certificate_ok",
]


def cmd_report(args) -> int:
    """Sweep the construction families and write a CSV table plus figures."""
    import csv

    from .extremal import disjoint_4faces
    from .plotting import render_figure, render_summary

    outdir = Path(args.out or "report")
    outdir.mkdir(parents=True, exist_ok=True)
    rows = []
    for family in args.families.split(","):
        for n in range(4, args.n + 1):
            if family == "random":
                d = constructions.random_straight_line(n, seed=args.seed)
            else:
                d = constructions.build(family, n)
            cycles = enumerate_plane_cycles(d, 4, budget=args.budget)
            cells, cert = disjoint_4faces(d, budget=args.budget)
            smallest = min(face_area(face_of_cycle(c)) for c in cycles)
            rows.append({
                "family": family,
                "n": n,
                "crossing_pairs": len(crossing_pattern(d).crosses),
                "plane_4cycles": len(cycles),
                "cells": len(cells),
                "bounded_cells": len(cells.bounded),
                "iterations": cert.iterations,
                "min_4face_area": format_rational(smallest),
                "min_4face_area_float": f"{float(smallest):.9g}",
                "lower_bound": format_rational(Fraction(1, 3 * n)) if family == "dn" else "",
                "certificate_ok": not (cert.problems() or cells.problems()),
            })
            if n == args.n:
                polys = [c.boundary.vertices for c in cells.bounded]
                render_figure(d, outdir / f"{family}{n}_cells.png", polys, title=f"{family} n={n}")
    with open(outdir / "summary.csv", "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=REPORT_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    render_summary(rows, outdir / "summary.png")
    ok = all(r["certificate_ok"] for r in rows)
    print(f"wrote {len(rows)} rows to {outdir / 'summary.csv'}")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="topoface", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=None, help="enumeration budget (pair checks / search nodes)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a dn, cm, tm or random drawing")
    p.add_argument("kind", choices=["dn", "cm", "tm", "random"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--layout", default=None, help="dn only: also write rectangles and regions as JSON here")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="run checks on a drawing file")
    p.add_argument("file")
    p.add_argument("--checks", default="simplicity", help="comma list: simplicity, pattern=KIND, heilbronn-lower, naive")
    p.add_argument("--k", type=int, default=None, help="cycle length for heilbronn-lower (default: all)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("extract", parents=[common], help="disjoint 4-faces with certificate, or k-faces with --k")
    p.add_argument("file")
    p.add_argument("--certificate", default=None, help="write the certificate JSON here")
    p.add_argument("--figure", default=None, help="render the extracted faces (.svg, .png, .pdf)")
    p.add_argument("--k", type=int, default=None)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("mutate", parents=[common], help="reroute an edge across a crossing")
    p.add_argument("file")
    p.add_argument("--edges", default=None, help="e1,e2,e3 as u-v pairs; e1 is moved")
    p.add_argument("--list", action="store_true", help="list mutable triples instead")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("oracle", parents=[common], help="brute-force ground truth")
    p.add_argument("file")
    p.add_argument("--what", choices=["max-disjoint", "min-area", "crossings"], default="max-disjoint")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("render", parents=[common], help="draw a drawing file")
    p.add_argument("file")
    p.add_argument("--overlays", choices=["faces", "rects", "none"], default="none")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("report", parents=[common], help="CSV sweep over the families with figures")
    p.add_argument("--n", type=int, default=8, help="largest size in the sweep")
    p.add_argument("--families", default="cm,dn,tm,random")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget is not None:
        os.environ["TOPOFACE_BUDGET"] = str(args.budget)
    if args.command == "render" and not args.out:
        parser.error("render needs --out")
    try:
        return args.func(args)
    except (UsageError, ParseError) as exc:
        print(f"topoface: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"topoface: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except TopofaceError as exc:
        print(f"topoface: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
