"""JSON documents for drawings.

Rationals are written as ``"p/q"`` strings; vertices are ordered by id and
edges lexicographically, so serializing a parsed document reproduces it
byte for byte.
"""
from __future__ import annotations

import json
from pathlib import Path

from .drawing import Drawing
from .errors import ParseError, TopofaceError
from .geometry import Point, Polyline, format_rational, parse_rational


def drawing_to_dict(d: Drawing) -> dict:
    return {
        "complete": d.complete,
        "meta": {k: d.meta[k] for k in sorted(d.meta)},
        "vertices": [
            {"id": v, "x": format_rational(p.x), "y": format_rational(p.y)} for v, p in d.vertices.items()
        ],
        "edges": [
            {
                "u": u,
                "v": v,
                "polyline": [[format_rational(p.x), format_rational(p.y)] for p in line.points],
            }
            for (u, v), line in d.edges.items()
        ],
    }


def dumps_drawing(d: Drawing) -> str:
    return json.dumps(drawing_to_dict(d), indent=1) + "\n"


def _rational(value, where: str):
    try:
        return parse_rational(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{where}: bad rational {value!r}") from exc


def drawing_from_dict(doc) -> Drawing:
    if not isinstance(doc, dict) or "vertices" not in doc or "edges" not in doc:
        raise ParseError("document needs 'vertices' and 'edges'")
    try:
        verts = {}
        for item in doc["vertices"]:
            vid = int(item["id"])
            if vid in verts:
                raise ParseError(f"duplicate vertex id {vid}")
            verts[vid] = Point(_rational(item["x"], f"vertex {vid}"), _rational(item["y"], f"vertex {vid}"))
        edges = {}
        for item in doc["edges"]:
            u, v = int(item["u"]), int(item["v"])
            where = f"edge {u}-{v}"
            pts = tuple(Point(_rational(x, where), _rational(y, where)) for x, y in item["polyline"])
            edges[(u, v)] = Polyline(pts)
        return Drawing(verts, edges, complete=bool(doc.get("complete", False)), meta=dict(doc.get("meta", {})))
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError, TopofaceError) as exc:
        raise ParseError(str(exc)) from exc


def loads_drawing(text: str) -> Drawing:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not JSON: {exc}") from exc
    return drawing_from_dict(doc)


def read_drawing(path) -> Drawing:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(str(exc)) from exc
    return loads_drawing(text)


def write_drawing(d: Drawing, path) -> None:
    Path(path).write_text(dumps_drawing(d))
