"""Readers and writers for tiling documents, graph edge lists and DOT.

See FORMATS.md at the repository root for the exact layouts.
"""
from __future__ import annotations

import json
from typing import Any

from .complex_core import ArcTiling1D, CellComplex2, ComplexError, TilingKind, build_complex
from .digital_space import Graph, _sort_key

__all__ = [
    "FormatError",
    "dumps_tiling",
    "from_edge_list",
    "loads_tiling",
    "to_dot",
    "to_edge_list",
    "tiling_to_dict",
]

TILING_FORMAT = "lcl-tiling/1"
ARCS_FORMAT = "lcl-arcs/1"


class FormatError(ValueError):
    """Malformed input; the message starts with the offending location."""


def tiling_to_dict(T: CellComplex2 | ArcTiling1D) -> dict[str, Any]:
    if isinstance(T, ArcTiling1D):
        return {
            "format": ARCS_FORMAT,
            "kind": T.kind.value,
            "breakpoints": list(T.breakpoints),
            "arcs": [list(a) for a in T.arcs],
        }
    doc: dict[str, Any] = {
        "format": TILING_FORMAT,
        "torus": T.torus,
        "vertices": [{"id": v, "x": x, "y": y} for v, (x, y) in T.vertices.items()],
        "edges": [],
        "faces": [
            {"id": f, "edges": [[d.edge, 1 if d.forward else -1] for d in walk]}
            for f, walk in T.faces.items()
        ],
    }
    for e, edge in T.edges.items():
        item: dict[str, Any] = {"id": e, "a": edge.a, "b": edge.b}
        if edge.bend:
            item["bend"] = [list(p) for p in edge.bend]
        doc["edges"].append(item)
    if T.period is not None:
        doc["period"] = list(T.period)
    return doc


def _compact_json(doc: dict) -> str:
    # one table row per line keeps large tilings diffable
    lines = ["{"]
    keys = list(doc)
    for i, k in enumerate(keys):
        comma = "," if i < len(keys) - 1 else ""
        v = doc[k]
        if isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"  {json.dumps(k)}: [")
            for j, row in enumerate(v):
                rc = "," if j < len(v) - 1 else ""
                lines.append(f"    {json.dumps(row, separators=(', ', ': '))}{rc}")
            lines.append(f"  ]{comma}")
        else:
            lines.append(f"  {json.dumps(k)}: {json.dumps(v)}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps_tiling(T: CellComplex2 | ArcTiling1D) -> str:
    return _compact_json(tiling_to_dict(T))


def _need(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise FormatError(f"{where}: missing key {key!r}")
    return obj[key]


def _int(value, where) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(f"{where}: expected an integer, got {value!r}")
    return value


def _id(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise FormatError(f"{where}: ids must be integers or strings, got {value!r}")
    return value


def loads_tiling(text: str, source: str = "<tiling>") -> CellComplex2 | ArcTiling1D:
    """Parse a tiling document; errors carry ``source`` and a location."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise FormatError(f"{source}: top level must be an object")
    fmt = doc.get("format", ARCS_FORMAT if "kind" in doc else TILING_FORMAT)
    if fmt == ARCS_FORMAT:
        try:
            kind = TilingKind(_need(doc, "kind", source))
        except ValueError:
            raise FormatError(f"{source}: kind must be 'circle' or 'segment'") from None
        bps = [_id(b, f"{source}: breakpoints[{i}]") for i, b in enumerate(_need(doc, "breakpoints", source))]
        arcs = _need(doc, "arcs", source)
        try:
            return ArcTiling1D(kind, tuple(bps), tuple(tuple(a) for a in arcs))
        except (ValueError, TypeError) as exc:
            raise FormatError(f"{source}: {exc}") from None
    if fmt != TILING_FORMAT:
        raise FormatError(f"{source}: unknown format {fmt!r}")

    vertices, edges, faces = {}, {}, {}
    for i, v in enumerate(_need(doc, "vertices", source)):
        where = f"{source}: vertices[{i}]"
        vid = _id(_need(v, "id", where), where)
        if vid in vertices:
            raise FormatError(f"{where}: duplicate vertex id {vid!r}")
        vertices[vid] = (_int(_need(v, "x", where), where + ".x"), _int(_need(v, "y", where), where + ".y"))
    for i, e in enumerate(_need(doc, "edges", source)):
        where = f"{source}: edges[{i}]"
        eid = _id(_need(e, "id", where), where)
        if eid in edges:
            raise FormatError(f"{where}: duplicate edge id {eid!r}")
        bend = e.get("bend", [])
        try:
            bend = tuple((_int(p[0], where), _int(p[1], where)) for p in bend)
        except (TypeError, IndexError, KeyError):
            raise FormatError(f"{where}.bend: expected a list of [x, y] points") from None
        edges[eid] = (_id(_need(e, "a", where), where + ".a"), _id(_need(e, "b", where), where + ".b"), bend)
    for i, f in enumerate(_need(doc, "faces", source)):
        where = f"{source}: faces[{i}]"
        fid = _id(_need(f, "id", where), where)
        if fid in faces:
            raise FormatError(f"{where}: duplicate face id {fid!r}")
        walk = []
        for j, ref in enumerate(_need(f, "edges", where)):
            if not (isinstance(ref, list) and len(ref) == 2 and ref[1] in (1, -1)):
                raise FormatError(f"{where}.edges[{j}]: expected [edge_id, 1 | -1]")
            walk.append((_id(ref[0], f"{where}.edges[{j}]"), ref[1] == 1))
        faces[fid] = walk
    torus = doc.get("torus", False)
    if not isinstance(torus, bool):
        raise FormatError(f"{source}: torus must be true or false")
    period = doc.get("period")
    try:
        return build_complex(vertices, edges, faces, torus=torus, period=period)
    except ComplexError as exc:
        raise FormatError(f"{source}: {exc}") from None


def to_edge_list(G: Graph, comment: str | None = None) -> str:
    """``p N`` header then one ``u v`` line per edge, points numbered 0..N-1.

    Graphs whose points are not exactly ``0..N-1`` are renumbered in sorted
    point order and the original ids are listed on ``c label`` lines.
    """
    pts = G.sorted_points()
    identity = pts == list(range(len(pts)))
    index = {p: i for i, p in enumerate(pts)}
    lines = []
    if comment:
        lines += [f"c {line}" for line in comment.splitlines()]
    lines.append(f"p {len(pts)}")
    if not identity:
        lines += [f"c label {i} {p}" for i, p in enumerate(pts)]
    edges = sorted((min(index[u], index[v]), max(index[u], index[v])) for u, v in G.sorted_edges())
    lines += [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def from_edge_list(text: str, source: str = "<edges>") -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        where = f"{source}:{lineno}"
        if parts[0] == "p":
            if n is not None:
                raise FormatError(f"{where}: second 'p' header")
            if len(parts) != 2 or not parts[1].isdigit():
                raise FormatError(f"{where}: expected 'p N'")
            n = int(parts[1])
            continue
        if n is None:
            raise FormatError(f"{where}: edge before the 'p N' header")
        if len(parts) != 2 or not all(t.isdigit() for t in parts):
            raise FormatError(f"{where}: expected 'u v'")
        u, v = int(parts[0]), int(parts[1])
        if u >= n or v >= n:
            raise FormatError(f"{where}: point out of range 0..{n - 1}")
        if u == v:
            raise FormatError(f"{where}: loop at {u}")
        edges.append((u, v))
    if n is None:
        raise FormatError(f"{source}: missing 'p N' header")
    return Graph(range(n), edges)


def to_dot(G: Graph, name: str = "model") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {json.dumps(str(p))};" for p in G.sorted_points()]
    lines += [f"  {json.dumps(str(u))} -- {json.dumps(str(v))};" for u, v in G.sorted_edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def report_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False, default=_sort_default) + "\n"


def _sort_default(o):
    if isinstance(o, (set, frozenset)):
        return sorted(o, key=_sort_key)
    raise TypeError(f"cannot serialise {type(o).__name__}")
