"""SVG rendering of tilings, optionally overlaid with their digital model."""
from __future__ import annotations

from xml.sax.saxutils import quoteattr

from .complex_core import ArcTiling1D, CellComplex2
from .digital_space import Graph, _sort_key

__all__ = ["face_polygon", "render_svg"]

_PALETTE = ("#e8d5b7", "#c9dbe8", "#d7e8c9", "#e8c9d9", "#e0e0c0", "#c9e8e3")


def _unroll(p, q, period):
    """Representative of ``q`` closest to ``p`` on the torus."""
    if period is None:
        return q
    (px, py), (qx, qy) = p, q
    W, H = period
    qx += W * round((px - qx) / W)
    qy += H * round((py - qy) / H)
    return (qx, qy)


def face_polygon(C: CellComplex2, f) -> list[tuple[float, float]]:
    """Render coordinates of face ``f``: walk vertices plus edge bend points,
    unrolled across the torus seam when needed."""
    period = C.period if C.torus else None
    pts: list[tuple[float, float]] = []
    for d in C.faces[f]:
        a, b = C.endpoints(d)
        edge = C.edges[d.edge]
        chain = [C.vertices[a], *(edge.bend if d.forward else reversed(edge.bend))]
        for q in chain:
            pts.append(_unroll(pts[-1], q, period) if pts else q)
    return pts


def _centroid(pts):
    n = len(pts)
    return sum(p[0] for p in pts) / n, sum(p[1] for p in pts) / n


def render_svg(T, model: Graph | None = None, scale: float = 10.0, margin: float = 10.0) -> str:
    """SVG with one ``<polygon>`` per face and, when ``model`` is given, one
    ``<circle>`` per model point and one ``<line>`` per model edge."""
    if isinstance(T, ArcTiling1D):
        return _render_arcs(T, model, scale, margin)
    polys = {f: face_polygon(T, f) for f in T.faces}
    xs = [p[0] for pts in polys.values() for p in pts] or [0]
    ys = [p[1] for pts in polys.values() for p in pts] or [0]
    x0, y0 = min(xs), min(ys)
    w = (max(xs) - x0) * scale + 2 * margin
    h = (max(ys) - y0) * scale + 2 * margin

    def tx(p):
        return ((p[0] - x0) * scale + margin, (p[1] - y0) * scale + margin)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1f}" height="{h:.1f}" '
        f'viewBox="0 0 {w:.1f} {h:.1f}">',
        '<g class="tiles" stroke="#333" stroke-width="1">',
    ]
    centers = {}
    for i, f in enumerate(sorted(T.faces, key=_sort_key)):
        pts = [tx(p) for p in polys[f]]
        centers[f] = _centroid(pts)
        attr = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
        out.append(
            f'<polygon data-face={quoteattr(str(f))} points="{attr}" '
            f'fill="{_PALETTE[i % len(_PALETTE)]}"/>'
        )
    out.append("</g>")
    if model is not None:
        out += _model_layer(model, centers)
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _model_layer(model: Graph, centers: dict) -> list[str]:
    out = ['<g class="model" stroke="#b22" stroke-width="1.5">']
    for u, v in model.sorted_edges():
        (x1, y1), (x2, y2) = centers[u], centers[v]
        out.append(f'<line data-edge={quoteattr(f"{u}-{v}")} x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}"/>')
    out.append("</g>")
    out.append('<g class="model-points" fill="#b22">')
    for p in model.sorted_points():
        x, y = centers[p]
        out.append(f'<circle data-point={quoteattr(str(p))} cx="{x:.2f}" cy="{y:.2f}" r="3"/>')
    out.append("</g>")
    return out


def _render_arcs(T: ArcTiling1D, model, scale, margin) -> str:
    import math

    k = len(T.arcs)
    R = 20 * scale
    size = 2 * R + 2 * margin
    c = size / 2
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size:.1f}" height="{size:.1f}">',
        '<g class="arcs" fill="none" stroke-width="4">',
    ]
    centers = {}
    closed = T.kind.value == "circle"
    for i in range(k):
        if closed:
            a0, a1 = 2 * math.pi * i / k, 2 * math.pi * (i + 1) / k
            sweep = [a0 + (a1 - a0) * t / 16 for t in range(17)]
            pts = [(c + R * math.cos(a), c + R * math.sin(a)) for a in sweep]
        else:
            x0 = margin + 2 * R * i / k
            x1 = margin + 2 * R * (i + 1) / k
            pts = [(x0, c), (x1, c)]
        centers[i] = pts[len(pts) // 2]
        attr = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
        out.append(f'<polyline data-face="{i}" points="{attr}" stroke="{_PALETTE[i % len(_PALETTE)]}"/>')
    out.append("</g>")
    if model is not None:
        out += _model_layer(model, centers)
    out.append("</svg>")
    return "\n".join(out) + "\n"
