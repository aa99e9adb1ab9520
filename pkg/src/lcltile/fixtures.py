"""Hand-encoded collections of 1-tiles and 2-tiles with known verdicts.

``ARC_PANELS`` holds collections of arcs and ``TILE_PANELS`` collections of
planar tiles.  Each entry maps a panel letter to ``(builder, verdict)``
where verdict is one of ``"LC-only"``, ``"LL-only"``, ``"LCL"``.
"""
from __future__ import annotations

from .complex_core import ArcCollection
from .grid_forge import _from_polygons, _rows_complex
from .lcl_checker import LclReport

__all__ = ["ARC_PANELS", "TILE_PANELS", "verdict"]


def verdict(report: LclReport) -> str:
    if report.lc_ok and report.ll_ok:
        return "LCL"
    if report.lc_ok:
        return "LC-only"
    if report.ll_ok:
        return "LL-only"
    return "neither"


def _polys(*polys):
    coords = {p: p for poly in polys for p in poly}
    return _from_polygons([list(p) for p in polys], coords)[0]


# ----------------------------------------------------------------- 1-tiles

def arcs_star():
    """Three arcs sharing one end: pairwise they meet at an end point, but
    the common point of all three is not allowed."""
    return ArcCollection({"A": ("c", "a"), "B": ("c", "b"), "C": ("c", "d")})


def arcs_triangle():
    """Three arcs closing a triangle: pairwise meeting, no common point."""
    return ArcCollection({"A": ("p", "q"), "B": ("q", "r"), "C": ("r", "p")})


def arcs_pair():
    return ArcCollection({"A": ("a", "b"), "B": ("b", "c")})


def arcs_chain():
    return ArcCollection({"A": (0, 1, 2), "B": (2, 3), "C": (3, 4, 5), "D": (5, 6)})


def arcs_pentagon():
    return ArcCollection({i: (i, (i + 1) % 5) for i in range(5)})


ARC_PANELS = {
    "a": (arcs_star, "LC-only"),
    "b": (arcs_triangle, "LL-only"),
    "c": (arcs_pair, "LCL"),
    "d": (arcs_chain, "LCL"),
    "e": (arcs_pentagon, "LCL"),
}


# ----------------------------------------------------------------- 2-tiles

def tiles_ring_of_three():
    """Three quadrilaterals around a triangular hole.  Neighbours share an
    edge, but no point is common to all three."""
    q0, q1, q2 = (0, 0), (12, 0), (6, 10)
    p0, p1, p2 = (4, 3), (8, 3), (6, 6)
    return _polys((q0, q1, p1, p0), (q1, q2, p2, p1), (q2, q0, p0, p2))


def tiles_corner_touch():
    """Two squares meeting at a single corner point."""
    return _polys(((0, 0), (4, 0), (4, 4), (0, 4)), ((4, 4), (8, 4), (8, 8), (4, 8)))


def tiles_shared_edge():
    return _polys(((0, 0), (4, 0), (4, 4), (0, 4)), ((4, 0), (8, 0), (8, 4), (4, 4)))


def tiles_t_junction():
    return _polys(
        ((0, 0), (8, 0), (8, 4), (4, 4), (0, 4)),
        ((0, 4), (4, 4), (4, 8), (0, 8)),
        ((4, 4), (8, 4), (8, 8), (4, 8)),
    )


def tiles_ring_of_six():
    """A brick surrounded by six neighbours."""
    return _rows_complex([(0, 4, [8]), (4, 8, [4, 12]), (8, 12, [8])], 16)[0]


TILE_PANELS = {
    "a": (tiles_ring_of_three, "LL-only"),
    "b": (tiles_corner_touch, "LC-only"),
    "c": (tiles_shared_edge, "LCL"),
    "d": (tiles_t_junction, "LCL"),
    "e": (tiles_ring_of_six, "LCL"),
}
