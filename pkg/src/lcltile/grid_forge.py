"""Tiling generators: brick, hexagonal, truncated-square, 1D arc tilings,
the invalid four-corner square grid, and graded (variable density) bricks.

All generators are deterministic and share one polygon-soup assembler;
none of them consults the intersection logic used by the checkers.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence

import numpy as np

from .complex_core import ArcTiling1D, CellComplex2, TilingKind, build_complex

__all__ = [
    "DensityField",
    "DensityTooFine",
    "DomainTooSmall",
    "TooSmall",
    "UnresolvableCollision",
    "gen_brick",
    "gen_circle_arcs",
    "gen_graded_brick",
    "gen_hex",
    "gen_segment_arcs",
    "gen_square4",
    "gen_trunc_square",
    "graded_rows",
]

MIN_TILE_WIDTH = 2


class TooSmall(ValueError):
    pass


class DensityTooFine(ValueError):
    pass


class DomainTooSmall(ValueError):
    pass


class UnresolvableCollision(RuntimeError):
    pass


def _from_polygons(
    polygons: Sequence[Sequence[Hashable]],
    coords: dict[Hashable, tuple[int, int]],
    torus: bool = False,
    period: tuple[int, int] | None = None,
) -> tuple[CellComplex2, frozenset]:
    """Assemble a complex from faces given as cyclic vertex-key sequences.

    Vertex ids follow ``(y, x, key)`` order, edge ids follow sorted endpoint
    ids, face ids follow ``polygons`` order.
    """
    keys = sorted(coords, key=lambda k: (coords[k][1], coords[k][0], repr(k)))
    vid = {k: i for i, k in enumerate(keys)}
    pairs = set()
    for poly in polygons:
        ids = [vid[k] for k in poly]
        for a, b in zip(ids, ids[1:] + ids[:1]):
            pairs.add((min(a, b), max(a, b)))
    eid = {p: i for i, p in enumerate(sorted(pairs))}
    faces = {}
    for f, poly in enumerate(polygons):
        ids = [vid[k] for k in poly]
        walk = []
        for a, b in zip(ids, ids[1:] + ids[:1]):
            walk.append((eid[(min(a, b), max(a, b))], a < b))
        faces[f] = walk
    C = build_complex(
        {vid[k]: coords[k] for k in keys},
        {i: p for p, i in eid.items()},
        faces,
        torus=torus,
        period=period,
    )
    return C, frozenset(C.faces)


# ---------------------------------------------------------------------------
# row-based sheets (brick and graded brick)


def _rows_complex(rows: Sequence[tuple[int, int, Sequence[int]]], width: int):
    """Sheet of horizontal rows ``(y0, y1, interior_cuts)`` over ``[0, width]``."""
    lines: dict[int, set[int]] = {}
    for y0, y1, cuts in rows:
        for y in (y0, y1):
            lines.setdefault(y, {0, width}).update(cuts)
    polygons = []
    for y0, y1, cuts in rows:
        xs = [0, *cuts, width]
        bottom = sorted(lines[y0])
        top = sorted(lines[y1])
        for xa, xb in zip(xs, xs[1:]):
            poly = [(x, y0) for x in bottom if xa <= x <= xb]
            poly += [(x, y1) for x in reversed(top) if xa <= x <= xb]
            polygons.append(poly)
    coords = {(x, y): (x, y) for y, xs in lines.items() for x in xs}
    return _from_polygons(polygons, coords)


def _offset_rows_torus(cols: int, rows: int, place) -> tuple[CellComplex2, frozenset]:
    """Torus of ``rows`` rows of ``cols`` hexagonal cells, alternate rows
    offset by half a cell.  An odd row count is closed with a half-cell twist
    so that no corner lines up with the corner of the row across the seam.
    """
    n = 2 * cols

    def key(line: int, p: int):
        if line == rows:
            line, p = 0, p - (rows % 2)
        return (line, p % n)

    polygons = []
    for r in range(rows):
        for c in range(cols):
            p0 = (r % 2) + 2 * c
            polygons.append(
                [key(r, p0), key(r, p0 + 1), key(r, p0 + 2),
                 key(r + 1, p0 + 2), key(r + 1, p0 + 1), key(r + 1, p0)]
            )
    coords = {(line, p): place(line, p) for line in range(rows) for p in range(n)}
    return coords, polygons


def gen_brick(cols: int, rows: int, torus: bool = False, width: int = 4, height: int = 2):
    """Brick wall: rows of ``width``-by-``height`` bricks, alternate rows shifted
    by half a brick.  Open sheets close the shifted rows with half bricks so
    the wall is a rectangle."""
    if width < 2 or width % 2 or height < 1:
        raise ValueError("brick width must be even and at least 2; height at least 1")
    if torus:
        if cols < 3 or rows < 3:
            raise TooSmall("torus brick tilings need at least 3 columns and 3 rows")
        coords, polys = _offset_rows_torus(cols, rows, lambda line, p: (p * width // 2, line * height))
        return _from_polygons(polys, coords, torus=True, period=(cols * width, rows * height))
    if cols < 1 or rows < 1:
        raise TooSmall("need at least one column and one row")
    W = cols * width
    out = []
    for r in range(rows):
        if r % 2:
            cuts = [width // 2 + k * width for k in range(cols)]
        else:
            cuts = [k * width for k in range(1, cols)]
        out.append((r * height, (r + 1) * height, cuts))
    return _rows_complex(out, W)


def gen_hex(cols: int, rows: int, torus: bool = False):
    """Pointy-top hexagons in offset rows (integer approximation of the
    regular hexagon: width 6, side 4)."""

    def place(line: int, p: int) -> tuple[int, int]:
        return (3 * p, 6 * line + (2 if p % 2 == line % 2 else 0))

    if torus:
        if cols < 3 or rows < 3:
            raise TooSmall("torus hex tilings need at least 3 columns and 3 rows")
        coords, polys = _offset_rows_torus(cols, rows, place)
        return _from_polygons(polys, coords, torus=True, period=(6 * cols, 6 * rows))
    if cols < 1 or rows < 1:
        raise TooSmall("need at least one column and one row")
    polys = []
    used = set()
    for r in range(rows):
        for c in range(cols):
            p0 = (r % 2) + 2 * c
            poly = [(r, p0), (r, p0 + 1), (r, p0 + 2), (r + 1, p0 + 2), (r + 1, p0 + 1), (r + 1, p0)]
            used.update(poly)
            polys.append(poly)
    return _from_polygons(polys, {k: place(*k) for k in used})


def gen_trunc_square(m: int, n: int, torus: bool = False):
    """Truncated square tiling: octagons on an ``m``-by-``n`` lattice of 6-unit
    cells with diamond squares at the lattice corners."""
    if m < 2 or n < 2:
        raise TooSmall("truncated-square tilings need m, n >= 2")
    W, H = 6 * m, 6 * n

    def k(x: int, y: int):
        return (x % W, y % H) if torus else (x, y)

    polys = []
    for j in range(n):
        for i in range(m):
            x, y = 6 * i, 6 * j
            polys.append([k(x + 2, y), k(x + 4, y), k(x + 6, y + 2), k(x + 6, y + 4),
                          k(x + 4, y + 6), k(x + 2, y + 6), k(x, y + 4), k(x, y + 2)])
    sq_i = range(m) if torus else range(m - 1)
    sq_j = range(n) if torus else range(n - 1)
    for j in sq_j:
        for i in sq_i:
            cx, cy = 6 * i + 6, 6 * j + 6
            polys.append([k(cx, cy - 2), k(cx + 2, cy), k(cx, cy + 2), k(cx - 2, cy)])
    coords = {v: v for poly in polys for v in poly}
    return _from_polygons(polys, coords, torus=torus, period=(W, H) if torus else None)


def gen_square4(cols: int, rows: int, size: int = 4):
    """Axis-aligned square grid.  Interior corners are shared by four tiles,
    so any grid with at least two rows and two columns is not LCL."""
    if cols < 1 or rows < 1 or cols * rows < 2:
        raise TooSmall("need at least two squares")
    polys = [
        [(i * size, j * size), ((i + 1) * size, j * size),
         ((i + 1) * size, (j + 1) * size), (i * size, (j + 1) * size)]
        for j in range(rows) for i in range(cols)
    ]
    coords = {v: v for poly in polys for v in poly}
    return _from_polygons(polys, coords)


def gen_circle_arcs(k: int) -> ArcTiling1D:
    if k < 1:
        raise TooSmall("need at least one arc")
    return ArcTiling1D.from_breakpoints(TilingKind.Circle, range(k))


def gen_segment_arcs(k: int) -> ArcTiling1D:
    if k < 1:
        raise TooSmall("need at least one arc")
    return ArcTiling1D.from_breakpoints(TilingKind.Segment, range(k + 1))


# ---------------------------------------------------------------------------
# graded brick


@dataclass(frozen=True, eq=False)
class DensityField:
    """Per-unit refinement levels over a ``width`` x ``height`` domain.

    ``level[y, x]`` is the level of the unit cell ``[x, x+1) x [y, y+1)``; a
    level-``l`` tile is ``base_size // ratio**l`` units wide.
    """

    level: np.ndarray
    base_size: int
    ratio: int = 2

    def __post_init__(self):
        lev = np.asarray(self.level, dtype=np.int64)
        if lev.ndim != 2 or lev.size == 0:
            raise ValueError("level map must be a non-empty 2D array")
        if lev.min() < 0:
            raise ValueError("levels must be non-negative")
        if self.ratio < 2:
            raise ValueError("ratio must be at least 2")
        lev.setflags(write=False)
        object.__setattr__(self, "level", lev)
        if self.size(int(lev.max())) < MIN_TILE_WIDTH:
            raise DensityTooFine(
                f"base_size {self.base_size} / ratio {self.ratio}**{int(lev.max())} "
                f"is below the minimum tile width {MIN_TILE_WIDTH}"
            )

    @classmethod
    def uniform(cls, width: int, height: int, base_size: int, ratio: int = 2, level: int = 0):
        return cls(np.full((height, width), level, dtype=np.int64), base_size, ratio)

    @property
    def width(self) -> int:
        return int(self.level.shape[1])

    @property
    def height(self) -> int:
        return int(self.level.shape[0])

    @property
    def max_level(self) -> int:
        return int(self.level.max())

    def size(self, lev: int) -> int:
        return self.base_size // self.ratio**lev


@dataclass(frozen=True)
class GradedRow:
    y0: int
    y1: int
    level: int
    cuts: tuple[int, ...]
    tile_levels: tuple[int, ...]


def _row_level(D: DensityField, y: int) -> int:
    lev = 0
    while True:
        h = D.size(lev)
        band_max = int(D.level[y:min(y + h, D.height)].max())
        if band_max <= lev:
            return lev
        lev = band_max


def _row_cuts(D: DensityField, profile: np.ndarray, parity: int) -> tuple[list[int], list[int]]:
    W = D.width
    x = 0
    cuts, levels = [], []
    while True:
        lev = int(profile[x])
        while True:
            s = D.size(lev)
            off = s // 2 if parity else 0
            k = -(-(x + MIN_TILE_WIDTH - off) // s)
            t = off + k * s
            covered = int(profile[x:min(t, W)].max())
            if covered <= lev:
                break
            lev = covered
        levels.append(lev)
        if W - t < MIN_TILE_WIDTH:
            return cuts, levels
        cuts.append(t)
        x = t


def _resolve(cuts: list[int], below: set[int], width: int) -> list[int]:
    """Move each cut by at most one unit so none lands on a cut of the row
    below.  Earlier choices are revisited when a later cut gets stuck."""
    n = len(cuts)
    out: list[int] = []
    choice = [0] * n
    i = 0
    steps = 0
    while i < n:
        steps += 1
        if steps > 100 * (n + 1):
            raise UnresolvableCollision(f"no collision-free shift found for {n} cuts")
        c = cuts[i]
        lo = out[-1] if out else 0
        hi = cuts[i + 1] + 1 if i + 1 < n else width
        placed = False
        while choice[i] < 3:
            cand = (c, c + 1, c - 1)[choice[i]]
            choice[i] += 1
            if lo < cand < hi and cand not in below:
                out.append(cand)
                placed = True
                break
        if placed:
            i += 1
            continue
        choice[i] = 0
        if not out:
            raise UnresolvableCollision(f"cut at x={c} collides with the row below")
        out.pop()
        i -= 1
    return out


def graded_rows(D: DensityField) -> list[GradedRow]:
    """Row layout of the graded brick tiling of ``D``.

    Row heights follow the finest level present in the band; cut spacing
    follows the local level; alternate rows use a half-spacing offset and any
    leftover coincidence with the row below is pushed one unit aside.
    """
    B = D.base_size
    if D.width < 2 * B or D.height < 2 * B:
        raise DomainTooSmall(f"domain must be at least {2 * B} x {2 * B} units")
    rows: list[GradedRow] = []
    below: set[int] = set()
    y = 0
    r = 0
    while y < D.height:
        lev = _row_level(D, y)
        y1 = min(y + D.size(lev), D.height)
        profile = D.level[y:y1].max(axis=0)
        cuts, levels = _row_cuts(D, profile, r % 2)
        cuts = _resolve(cuts, below, D.width)
        rows.append(GradedRow(y, y1, lev, tuple(cuts), tuple(levels)))
        below = set(cuts)
        y = y1
        r += 1
    return rows


def gen_graded_brick(D: DensityField, return_levels: bool = False):
    """Variable-density brick tiling whose interior vertices are all
    T-junctions.

    With ``return_levels`` the face -> level map is returned as a third item.
    """
    rows = graded_rows(D)
    C, faces = _rows_complex([(r.y0, r.y1, r.cuts) for r in rows], D.width)
    if not return_levels:
        return C, faces
    levels = [lev for r in rows for lev in r.tile_levels]
    return C, faces, dict(enumerate(levels))
