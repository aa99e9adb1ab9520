"""Planar cell complexes and one-dimensional arc tilings.

A :class:`CellComplex2` is the combinatorial stand-in for a collection of
2-tiles: every face is a closed boundary walk that visits no vertex twice,
so it is a combinatorial disk.  Intersections of tiles are computed purely
from incidences (shared vertices and shared edges); coordinates are only
used by the generators and the renderer.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping, NamedTuple, Sequence

__all__ = [
    "ArcCollection",
    "ArcTiling1D",
    "CellClass",
    "CellComplex2",
    "ComplexError",
    "CoincidentVertices",
    "DanglingReference",
    "DegenerateEdge",
    "DirectedEdge",
    "Edge",
    "OpenFaceWalk",
    "OverusedEdge",
    "PinchedFace",
    "SharedCells",
    "TilingKind",
    "UnknownFace",
    "build_complex",
    "classify_cells",
    "interior_faces",
    "shared_subcomplex",
]


class ComplexError(ValueError):
    """Raised when raw tables do not describe a valid cell complex."""


class DanglingReference(ComplexError):
    pass


class OpenFaceWalk(ComplexError):
    pass


class PinchedFace(ComplexError):
    pass


class OverusedEdge(ComplexError):
    pass


class CoincidentVertices(ComplexError):
    pass


class DegenerateEdge(ComplexError):
    pass


class UnknownFace(KeyError):
    pass


class Edge(NamedTuple):
    a: Hashable
    b: Hashable
    bend: tuple = ()


class DirectedEdge(NamedTuple):
    edge: Hashable
    forward: bool = True


@dataclass(frozen=True, eq=False)
class CellComplex2:
    """Validated planar subdivision.  Build instances with :func:`build_complex`.

    ``period`` is only meaningful for torus complexes; it tells the renderer
    how to unroll wrapped coordinates.
    """

    vertices: Mapping[Hashable, tuple[int, int]]
    edges: Mapping[Hashable, Edge]
    faces: Mapping[Hashable, tuple[DirectedEdge, ...]]
    torus: bool = False
    period: tuple[int, int] | None = None

    def endpoints(self, e: DirectedEdge) -> tuple[Hashable, Hashable]:
        edge = self.edges[e.edge]
        return (edge.a, edge.b) if e.forward else (edge.b, edge.a)

    def walk_vertices(self, f: Hashable) -> tuple:
        """Vertices of the boundary walk of face ``f`` in walk order."""
        return tuple(self.endpoints(e)[0] for e in self.faces[f])

    @cached_property
    def face_vertices(self) -> dict[Hashable, frozenset]:
        return {f: frozenset(self.walk_vertices(f)) for f in self.faces}

    @cached_property
    def face_edges(self) -> dict[Hashable, frozenset]:
        return {f: frozenset(e.edge for e in walk) for f, walk in self.faces.items()}

    @cached_property
    def edge_faces(self) -> dict[Hashable, tuple]:
        inc: dict[Hashable, list] = {e: [] for e in self.edges}
        for f, walk in self.faces.items():
            for e in walk:
                inc[e.edge].append(f)
        return {e: tuple(fs) for e, fs in inc.items()}

    @cached_property
    def vertex_faces(self) -> dict[Hashable, frozenset]:
        inc: dict[Hashable, set] = {v: set() for v in self.vertices}
        for f, vs in self.face_vertices.items():
            for v in vs:
                inc[v].add(f)
        return {v: frozenset(fs) for v, fs in inc.items()}

    @cached_property
    def boundary_edges(self) -> frozenset:
        """Complex-boundary edges: edges with exactly one incident face."""
        return frozenset(e for e, fs in self.edge_faces.items() if len(fs) == 1)

    def __repr__(self) -> str:
        return (
            f"CellComplex2(|V|={len(self.vertices)}, |E|={len(self.edges)}, "
            f"|F|={len(self.faces)}, torus={self.torus})"
        )


def _as_edge(raw) -> Edge:
    if isinstance(raw, Edge):
        return raw
    if isinstance(raw, Mapping):
        return Edge(raw["a"], raw["b"], tuple(tuple(p) for p in raw.get("bend", ())))
    raw = tuple(raw)
    bend = tuple(tuple(p) for p in raw[2]) if len(raw) > 2 else ()
    return Edge(raw[0], raw[1], bend)


def _as_directed(raw) -> DirectedEdge:
    if isinstance(raw, DirectedEdge):
        return raw
    if isinstance(raw, tuple) and len(raw) == 2 and isinstance(raw[1], bool):
        return DirectedEdge(raw[0], raw[1])
    if isinstance(raw, (tuple, list)) and len(raw) == 2:
        return DirectedEdge(raw[0], raw[1] in (1, "+", True))
    return DirectedEdge(raw, True)


def build_complex(
    vertices: Mapping[Hashable, Sequence[int]],
    edges: Mapping[Hashable, object],
    faces: Mapping[Hashable, Iterable],
    torus: bool = False,
    period: Sequence[int] | None = None,
) -> CellComplex2:
    """Validate raw vertex/edge/face tables and return a :class:`CellComplex2`.

    Edges are ``(a, b)`` or ``(a, b, bend_points)`` (or :class:`Edge`).
    Face walks are sequences of ``(edge_id, forward)`` pairs; a bare edge id
    means forward.
    """
    verts = {v: (int(xy[0]), int(xy[1])) for v, xy in vertices.items()}
    if not torus:
        seen: dict[tuple[int, int], Hashable] = {}
        for v, xy in verts.items():
            if xy in seen:
                raise CoincidentVertices(f"vertices {seen[xy]!r} and {v!r} share coordinates {xy}")
            seen[xy] = v

    edge_map: dict[Hashable, Edge] = {}
    for e, raw in edges.items():
        edge = _as_edge(raw)
        for end in (edge.a, edge.b):
            if end not in verts:
                raise DanglingReference(f"edge {e!r} refers to missing vertex {end!r}")
        if edge.a == edge.b:
            raise DegenerateEdge(f"edge {e!r} is a loop at vertex {edge.a!r}")
        edge_map[e] = edge

    face_map: dict[Hashable, tuple[DirectedEdge, ...]] = {}
    uses: dict[Hashable, int] = {}
    for f, raw_walk in faces.items():
        walk = tuple(_as_directed(r) for r in raw_walk)
        if not walk:
            raise OpenFaceWalk(f"face {f!r} has an empty boundary walk")
        for d in walk:
            if d.edge not in edge_map:
                raise DanglingReference(f"face {f!r} refers to missing edge {d.edge!r}")
        ends = [
            (edge_map[d.edge].a, edge_map[d.edge].b) if d.forward
            else (edge_map[d.edge].b, edge_map[d.edge].a)
            for d in walk
        ]
        for i, (_, head) in enumerate(ends):
            nxt_tail = ends[(i + 1) % len(ends)][0]
            if head != nxt_tail:
                raise OpenFaceWalk(
                    f"face {f!r}: edge {walk[i].edge!r} ends at {head!r} but the next "
                    f"edge starts at {nxt_tail!r}"
                )
        tails = [t for t, _ in ends]
        if len(set(tails)) != len(tails):
            raise PinchedFace(f"face {f!r} visits a vertex twice")
        if len({d.edge for d in walk}) != len(walk):
            raise PinchedFace(f"face {f!r} runs along the same edge twice")
        for d in walk:
            uses[d.edge] = uses.get(d.edge, 0) + 1
            if uses[d.edge] > 2:
                raise OverusedEdge(f"edge {d.edge!r} is used by three or more faces")
        face_map[f] = walk

    return CellComplex2(
        vertices=verts,
        edges=edge_map,
        faces=face_map,
        torus=bool(torus),
        period=tuple(int(p) for p in period) if period is not None else None,
    )


@dataclass(frozen=True)
class SharedCells:
    """Vertices and edges common to a set of tiles.

    ``endpoints`` maps each listed edge to its vertex pair; it is carried so
    the cells can be classified without the parent complex.
    """

    vertices: frozenset = frozenset()
    edges: frozenset = frozenset()
    endpoints: Mapping = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __bool__(self) -> bool:
        return bool(self.vertices or self.edges)


class CellClass(enum.Enum):
    Empty = "Empty"
    Point = "Point"
    Arc = "Arc"
    Circle = "Circle"
    Disconnected = "Disconnected"
    Branching = "Branching"


def _check_faces(C: CellComplex2, F: Iterable) -> list:
    F = list(F)
    for f in F:
        if f not in C.faces:
            raise UnknownFace(f)
    return F


def shared_subcomplex(C: CellComplex2, F: Iterable) -> SharedCells:
    """Cells lying on the boundary walk of every face in ``F``."""
    F = _check_faces(C, F)
    if len(set(F)) < 2:
        raise ValueError("shared_subcomplex needs at least two distinct faces")
    verts = frozenset.intersection(*(C.face_vertices[f] for f in F))
    edges = frozenset.intersection(*(C.face_edges[f] for f in F))
    return SharedCells(verts, edges, {e: (C.edges[e].a, C.edges[e].b) for e in edges})


def classify_cells(S: SharedCells) -> CellClass:
    """Decide whether ``S`` is empty, a point, a simple arc, a simple circle,
    or something that is not a tile of any dimension."""
    nv, ne = len(S.vertices), len(S.edges)
    if nv == 0 and ne == 0:
        return CellClass.Empty
    if ne == 0:
        return CellClass.Point if nv == 1 else CellClass.Disconnected
    degree = {v: 0 for v in S.vertices}
    adj: dict[Hashable, list] = {v: [] for v in S.vertices}
    for e in S.edges:
        a, b = S.endpoints[e]
        degree[a] += 1
        degree[b] += 1
        adj[a].append(b)
        adj[b].append(a)
    if max(degree.values()) >= 3:
        return CellClass.Branching
    start = next(iter(S.vertices))
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != nv:
        return CellClass.Disconnected
    if ne == nv - 1:
        return CellClass.Arc
    return CellClass.Circle


def interior_faces(C: CellComplex2) -> frozenset:
    """Faces none of whose edges lie on the complex boundary."""
    if C.torus:
        return frozenset(C.faces)
    bd = C.boundary_edges
    return frozenset(f for f, es in C.face_edges.items() if not (es & bd))


class TilingKind(enum.Enum):
    Circle = "circle"
    Segment = "segment"


@dataclass(frozen=True)
class ArcTiling1D:
    """Consecutive arcs covering a circle or a segment.

    Arc ``i`` runs from ``breakpoints[i]`` to ``breakpoints[i + 1]`` (cyclically
    for a circle).  Distinct arcs never share interior points; two arcs meet
    only at common breakpoints.
    """

    kind: TilingKind
    breakpoints: tuple
    arcs: tuple

    def __post_init__(self):
        kind = TilingKind(self.kind)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "breakpoints", tuple(self.breakpoints))
        object.__setattr__(self, "arcs", tuple(tuple(a) for a in self.arcs))
        k = len(self.arcs)
        if k < 1:
            raise ValueError("an arc tiling needs at least one arc")
        bp = self.breakpoints
        expected = k if kind is TilingKind.Circle else k + 1
        if len(bp) != expected:
            raise ValueError(f"{kind.value} tiling with {k} arcs needs {expected} breakpoints")
        if len(set(bp)) != len(bp):
            raise ValueError("breakpoints must be distinct")
        for i, arc in enumerate(self.arcs):
            want = (bp[i], bp[(i + 1) % len(bp)])
            if arc != want:
                raise ValueError(f"arc {i} is {arc}, expected consecutive {want}")

    @classmethod
    def from_breakpoints(cls, kind, breakpoints: Sequence) -> "ArcTiling1D":
        kind = TilingKind(kind)
        bp = tuple(breakpoints)
        n = len(bp) if kind is TilingKind.Circle else len(bp) - 1
        return cls(kind, bp, tuple((bp[i], bp[(i + 1) % len(bp)]) for i in range(n)))

    def __len__(self) -> int:
        return len(self.arcs)

    def to_collection(self) -> "ArcCollection":
        # each arc is its own 1-cell, so arcs never share segments
        return ArcCollection(
            {i: (a, b) for i, (a, b) in enumerate(self.arcs)},
            segment_ids={i: (("arc", i),) for i in range(len(self.arcs))},
        )


class ArcCollection:
    """A collection of 1-tiles drawn as vertex paths in a graph.

    General enough for hand-built fixtures (stars, overlapping arcs).
    Segments are identified by their unordered endpoint pair unless explicit
    ``segment_ids`` are supplied.
    """

    def __init__(self, arcs: Mapping[Hashable, Sequence], segment_ids: Mapping | None = None):
        self.arcs = {a: tuple(p) for a, p in arcs.items()}
        for a, path in self.arcs.items():
            if len(path) < 2:
                raise ValueError(f"arc {a!r} needs at least two vertices")
        self._segments: dict[Hashable, tuple] = {}
        self._ends: dict[Hashable, tuple] = {}
        for a, path in self.arcs.items():
            if segment_ids is not None:
                ids = tuple(segment_ids[a])
            else:
                ids = tuple(frozenset(p) for p in zip(path, path[1:]))
            self._segments[a] = ids
            for sid, pair in zip(ids, zip(path, path[1:])):
                self._ends[sid] = pair

    def ends(self, a) -> tuple:
        path = self.arcs[a]
        return path[0], path[-1]

    def is_tile(self, a) -> bool:
        """A 1-tile is a simple path with two distinct ends."""
        path = self.arcs[a]
        return len(set(path)) == len(path)

    def shared(self, arcs: Iterable) -> SharedCells:
        arcs = list(arcs)
        for a in arcs:
            if a not in self.arcs:
                raise UnknownFace(a)
        verts = frozenset.intersection(*(frozenset(self.arcs[a]) for a in arcs))
        segs = frozenset.intersection(*(frozenset(self._segments[a]) for a in arcs))
        return SharedCells(verts, segs, {s: self._ends[s] for s in segs})

    def __len__(self) -> int:
        return len(self.arcs)
