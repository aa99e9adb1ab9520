"""Digital spaces: finite simple graphs and their topology.

Includes rims and balls, clique-based Euler characteristic, contractible
transformations (vertex/edge deletion and gluing), a bounded search for
contractibility, recognisers for digital spheres and manifolds, and an
exact backtracking isomorphism test for small graphs.
"""
from __future__ import annotations

import enum
import itertools
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, NamedTuple

from .complex_core import ArcTiling1D, CellComplex2, UnknownFace

__all__ = [
    "CliqueBudgetExceeded",
    "CtMove",
    "DeleteEdge",
    "DeleteVertex",
    "GlueEdge",
    "GlueVertex",
    "Graph",
    "ManifoldType",
    "NotAManifold",
    "PreconditionFailed",
    "SizeCapExceeded",
    "Tri",
    "UnknownPoint",
    "apply_ct",
    "ball",
    "clique_counts",
    "clique_number",
    "euler_characteristic",
    "find_contraction",
    "graphs_isomorphic",
    "intersection_graph",
    "is_contractible",
    "is_digital_0_sphere",
    "is_digital_1_manifold",
    "is_digital_1_sphere_fast",
    "is_digital_2_manifold",
    "is_digital_sphere_def",
    "is_simple_path",
    "manifold_type",
    "rim",
]

DEFAULT_CLIQUE_CAP = 10**6
DEFAULT_BUDGET = 200_000
EXHAUSTIVE_LIMIT = 12
ISO_SIZE_CAP = 64


class UnknownPoint(KeyError):
    pass


class CliqueBudgetExceeded(RuntimeError):
    pass


class SizeCapExceeded(ValueError):
    pass


class NotAManifold(ValueError):
    pass


class PreconditionFailed(ValueError):
    def __init__(self, move, reason: str):
        super().__init__(f"{move}: {reason}")
        self.move = move
        self.reason = reason


def _key(u, v) -> frozenset:
    return frozenset((u, v))


@dataclass(frozen=True)
class Graph:
    """Immutable finite simple undirected graph."""

    points: frozenset
    edges: frozenset

    def __init__(self, points: Iterable = (), edges: Iterable = ()):
        pts = set(points)
        es = set()
        for e in edges:
            u, v = tuple(e)
            if u == v:
                raise ValueError(f"loop at {u!r}")
            pts.add(u)
            pts.add(v)
            es.add(_key(u, v))
        object.__setattr__(self, "points", frozenset(pts))
        object.__setattr__(self, "edges", frozenset(es))

    @classmethod
    def _raw(cls, points: frozenset, edges: frozenset) -> "Graph":
        g = object.__new__(cls)
        object.__setattr__(g, "points", points)
        object.__setattr__(g, "edges", edges)
        return g

    @cached_property
    def adj(self) -> dict[Hashable, frozenset]:
        nb: dict[Hashable, set] = {p: set() for p in self.points}
        for e in self.edges:
            u, v = tuple(e)
            nb[u].add(v)
            nb[v].add(u)
        return {p: frozenset(s) for p, s in nb.items()}

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, p) -> bool:
        return p in self.points

    def neighbors(self, p) -> frozenset:
        try:
            return self.adj[p]
        except KeyError:
            raise UnknownPoint(p) from None

    def degree(self, p) -> int:
        return len(self.neighbors(p))

    def has_edge(self, u, v) -> bool:
        return _key(u, v) in self.edges

    def induced(self, subset: Iterable) -> "Graph":
        sub = frozenset(subset)
        if not sub <= self.points:
            raise UnknownPoint(next(iter(sub - self.points)))
        adj = self.adj
        return Graph._raw(sub, frozenset(_key(u, v) for u in sub for v in adj[u] & sub))

    def remove_point(self, p) -> "Graph":
        if p not in self.points:
            raise UnknownPoint(p)
        return Graph._raw(self.points - {p}, frozenset(e for e in self.edges if p not in e))

    def remove_edge(self, u, v) -> "Graph":
        return Graph._raw(self.points, self.edges - {_key(u, v)})

    def add_point(self, p, nbrs: Iterable = ()) -> "Graph":
        nbrs = frozenset(nbrs)
        return Graph._raw(self.points | {p}, self.edges | {_key(p, q) for q in nbrs})

    def add_edge(self, u, v) -> "Graph":
        return Graph._raw(self.points, self.edges | {_key(u, v)})

    def is_connected(self) -> bool:
        if not self.points:
            return False
        start = next(iter(self.points))
        seen = {start}
        stack = [start]
        adj = self.adj
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.points)

    def relabel(self, mapping) -> "Graph":
        return Graph((mapping[p] for p in self.points), ((mapping[u], mapping[v]) for u, v in map(tuple, self.edges)))

    def sorted_points(self) -> list:
        return sorted(self.points, key=_sort_key)

    def sorted_edges(self) -> list[tuple]:
        out = []
        for e in self.edges:
            u, v = sorted(e, key=_sort_key)
            out.append((u, v))
        return sorted(out, key=lambda uv: (_sort_key(uv[0]), _sort_key(uv[1])))

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(self.points)
        g.add_edges_from(tuple(e) for e in self.edges)
        return g

    @classmethod
    def from_networkx(cls, g) -> "Graph":
        return cls(g.nodes, g.edges)

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(range(n), ((i, (i + 1) % n) for i in range(n)) if n > 1 else ())

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(range(n), ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(range(n), itertools.combinations(range(n), 2))

    def __repr__(self) -> str:
        return f"Graph(|V|={len(self.points)}, |E|={len(self.edges)})"


def _sort_key(p):
    return (type(p).__name__, p) if isinstance(p, (int, str)) else (type(p).__name__, repr(p))


# ---------------------------------------------------------------------------
# digital models


def intersection_graph(T, F: Iterable | None = None) -> Graph:
    """Digital model: one point per tile, an edge for every intersecting pair."""
    if isinstance(T, ArcTiling1D):
        coll = T.to_collection()
        tiles = list(range(len(T))) if F is None else list(F)
        for t in tiles:
            if t not in coll.arcs:
                raise UnknownFace(t)
        edges = [(a, b) for a, b in itertools.combinations(tiles, 2) if coll.shared((a, b))]
        return Graph(tiles, edges)
    if not isinstance(T, CellComplex2):
        # ArcCollection and friends
        tiles = list(T.arcs) if F is None else list(F)
        edges = [(a, b) for a, b in itertools.combinations(tiles, 2) if T.shared((a, b))]
        return Graph(tiles, edges)
    tiles = list(T.faces) if F is None else list(F)
    tile_set = frozenset(tiles)
    for f in tiles:
        if f not in T.faces:
            raise UnknownFace(f)
    edges = set()
    for v, fs in T.vertex_faces.items():
        fs = sorted(fs & tile_set, key=_sort_key)
        for a, b in itertools.combinations(fs, 2):
            edges.add((a, b))
    return Graph(tiles, edges)


def rim(G: Graph, v) -> Graph:
    """Subgraph induced by the neighbours of ``v`` (``v`` excluded)."""
    return G.induced(G.neighbors(v))


def ball(G: Graph, v) -> Graph:
    return G.induced(G.neighbors(v) | {v})


def is_digital_0_sphere(G: Graph) -> bool:
    return len(G.points) == 2 and not G.edges


# ---------------------------------------------------------------------------
# cliques and Euler characteristic


def clique_counts(G: Graph, cap: int = DEFAULT_CLIQUE_CAP) -> list[int]:
    """``counts[k-1]`` is the number of complete subgraphs on ``k`` points."""
    order = {p: i for i, p in enumerate(G.sorted_points())}
    later = {p: frozenset(q for q in G.adj[p] if order[q] > order[p]) for p in G.points}
    counts: list[int] = []
    total = 0

    def extend(size: int, cand: frozenset) -> None:
        nonlocal total
        if len(counts) < size:
            counts.append(0)
        counts[size - 1] += 1
        total += 1
        if total > cap:
            raise CliqueBudgetExceeded(f"more than {cap} cliques")
        for q in cand:
            extend(size + 1, cand & later[q])

    for p in G.points:
        extend(1, later[p])
    return counts


def euler_characteristic(G: Graph, cap: int = DEFAULT_CLIQUE_CAP) -> int:
    return sum((-1) ** k * c for k, c in enumerate(clique_counts(G, cap)))


def clique_number(G: Graph, cap: int = DEFAULT_CLIQUE_CAP) -> int:
    return len(clique_counts(G, cap))


# ---------------------------------------------------------------------------
# contractible transformations


class Tri(enum.Enum):
    Yes = "Yes"
    No = "No"
    Unknown = "Unknown"


class DeleteVertex(NamedTuple):
    v: Hashable


class GlueVertex(NamedTuple):
    p: Hashable
    nbrs: frozenset


class DeleteEdge(NamedTuple):
    u: Hashable
    v: Hashable


class GlueEdge(NamedTuple):
    u: Hashable
    v: Hashable


CtMove = DeleteVertex | GlueVertex | DeleteEdge | GlueEdge


def _common(G: Graph, u, v) -> Graph:
    return G.induced(G.neighbors(u) & G.neighbors(v))


def apply_ct(G: Graph, m, budget: int = DEFAULT_BUDGET) -> Graph:
    """Apply one contractible transformation, checking its precondition."""

    def require(sub: Graph, what: str) -> None:
        verdict = is_contractible(sub, budget)
        if verdict is not Tri.Yes:
            raise PreconditionFailed(m, f"{what} is not contractible ({verdict.value})")

    if isinstance(m, DeleteVertex):
        require(rim(G, m.v), f"rim of {m.v!r}")
        return G.remove_point(m.v)
    if isinstance(m, GlueVertex):
        if m.p in G.points:
            raise PreconditionFailed(m, f"point {m.p!r} already exists")
        require(G.induced(m.nbrs), "glued neighbourhood")
        return G.add_point(m.p, m.nbrs)
    if isinstance(m, (DeleteEdge, GlueEdge)):
        for p in (m.u, m.v):
            if p not in G.points:
                raise UnknownPoint(p)
        adjacent = G.has_edge(m.u, m.v)
        if isinstance(m, DeleteEdge) and not adjacent:
            raise PreconditionFailed(m, "points are not adjacent")
        if isinstance(m, GlueEdge) and (adjacent or m.u == m.v):
            raise PreconditionFailed(m, "points are already adjacent")
        require(_common(G, m.u, m.v), "common neighbourhood")
        return G.remove_edge(m.u, m.v) if isinstance(m, DeleteEdge) else G.add_edge(m.u, m.v)
    raise TypeError(f"not a contractible transformation: {m!r}")


class _Exhausted(Exception):
    pass


class _Search:
    def __init__(self, budget: int):
        self.budget = budget
        self.steps = 0
        self.memo: dict[tuple, list | None] = {}
        self.incomplete = False

    def tick(self) -> None:
        self.steps += 1
        if self.steps > self.budget:
            raise _Exhausted

    def solve(self, G: Graph) -> list | None:
        """Deleting moves reducing ``G`` to one point, or ``None``."""
        n = len(G.points)
        if n == 1:
            return []
        if n == 0 or not G.is_connected():
            return None
        key = (G.points, G.edges)
        if key in self.memo:
            return self.memo[key]
        self.tick()
        adj = G.adj
        for w in G.sorted_points():
            if len(adj[w]) == n - 1:
                moves = [DeleteVertex(p) for p in G.sorted_points() if p != w]
                self.memo[key] = moves
                return moves
        if euler_characteristic(G) != 1:
            self.memo[key] = None
            return None
        if n > EXHAUSTIVE_LIMIT:
            self.incomplete = True
        # low-degree points first: leaves and cone points fall quickly
        for v in sorted(G.points, key=lambda p: (len(adj[p]), _sort_key(p))):
            if self.solve(rim(G, v)) is None:
                continue
            rest = self.solve(G.remove_point(v))
            if rest is not None:
                moves = [DeleteVertex(v)] + rest
                self.memo[key] = moves
                return moves
            if n > EXHAUSTIVE_LIMIT:
                break
        for u, v in G.sorted_edges():
            if self.solve(_common(G, u, v)) is None:
                continue
            rest = self.solve(G.remove_edge(u, v))
            if rest is not None:
                moves = [DeleteEdge(u, v)] + rest
                self.memo[key] = moves
                return moves
            if n > EXHAUSTIVE_LIMIT:
                break
        self.memo[key] = None
        return None


def find_contraction(G: Graph, budget: int = DEFAULT_BUDGET) -> tuple[Tri, list | None]:
    """Search for deleting moves that reduce ``G`` to a single point.

    Returns ``(Tri.Yes, moves)`` with a replayable sequence, ``(Tri.No, None)``
    when the answer is definitive (disconnected, empty, Euler characteristic
    not 1, or an exhaustive search on at most ``EXHAUSTIVE_LIMIT`` points),
    and ``(Tri.Unknown, None)`` otherwise.
    """
    if len(G.points) == 0 or not G.is_connected():
        return Tri.No, None
    try:
        if euler_characteristic(G) != 1:
            return Tri.No, None
    except CliqueBudgetExceeded:
        return Tri.Unknown, None
    search = _Search(budget)
    try:
        moves = search.solve(G)
    except (_Exhausted, CliqueBudgetExceeded):
        return Tri.Unknown, None
    if moves is not None:
        return Tri.Yes, moves
    if search.incomplete:
        return Tri.Unknown, None
    return Tri.No, None


def is_contractible(G: Graph, budget: int = DEFAULT_BUDGET) -> Tri:
    return find_contraction(G, budget)[0]


# ---------------------------------------------------------------------------
# spheres and manifolds


def is_digital_sphere_def(G: Graph, n: int, budget: int = DEFAULT_BUDGET) -> Tri:
    """Definitional recogniser for digital 0- and 1-spheres.

    A digital 1-sphere is connected, every rim is a digital 0-sphere, and
    removing any single point leaves a contractible graph.
    """
    if n == 0:
        return Tri.Yes if is_digital_0_sphere(G) else Tri.No
    if n != 1:
        raise ValueError("only n = 0 and n = 1 are supported")
    if not G.is_connected():
        return Tri.No
    for v in G.sorted_points():
        if is_digital_sphere_def(rim(G, v), 0) is not Tri.Yes:
            return Tri.No
    unknown = False
    for v in G.sorted_points():
        verdict = is_contractible(G.remove_point(v), budget)
        if verdict is Tri.No:
            return Tri.No
        unknown |= verdict is Tri.Unknown
    return Tri.Unknown if unknown else Tri.Yes


def is_digital_1_sphere_fast(G: Graph) -> bool:
    """A single cycle on at least four points."""
    return (
        len(G.points) >= 4
        and all(len(nb) == 2 for nb in G.adj.values())
        and G.is_connected()
    )


def is_simple_path(G: Graph) -> bool:
    """Non-empty connected graph with max degree 2 and no cycle."""
    return (
        len(G.points) >= 1
        and len(G.edges) == len(G.points) - 1
        and all(len(nb) <= 2 for nb in G.adj.values())
        and G.is_connected()
    )


def _interior_set(G: Graph, interior) -> frozenset:
    if interior is None or interior == "all":
        return G.points
    interior = frozenset(interior)
    if not interior <= G.points:
        raise UnknownPoint(next(iter(interior - G.points)))
    return interior


def is_digital_1_manifold(G: Graph, interior=None) -> bool:
    """Connected; interior rims are 0-spheres; other rims are single points."""
    interior = _interior_set(G, interior)
    if not G.is_connected():
        return False
    for v in G.points:
        r = rim(G, v)
        if v in interior:
            if not is_digital_0_sphere(r):
                return False
        elif len(r.points) != 1:
            return False
    return True


def is_digital_2_manifold(G: Graph, interior=None) -> bool:
    """Connected; interior rims are digital 1-spheres; other rims are paths.

    ``interior`` defaults to every point (closed surfaces such as tori).
    """
    interior = _interior_set(G, interior)
    if not G.is_connected():
        return False
    for v in G.points:
        r = rim(G, v)
        ok = is_digital_1_sphere_fast(r) if v in interior else is_simple_path(r)
        if not ok:
            return False
    return True


@dataclass(frozen=True)
class ManifoldType:
    """Rim cycle lengths of the interior points of a digital 2-manifold."""

    counts: tuple[tuple[int, int], ...]

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(length for length, _ in self.counts)

    @property
    def label(self) -> str:
        ls = self.lengths
        if len(ls) == 1:
            ls = ls * 2
        return "(" + ",".join(map(str, ls)) + ")"

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    def __str__(self) -> str:
        return self.label


def manifold_type(G: Graph, interior=None) -> ManifoldType:
    interior = _interior_set(G, interior)
    if not is_digital_2_manifold(G, interior):
        raise NotAManifold("graph is not a digital 2-manifold on the given interior")
    c = Counter(len(G.adj[v]) for v in interior)
    return ManifoldType(tuple(sorted(c.items())))


# ---------------------------------------------------------------------------
# isomorphism


def graphs_isomorphic(G: Graph, H: Graph, cap: int = ISO_SIZE_CAP) -> bool:
    """Exact isomorphism test by backtracking with degree-based pruning."""
    if len(G.points) > cap or len(H.points) > cap:
        raise SizeCapExceeded(f"graphs larger than {cap} points")
    if len(G.points) != len(H.points) or len(G.edges) != len(H.edges):
        return False
    ga, ha = G.adj, H.adj

    def signature(adj, p):
        return (len(adj[p]), tuple(sorted(len(adj[q]) for q in adj[p])))

    gsig = {p: signature(ga, p) for p in G.points}
    hsig = {p: signature(ha, p) for p in H.points}
    if Counter(gsig.values()) != Counter(hsig.values()):
        return False
    by_sig: dict[tuple, list] = {}
    for p in H.sorted_points():
        by_sig.setdefault(hsig[p], []).append(p)

    # place points so that each new point has many already-placed neighbours
    order: list = []
    placed: set = set()
    remaining = set(G.points)
    while remaining:
        start = max(remaining, key=lambda p: (len(ga[p]), _sort_key(p)))
        frontier = [start]
        while frontier:
            p = max(frontier, key=lambda q: (len(ga[q] & placed), len(ga[q])))
            frontier.remove(p)
            if p in placed:
                continue
            order.append(p)
            placed.add(p)
            remaining.discard(p)
            frontier.extend(q for q in ga[p] if q not in placed and q not in frontier)

    fwd: dict = {}
    used: set = set()

    def bt(i: int) -> bool:
        if i == len(order):
            return True
        p = order[i]
        for q in by_sig[gsig[p]]:
            if q in used:
                continue
            if all((fwd[r] in ha[q]) == (r in ga[p]) for r in fwd):
                fwd[p] = q
                used.add(q)
                if bt(i + 1):
                    return True
                del fwd[p]
                used.discard(q)
        return False

    return bt(0)
