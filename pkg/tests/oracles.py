"""Reference implementations used only by the tests.

Each oracle re-derives its answer from raw cell data with networkx and
shares no code with the package beyond the container types.
"""
from __future__ import annotations

import itertools
import random

import networkx as nx
import numpy as np


# ------------------------------------------------------------ 2-tile cells

def face_cells(C, f):
    verts = set()
    edges = set()
    for d in C.faces[f]:
        e = C.edges[d.edge]
        verts.update((e.a, e.b))
        edges.add(d.edge)
    return verts, edges


def meet(C, faces):
    cells = [face_cells(C, f) for f in faces]
    V = set.intersection(*(c[0] for c in cells))
    E = set.intersection(*(c[1] for c in cells))
    return V, E


def shape(C, V, E):
    """'empty', 'point', 'arc' or 'other' for the subcomplex (V, E)."""
    if not V:
        return "empty"
    g = nx.Graph()
    g.add_nodes_from(V)
    g.add_edges_from((C.edges[e].a, C.edges[e].b) for e in E)
    if not E:
        return "point" if len(V) == 1 else "other"
    if g.number_of_edges() != len(E):
        return "other"  # parallel edges close a loop
    if nx.is_tree(g) and max(d for _, d in g.degree) <= 2:
        return "arc"
    return "other"


def pair_graph(C, faces):
    g = nx.Graph()
    g.add_nodes_from(faces)
    for a, b in itertools.combinations(faces, 2):
        if meet(C, (a, b))[0]:
            g.add_edge(a, b)
    return g


def brute_lcl_2d(C, faces=None):
    """(lc_ok, ll_ok) straight from the definitions.

    Every subset that is pairwise intersecting, or has a nonempty common
    intersection, is a clique of the pair graph, so enumerating all cliques
    covers every subset the definitions talk about.
    """
    faces = list(C.faces) if faces is None else list(faces)
    want = {2: "arc", 3: "point"}
    lc = ll = True
    for clique in nx.enumerate_all_cliques(pair_graph(C, faces)):
        s = len(clique)
        if s < 2:
            continue
        kind = shape(C, *meet(C, clique))
        if kind == "empty":
            lc = False
        elif kind != want.get(s, "none"):
            ll = False
    return lc, ll


# ------------------------------------------------------------ 1-tile cells

def brute_lcl_1d(arcs: dict):
    """``arcs`` maps id -> vertex path; arcs are segments between consecutive
    vertices.  Returns (lc_ok, ll_ok)."""
    cells = {}
    ll = True
    for a, path in arcs.items():
        if len(set(path)) != len(path) or len(path) < 2:
            ll = False
        cells[a] = (set(path), {frozenset(p) for p in zip(path, path[1:])})
    g = nx.Graph()
    g.add_nodes_from(arcs)
    for a, b in itertools.combinations(arcs, 2):
        if cells[a][0] & cells[b][0]:
            g.add_edge(a, b)
    lc = True
    for clique in nx.enumerate_all_cliques(g):
        s = len(clique)
        if s < 2:
            continue
        V = set.intersection(*(cells[a][0] for a in clique))
        S = set.intersection(*(cells[a][1] for a in clique))
        if not V:
            lc = False
        elif s == 2:
            ends = [{arcs[a][0], arcs[a][-1]} for a in clique]
            if S or len(V) != 1 or not all(V <= e for e in ends):
                ll = False
        else:
            ll = False
    return lc, ll


# ------------------------------------------------------------------ graphs

def nx_graph(G):
    g = nx.Graph()
    g.add_nodes_from(G.points)
    g.add_edges_from(tuple(e) for e in G.edges)
    return g


def nx_clique_counts(g):
    counts = {}
    for c in nx.enumerate_all_cliques(g):
        counts[len(c)] = counts.get(len(c), 0) + 1
    return [counts[k] for k in sorted(counts)]


def nx_euler(g):
    return sum((-1) ** (k + 1) * n for k, n in enumerate(nx_clique_counts(g), 1))


def nx_is_cycle(g):
    return g.number_of_nodes() >= 4 and nx.is_connected(g) and all(d == 2 for _, d in g.degree)


def nx_is_path(g):
    return g.number_of_nodes() >= 1 and nx.is_tree(g) and max((d for _, d in g.degree), default=0) <= 2


def nx_is_2_manifold(g, interior):
    if not nx.is_connected(g):
        return False
    for v in g:
        r = g.subgraph(g[v])
        if not (nx_is_cycle(r) if v in interior else nx_is_path(r)):
            return False
    return True


def chessboard_distance(roi):
    """Distance from every pixel to the nearest ROI pixel, by brute force."""
    ys, xs = np.nonzero(roi)
    H, W = roi.shape
    out = np.zeros((H, W), dtype=np.int64)
    for y in range(H):
        for x in range(W):
            out[y, x] = np.max(np.stack([np.abs(ys - y), np.abs(xs - x)]), axis=0).min()
    return out


def random_level_field(rng: random.Random, W: int, H: int, levels: int):
    """Piecewise-constant level field built from a few random rectangles."""
    lev = np.zeros((H, W), dtype=np.int64)
    for _ in range(rng.randint(0, 5)):
        x0, y0 = rng.randrange(W), rng.randrange(H)
        x1, y1 = rng.randint(x0 + 1, W), rng.randint(y0 + 1, H)
        lev[y0:y1, x0:x1] = np.maximum(lev[y0:y1, x0:x1], rng.randrange(levels))
    return lev


def polygon_area(pts):
    return abs(sum(x0 * y1 - x1 * y0 for (x0, y0), (x1, y1) in zip(pts, pts[1:] + pts[:1]))) / 2
