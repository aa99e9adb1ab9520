"""LC / LL / LCL verdicts for collections of 2-tiles and 1-tiles.

For plane 2-tiles the lump condition bounds nonempty intersections at three
tiles, so it suffices to look at the edges, triangles and 4-cliques of the
pairwise-intersection graph.  For 1-tiles no three tiles may even pairwise
meet, so edges and triangles suffice.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable

from .complex_core import (
    ArcCollection,
    ArcTiling1D,
    CellClass,
    CellComplex2,
    SharedCells,
    TilingKind,
    UnknownFace,
    classify_cells,
    shared_subcomplex,
)
from .digital_space import _sort_key

__all__ = [
    "FragmentedNeighborhood",
    "LclReport",
    "NeighborhoodPair",
    "NotLcl",
    "SubsetNotContained",
    "Violation",
    "ViolationKind",
    "check_lcl_1d",
    "check_lcl_2d",
    "neighborhood_collection",
    "subcollection_check",
]


class NotLcl(ValueError):
    pass


class SubsetNotContained(ValueError):
    pass


class FragmentedNeighborhood(ValueError):
    """The tiles around a face cover its boundary in more than one run."""


class ViolationKind(enum.Enum):
    PairNotArc = "PairNotArc"
    TripleNotPoint = "TripleNotPoint"
    QuadNonempty = "QuadNonempty"
    TripleEmptyButPairwise = "TripleEmptyButPairwise"
    OversizeCliqueNoCommon = "OversizeCliqueNoCommon"
    # 1-tile collections only
    TripleNonempty = "TripleNonempty"
    NotATile = "NotATile"


_LC_KINDS = {ViolationKind.TripleEmptyButPairwise, ViolationKind.OversizeCliqueNoCommon}


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    faces: frozenset
    witness: SharedCells

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "faces": sorted(self.faces, key=_sort_key),
            "witness": {
                "vertices": sorted(self.witness.vertices, key=_sort_key),
                "edges": sorted(self.witness.edges, key=_sort_key),
            },
        }


@dataclass(frozen=True)
class LclReport:
    lc_ok: bool
    ll_ok: bool
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return self.lc_ok and self.ll_ok

    def __bool__(self) -> bool:
        return self.ok

    def count(self, kind) -> int:
        kind = ViolationKind(kind)
        return sum(v.kind is kind for v in self.violations)

    def to_dict(self) -> dict:
        return {
            "lc_ok": self.lc_ok,
            "ll_ok": self.ll_ok,
            "lcl": self.ok,
            "violations": [v.to_dict() for v in self.violations],
        }

    @classmethod
    def from_violations(cls, violations: Iterable[Violation]) -> "LclReport":
        vs = tuple(sorted(violations, key=lambda v: (v.kind.value, sorted(map(_sort_key, v.faces)))))
        lc = not any(v.kind in _LC_KINDS for v in vs)
        ll = not any(v.kind not in _LC_KINDS for v in vs)
        return cls(lc, ll, vs)


def _pair_graph(C: CellComplex2, F: list) -> dict[Hashable, set]:
    fset = set(F)
    nb: dict[Hashable, set] = {f: set() for f in F}
    for fs in C.vertex_faces.values():
        fs = fs & fset
        for a, b in itertools.combinations(fs, 2):
            nb[a].add(b)
            nb[b].add(a)
    return nb


def _cliques(nb: dict[Hashable, set], order: dict, max_size: int):
    """Yield cliques of size 2..max_size of the graph ``nb`` as sorted tuples."""

    def grow(clique: tuple, cand: set):
        if len(clique) >= 2:
            yield clique
        if len(clique) == max_size:
            return
        for q in sorted(cand, key=order.__getitem__):
            yield from grow(clique + (q,), {r for r in cand & nb[q] if order[r] > order[q]})

    for p in sorted(nb, key=order.__getitem__):
        yield from grow((p,), {r for r in nb[p] if order[r] > order[p]})


def check_lcl_2d(C: CellComplex2, F: Iterable | None = None) -> LclReport:
    """Decide LC and LL for the faces ``F`` (default: all faces) of ``C``."""
    F = list(C.faces) if F is None else list(dict.fromkeys(F))
    for f in F:
        if f not in C.faces:
            raise UnknownFace(f)
    order = {f: i for i, f in enumerate(sorted(F, key=_sort_key))}
    nb = _pair_graph(C, F)
    out: list[Violation] = []
    for clique in _cliques(nb, order, 4):
        S = shared_subcomplex(C, clique)
        faces = frozenset(clique)
        if len(clique) == 2:
            if classify_cells(S) is not CellClass.Arc:
                out.append(Violation(ViolationKind.PairNotArc, faces, S))
        elif len(clique) == 3:
            if not S:
                out.append(Violation(ViolationKind.TripleEmptyButPairwise, faces, S))
            elif classify_cells(S) is not CellClass.Point:
                out.append(Violation(ViolationKind.TripleNotPoint, faces, S))
        else:
            kind = ViolationKind.QuadNonempty if S else ViolationKind.OversizeCliqueNoCommon
            out.append(Violation(kind, faces, S))
    return LclReport.from_violations(out)


def check_lcl_1d(T: ArcTiling1D | ArcCollection) -> LclReport:
    """Decide LC and LL for a collection of 1-tiles.

    Two arcs may meet only in a single point that is an end of both; three
    arcs may not meet at all, and may not pairwise meet either (that would
    be an LC failure).
    """
    coll = T.to_collection() if isinstance(T, ArcTiling1D) else T
    arcs = list(coll.arcs)
    order = {a: i for i, a in enumerate(sorted(arcs, key=_sort_key))}
    out: list[Violation] = []
    for a in arcs:
        if not coll.is_tile(a):
            path = coll.arcs[a]
            out.append(Violation(ViolationKind.NotATile, frozenset([a]), SharedCells(frozenset(path))))
    nb: dict[Hashable, set] = {a: set() for a in arcs}
    for a, b in itertools.combinations(arcs, 2):
        if coll.shared((a, b)):
            nb[a].add(b)
            nb[b].add(a)
    for clique in _cliques(nb, order, 3):
        S = coll.shared(clique)
        faces = frozenset(clique)
        if len(clique) == 2:
            a, b = clique
            ok = (
                classify_cells(S) is CellClass.Point
                and S.vertices <= set(coll.ends(a))
                and S.vertices <= set(coll.ends(b))
            )
            if not ok:
                out.append(Violation(ViolationKind.PairNotArc, faces, S))
        else:
            kind = ViolationKind.TripleNonempty if S else ViolationKind.TripleEmptyButPairwise
            out.append(Violation(kind, faces, S))
    return LclReport.from_violations(out)


def subcollection_check(C: CellComplex2, F: Iterable, S: Iterable) -> LclReport:
    F, S = set(F), list(S)
    if not set(S) <= F:
        raise SubsetNotContained(f"{sorted(set(S) - F, key=_sort_key)} not in the collection")
    return check_lcl_2d(C, S)


@dataclass(frozen=True)
class NeighborhoodPair:
    """Tiles ``U`` meeting ``center`` and the arcs ``V`` they cut out of its
    boundary; ``U[i]`` meets the centre along ``V.arcs[i]``."""

    center: Hashable
    U: tuple
    V: ArcTiling1D


def neighborhood_collection(
    C: CellComplex2, F: Iterable, d0, report: LclReport | None = None
) -> NeighborhoodPair:
    """Collect the tiles of ``F`` meeting ``d0`` in boundary order.

    ``report`` may carry a previously computed passing ``check_lcl_2d(C, F)``
    to avoid re-checking the whole collection.
    """
    F = list(F)
    if d0 not in C.faces:
        raise UnknownFace(d0)
    if d0 not in F:
        raise UnknownFace(d0)
    if report is None:
        report = check_lcl_2d(C, F)
    if not report.ok:
        raise NotLcl("neighborhood_collection requires an LCL collection")
    walk = C.faces[d0]
    pos = {d.edge: i for i, d in enumerate(walk)}
    n = len(walk)
    blocks = []
    for f in F:
        if f == d0:
            continue
        S = shared_subcomplex(C, (d0, f))
        if not S:
            continue
        idx = sorted(pos[e] for e in S.edges)
        members = set(idx)
        # first edge of the cyclic run
        start = next((i for i in idx if (i - 1) % n not in members), idx[0])
        blocks.append((start, len(idx), f))
    if not blocks:
        raise FragmentedNeighborhood(f"face {d0!r} meets no other tile")
    blocks.sort()
    covered = sum(length for _, length, _ in blocks)
    ordered = blocks
    if covered < n:
        gaps = [
            i for i, (s, length, _) in enumerate(blocks)
            if (s + length) % n != blocks[(i + 1) % len(blocks)][0]
        ]
        if len(gaps) != 1:
            raise FragmentedNeighborhood(f"tiles around {d0!r} cover its boundary in {len(gaps)} runs")
        g = gaps[0]
        ordered = blocks[g + 1:] + blocks[: g + 1]
    tails = [C.endpoints(d)[0] for d in walk]
    starts = [tails[s] for s, _, _ in ordered]
    U = tuple(f for _, _, f in ordered)
    if covered == n:
        V = ArcTiling1D.from_breakpoints(TilingKind.Circle, starts)
    else:
        s, length, _ = ordered[-1]
        end = C.endpoints(walk[(s + length - 1) % n])[1]
        V = ArcTiling1D.from_breakpoints(TilingKind.Segment, starts + [end])
    return NeighborhoodPair(d0, U, V)
