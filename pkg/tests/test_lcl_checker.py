import itertools
import random

import pytest

from lcltile import fixtures
from lcltile.complex_core import ArcCollection, TilingKind, interior_faces
from lcltile.digital_space import Graph, graphs_isomorphic, intersection_graph, rim
from lcltile.grid_forge import gen_brick, gen_circle_arcs, gen_hex, gen_segment_arcs, gen_square4
from lcltile.lcl_checker import (
    FragmentedNeighborhood,
    LclReport,
    NotLcl,
    SubsetNotContained,
    Violation,
    ViolationKind,
    check_lcl_1d,
    check_lcl_2d,
    neighborhood_collection,
    subcollection_check,
)

from corpus import lcl_corpus
from oracles import brute_lcl_1d, brute_lcl_2d

SMALL_2D = [
    *[(f"tiles-{k}", b()) for k, (b, _) in fixtures.TILE_PANELS.items()],
    ("square4-2x2", gen_square4(2, 2)[0]),
    ("square4-3x2", gen_square4(3, 2)[0]),
    ("brick-3x3", gen_brick(3, 3)[0]),
    ("brick-torus-3x3", gen_brick(3, 3, torus=True)[0]),
    ("brick-torus-3x4", gen_brick(3, 4, torus=True)[0]),
    ("hex-3x3", gen_hex(3, 3)[0]),
]


@pytest.mark.parametrize("name, C", SMALL_2D, ids=[n for n, _ in SMALL_2D])
def test_2d_checker_matches_brute_force(name, C):
    r = check_lcl_2d(C)
    assert (r.lc_ok, r.ll_ok) == brute_lcl_2d(C)


def test_subcollections_match_brute_force():
    rng = random.Random(11)
    for _, C in SMALL_2D:
        faces = sorted(C.faces)
        for _ in range(15):
            S = rng.sample(faces, rng.randint(1, len(faces)))
            r = check_lcl_2d(C, S)
            assert (r.lc_ok, r.ll_ok) == brute_lcl_2d(C, S)


@pytest.mark.parametrize("key", sorted(fixtures.TILE_PANELS))
def test_tile_panel_verdicts(key):
    build, want = fixtures.TILE_PANELS[key]
    assert fixtures.verdict(check_lcl_2d(build())) == want


@pytest.mark.parametrize("key", sorted(fixtures.ARC_PANELS))
def test_arc_panel_verdicts(key):
    build, want = fixtures.ARC_PANELS[key]
    A = build()
    r = check_lcl_1d(A)
    assert fixtures.verdict(r) == want
    assert (r.lc_ok, r.ll_ok) == brute_lcl_1d(A.arcs)


def test_square4_violations():
    r = check_lcl_2d(gen_square4(2, 2)[0])
    assert r.count(ViolationKind.QuadNonempty) == 1
    assert r.count(ViolationKind.PairNotArc) == 2
    assert not r.ll_ok and not r


def test_ring_of_three_is_lc_failure():
    r = check_lcl_2d(fixtures.tiles_ring_of_three())
    assert [v.kind for v in r.violations] == [ViolationKind.TripleEmptyButPairwise]
    assert r.ll_ok and not r.lc_ok


def test_three_column_torus_fails_lc():
    # each row of three bricks wraps into a triangle with no common point
    r = check_lcl_2d(gen_brick(3, 3, torus=True)[0])
    assert r.count(ViolationKind.TripleEmptyButPairwise) > 0
    assert not r.lc_ok


def test_circle_small_k():
    assert check_lcl_1d(gen_circle_arcs(4)).ok
    r2 = check_lcl_1d(gen_circle_arcs(2))
    assert [v.kind for v in r2.violations] == [ViolationKind.PairNotArc]
    r3 = check_lcl_1d(gen_circle_arcs(3))
    assert [v.kind for v in r3.violations] == [ViolationKind.TripleEmptyButPairwise]
    assert r3.ll_ok and not r3.lc_ok
    r1 = check_lcl_1d(gen_circle_arcs(1))
    assert [v.kind for v in r1.violations] == [ViolationKind.NotATile]


@pytest.mark.parametrize("k", range(1, 8))
def test_segments_pass(k):
    assert check_lcl_1d(gen_segment_arcs(k)).ok


def test_1d_random_collections_match_brute_force():
    rng = random.Random(5)
    for _ in range(300):
        arcs = {}
        for a in range(rng.randint(1, 5)):
            start = rng.randrange(8)
            arcs[a] = tuple(range(start, start + rng.randint(1, 3) + 1))
        r = check_lcl_1d(ArcCollection(arcs))
        assert (r.lc_ok, r.ll_ok) == brute_lcl_1d(arcs)


def test_overlapping_arcs_fail_ll():
    r = check_lcl_1d(ArcCollection({0: (0, 1, 2), 1: (1, 2, 3)}))
    assert r.count(ViolationKind.PairNotArc) == 1


def test_report_serialises():
    r = check_lcl_2d(gen_square4(2, 2)[0])
    doc = r.to_dict()
    assert doc["lc_ok"] is True and doc["ll_ok"] is False
    assert doc["violations"][0]["kind"] in {k.value for k in ViolationKind}
    assert LclReport.from_violations([]).ok


def test_report_flags_follow_kinds():
    v = Violation(ViolationKind.TripleEmptyButPairwise, frozenset({1, 2, 3}), None)
    r = LclReport.from_violations([v])
    assert r.ll_ok and not r.lc_ok


# ------------------------------------------------------------ subcollections

def test_subcollection_requires_subset():
    C, F = gen_brick(3, 3)
    with pytest.raises(SubsetNotContained):
        subcollection_check(C, [0, 1], [0, 5])


def test_random_subcollections_stay_lcl():
    rng = random.Random(2)
    for _, C, F in lcl_corpus(4):
        faces = sorted(F)
        for _ in range(5):
            S = rng.sample(faces, rng.randint(1, len(faces)))
            assert subcollection_check(C, F, S).ok


# ------------------------------------------------------------ neighbourhoods

def test_neighborhood_of_interior_tile():
    C = fixtures.tiles_ring_of_six()
    (center,) = interior_faces(C)
    N = neighborhood_collection(C, C.faces, center)
    assert N.V.kind is TilingKind.Circle
    assert len(N.U) == 6
    assert check_lcl_1d(N.V).ok
    assert graphs_isomorphic(rim(intersection_graph(C), center), intersection_graph(N.V))


def test_neighborhood_of_boundary_tile_is_segment():
    C, F = gen_brick(3, 3)
    N = neighborhood_collection(C, F, 0)
    assert N.V.kind is TilingKind.Segment
    G = intersection_graph(C, F)
    assert graphs_isomorphic(rim(G, 0), intersection_graph(N.V))


def test_neighborhood_needs_lcl():
    with pytest.raises(NotLcl):
        neighborhood_collection(*gen_square4(2, 2), 0)


def test_neighborhood_of_isolated_tile():
    C = fixtures.tiles_shared_edge()
    with pytest.raises(FragmentedNeighborhood):
        neighborhood_collection(C, [0], 0)


def test_neighborhood_with_two_gaps():
    # remove two opposite neighbours of the middle brick
    C = fixtures.tiles_ring_of_six()
    (center,) = interior_faces(C)
    cyc = _cycle_order(rim(intersection_graph(C), center))
    keep = set(C.faces) - {cyc[0], cyc[3]}
    with pytest.raises(FragmentedNeighborhood):
        neighborhood_collection(C, keep, center)


def _cycle_order(R: Graph):
    start = min(R.points)
    order, prev = [start], None
    while len(order) < len(R.points):
        nxt = min(p for p in R.neighbors(order[-1]) if p != prev and p not in order)
        prev = order[-1]
        order.append(nxt)
    return order
