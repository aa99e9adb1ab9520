import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from lcltile.cli import run
from lcltile.digital_space import Graph, graphs_isomorphic, intersection_graph, manifold_type
from lcltile.formats import FormatError, dumps_tiling, from_edge_list, loads_tiling, to_dot, to_edge_list
from lcltile.grid_forge import DensityField, gen_brick, gen_circle_arcs, gen_graded_brick, gen_hex, gen_square4
from lcltile.lcl_checker import check_lcl_2d
from lcltile.render import render_svg
from lcltile.roi_pipeline import Mask, write_pgm

SVG = "{http://www.w3.org/2000/svg}"


# ------------------------------------------------------------ round trips

@pytest.mark.parametrize(
    "C",
    [
        gen_brick(5, 4, torus=True)[0],
        gen_hex(3, 3)[0],
        gen_square4(2, 3)[0],
        gen_graded_brick(DensityField.uniform(48, 32, 16, level=1))[0],
    ],
)
def test_tiling_round_trip(C):
    text = dumps_tiling(C)
    back = loads_tiling(text)
    assert back.vertices == C.vertices
    assert back.edges == C.edges
    assert back.faces == C.faces
    assert back.torus == C.torus and back.period == C.period
    assert check_lcl_2d(back).to_dict() == check_lcl_2d(C).to_dict()
    assert dumps_tiling(back) == text


def test_arcs_round_trip():
    T = gen_circle_arcs(6)
    assert loads_tiling(dumps_tiling(T)) == T


def test_edge_list_round_trip():
    G = intersection_graph(gen_brick(4, 4, torus=True)[0])
    back = from_edge_list(to_edge_list(G))
    assert back == G


def test_edge_list_relabels():
    G = Graph(["b", "a", "c"], [("a", "b"), ("b", "c")])
    text = to_edge_list(G)
    assert "c label 0 a" in text
    assert graphs_isomorphic(from_edge_list(text), G)


@pytest.mark.parametrize(
    "text, where",
    [
        ("0 1\n", "<edges>:1"),
        ("p 3\n0 5\n", "<edges>:2"),
        ("p 3\np 3\n", "<edges>:2"),
        ("p 2\n1 1\n", "<edges>:2"),
        ("p 2\n0 x\n", "<edges>:2"),
        ("c nothing\n", "<edges>"),
    ],
)
def test_edge_list_errors(text, where):
    with pytest.raises(FormatError, match=f"^{where}"):
        from_edge_list(text)


@pytest.mark.parametrize(
    "doc, where",
    [
        ("{", "t.json:1:2"),
        ("[]", "t.json"),
        ('{"format": "nope"}', "t.json"),
        ('{"vertices": [{"id": 0, "x": 1}], "edges": [], "faces": []}', r"t.json: vertices\[0\]"),
        ('{"vertices": [], "edges": [{"id": 0, "a": 1, "b": 2}], "faces": []}', "t.json"),
        ('{"vertices": [], "edges": [], "faces": [{"id": 0, "edges": [[1, 2]]}]}', r"t.json: faces\[0\].edges\[0\]"),
        ('{"kind": "loop", "breakpoints": [], "arcs": []}', "t.json"),
    ],
)
def test_tiling_errors(doc, where):
    with pytest.raises(FormatError, match=f"^{where}"):
        loads_tiling(doc, source="t.json")


def test_dot():
    text = to_dot(Graph.cycle(4))
    assert text.startswith("graph model {")
    assert text.count("--") == 4


# ------------------------------------------------------------------- SVG

@pytest.mark.parametrize("C", [gen_brick(4, 4, torus=True)[0], gen_hex(3, 2)[0]])
def test_svg_is_valid_and_complete(C):
    G = intersection_graph(C)
    root = ET.fromstring(render_svg(C, G))
    polys = root.findall(f".//{SVG}polygon")
    lines = root.findall(f".//{SVG}line")
    circles = root.findall(f".//{SVG}circle")
    assert sorted(int(p.get("data-face")) for p in polys) == sorted(C.faces)
    assert len(lines) == len(G.edges)
    assert len({ln.get("data-edge") for ln in lines}) == len(G.edges)
    assert len(circles) == len(G.points)


def test_svg_arcs():
    T = gen_circle_arcs(5)
    root = ET.fromstring(render_svg(T, intersection_graph(T)))
    assert len(root.findall(f".//{SVG}polyline")) == 5
    assert len(root.findall(f".//{SVG}line")) == 5


# ------------------------------------------------------------------- CLI

def test_cli_gen_check_classify(tmp_path, capsys):
    t = tmp_path / "t.json"
    assert run(["gen", "--family", "brick", "--cols", "5", "--rows", "4", "--torus", "-o", str(t)]) == 0
    assert run(["check", str(t)]) == 0
    e = tmp_path / "m.edges"
    assert run(["model", str(t), "-o", str(e)]) == 0
    capsys.readouterr()
    assert run(["classify", str(e), "--interior", "all"]) == 0
    assert capsys.readouterr().out.strip() == "digital 2-manifold, type (6,6)"


def test_cli_gen_matches_library(tmp_path):
    t = tmp_path / "t.json"
    run(["gen", "--family", "hex", "--cols", "4", "--rows", "4", "--torus", "-o", str(t)])
    C = loads_tiling(t.read_text())
    D, _ = gen_hex(4, 4, torus=True)
    assert C.faces == D.faces
    G = intersection_graph(C)
    assert manifold_type(G).label == "(6,6)"


def test_cli_square4_fails(tmp_path, capsys):
    t = tmp_path / "s.json"
    run(["gen", "--family", "square4-invalid", "--cols", "2", "--rows", "2", "-o", str(t)])
    capsys.readouterr()
    assert run(["check", str(t)]) == 1
    out = capsys.readouterr().out
    assert "QuadNonempty" in out and out.count("PairNotArc") == 2
    assert run(["check", str(t), "--json"]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["ll_ok"] is False
    assert run(["classify", str(t)]) == 1


def test_cli_usage_errors(tmp_path, capsys):
    assert run([]) == 2
    assert run(["gen", "--family", "brick"]) == 2
    assert run(["gen", "--family", "brick", "--cols", "2", "--rows", "2", "--torus"]) == 2
    assert run(["check", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": [{"id": 0}]}')
    assert run(["check", str(bad)]) == 2
    assert "vertices[0]" in capsys.readouterr().err
    assert run(["gen", "--family", "circle", "--k", "0"]) == 2


def test_cli_classify_arcs(tmp_path, capsys):
    t = tmp_path / "c.json"
    run(["gen", "--family", "circle", "--k", "6", "-o", str(t)])
    capsys.readouterr()
    assert run(["classify", str(t)]) == 0
    assert capsys.readouterr().out.strip() == "digital 1-sphere"
    run(["gen", "--family", "segment", "--k", "5", "-o", str(t)])
    capsys.readouterr()
    assert run(["classify", str(t)]) == 0
    assert capsys.readouterr().out.strip() == "digital 1-manifold"


def test_cli_pipeline(tmp_path, capsys):
    yy, xx = np.mgrid[:64, :64]
    v = (((yy - 31.5) ** 2 + (xx - 31.5) ** 2) <= 144).astype(np.int64) * 255
    pgm = tmp_path / "m.pgm"
    pgm.write_bytes(write_pgm(Mask(v)))
    out = tmp_path / "out"
    assert run(["pipeline", str(pgm), "--out-dir", str(out), "--svg"]) == 0
    for name in ("tiling.json", "model.edges", "model.dot", "report.json", "tiling.svg"):
        assert (out / name).exists()
    report = json.loads((out / "report.json").read_text())
    assert report["manifold_ok"] and report["stats"]["roi_min_tile_width"] == 4
    C = loads_tiling((out / "tiling.json").read_text())
    assert from_edge_list((out / "model.edges").read_text()) == intersection_graph(C)
    assert run(["pipeline", str(tmp_path / "nope.pgm")]) == 2


def test_cli_graded_from_mask(tmp_path):
    v = np.zeros((40, 40), dtype=np.int64)
    v[5:10, 5:10] = 255
    pgm = tmp_path / "m.pgm"
    pgm.write_bytes(write_pgm(Mask(v), binary=False))
    t = tmp_path / "g.json"
    assert run(["gen", "--family", "graded", "--mask", str(pgm), "--levels", "2", "-o", str(t)]) == 0
    assert run(["check", str(t)]) == 0


def test_cli_render_and_export(tmp_path, capsys):
    t = tmp_path / "t.json"
    run(["gen", "--family", "brick", "--cols", "3", "--rows", "2", "-o", str(t)])
    svg = tmp_path / "t.svg"
    assert run(["render", str(t), "--model", "-o", str(svg)]) == 0
    ET.fromstring(svg.read_text())
    capsys.readouterr()
    assert run(["export", str(t), "--format", "dot"]) == 0
    assert capsys.readouterr().out.startswith("graph model {")
    assert run(["export", str(t), "--format", "edges"]) == 0
    assert capsys.readouterr().out.startswith("p 7\n")  # odd row has half bricks at both ends
