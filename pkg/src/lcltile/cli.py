"""Command-line entry point: ``lcltile <command> ...``.

Exit status: 0 on success or a passing verdict, 1 when a verdict fails,
2 for usage, input or I/O errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .complex_core import ArcTiling1D, ComplexError, TilingKind, interior_faces
from .digital_space import (
    Graph,
    UnknownPoint,
    intersection_graph,
    is_digital_1_manifold,
    is_digital_1_sphere_fast,
    is_digital_2_manifold,
    is_simple_path,
    manifold_type,
    rim,
)
from .formats import FormatError, dumps_tiling, from_edge_list, loads_tiling, report_json, to_dot, to_edge_list
from .grid_forge import (
    DensityField,
    gen_brick,
    gen_circle_arcs,
    gen_graded_brick,
    gen_hex,
    gen_segment_arcs,
    gen_square4,
    gen_trunc_square,
)
from .lcl_checker import check_lcl_1d, check_lcl_2d
from .render import render_svg
from .roi_pipeline import PgmError, PipelineInvariantBroken, discretize, mask_to_density, read_pgm

__all__ = ["main", "run"]

OK, FAIL, ERROR = 0, 1, 2

FAMILIES = ("brick", "hex", "trunc-square", "graded", "circle", "segment", "square4-invalid")


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ input

def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None


def _read_text(path: str) -> str:
    data = _read_bytes(path)
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise UsageError(f"{path}: not UTF-8 text (byte {exc.start})") from None


def _load(path: str):
    """Tiling document or edge list, told apart by the leading character."""
    text = _read_text(path)
    if text.lstrip().startswith("{"):
        return loads_tiling(text, source=path)
    return from_edge_list(text, source=path)


def _load_tiling(path: str):
    obj = _load(path)
    if isinstance(obj, Graph):
        raise UsageError(f"{path}: expected a tiling document, got an edge list")
    return obj


def _as_graph(obj) -> Graph:
    return obj if isinstance(obj, Graph) else intersection_graph(obj)


def _write(out: str | None, text: str, binary: bool = False) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"{out}: {exc.strerror}") from None


# --------------------------------------------------------------- commands

def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--family {args.family} needs --{n.replace('_', '-')}")


def cmd_gen(args) -> int:
    fam = args.family
    if fam in ("circle", "segment"):
        _need(args, "k")
        T = gen_circle_arcs(args.k) if fam == "circle" else gen_segment_arcs(args.k)
    elif fam == "graded":
        if args.mask:
            m = read_pgm(_read_bytes(args.mask), threshold=args.threshold)
            finest = args.base_size // args.ratio ** (args.levels - 1)
            halo = finest if args.halo is None else args.halo
            D = mask_to_density(m, args.levels, args.base_size, args.ratio, halo)
        else:
            _need(args, "width", "height")
            D = DensityField.uniform(args.width, args.height, args.base_size, level=args.level, ratio=args.ratio)
        T, _ = gen_graded_brick(D)
    else:
        _need(args, "cols", "rows")
        if fam == "brick":
            T, _ = gen_brick(args.cols, args.rows, torus=args.torus, width=args.tile_width, height=args.tile_height)
        elif fam == "hex":
            T, _ = gen_hex(args.cols, args.rows, torus=args.torus)
        elif fam == "trunc-square":
            T, _ = gen_trunc_square(args.cols, args.rows, torus=args.torus)
        else:
            T, _ = gen_square4(args.cols, args.rows)
    _write(args.output, dumps_tiling(T))
    return OK


def _check(T):
    return check_lcl_1d(T) if isinstance(T, ArcTiling1D) else check_lcl_2d(T)


def cmd_check(args) -> int:
    T = _load_tiling(args.tiling)
    report = _check(T)
    if args.json:
        _write(args.output, report_json(report.to_dict()))
    else:
        lines = [
            f"LC {'pass' if report.lc_ok else 'FAIL'}",
            f"LL {'pass' if report.ll_ok else 'FAIL'}",
        ]
        for v in report.violations:
            faces = ", ".join(map(str, sorted(v.faces, key=str)))
            lines.append(f"violation {v.kind.value} faces {{{faces}}}")
        lines.append("LCL" if report.ok else f"not LCL: {len(report.violations)} violation(s)")
        _write(args.output, "\n".join(lines) + "\n")
    return OK if report.ok else FAIL


def cmd_model(args) -> int:
    T = _load_tiling(args.tiling)
    G = intersection_graph(T)
    text = to_dot(G) if args.format == "dot" else to_edge_list(G, comment=f"model of {args.tiling}")
    _write(args.output, text)
    return OK


def _parse_interior(spec: str | None, G: Graph, default):
    if spec is None or spec == "auto":
        return default
    if spec == "all":
        return G.points
    if spec == "none":
        return frozenset()
    ids = set()
    for tok in spec.split(","):
        tok = tok.strip()
        ids.add(int(tok) if tok.lstrip("-").isdigit() else tok)
    missing = ids - G.points
    if missing:
        raise UsageError(f"--interior: unknown point(s) {sorted(missing, key=str)}")
    return frozenset(ids)


def _first_bad_point(G: Graph, interior, dim: int):
    for v in G.sorted_points():
        r = rim(G, v)
        if dim == 1:
            good = len(r.points) == 2 and not r.edges if v in interior else len(r.points) == 1
        else:
            good = is_digital_1_sphere_fast(r) if v in interior else is_simple_path(r)
        if not good:
            return v, r
    return None, None


def cmd_classify(args) -> int:
    obj = _load(args.input)
    G = _as_graph(obj)
    dim = args.dim
    if isinstance(obj, ArcTiling1D):
        dim = dim or 1
        ends = frozenset() if obj.kind is TilingKind.Circle else {0, len(obj.arcs) - 1}
        default = G.points - ends
    elif isinstance(obj, Graph):
        default = G.points
    else:
        default = interior_faces(obj)
    dim = dim or 2
    interior = _parse_interior(args.interior, G, default)

    if dim == 1:
        if interior == G.points and is_digital_1_sphere_fast(G):
            print("digital 1-sphere")
            return OK
        if is_digital_1_manifold(G, interior):
            print("digital 1-manifold")
            return OK
    elif is_digital_2_manifold(G, interior):
        print(f"digital 2-manifold, type {manifold_type(G, interior).label}")
        return OK
    if not G.is_connected():
        print(f"not a digital {dim}-manifold: model is disconnected")
        return FAIL
    v, r = _first_bad_point(G, interior, dim)
    role = "interior" if v in interior else "boundary"
    print(f"not a digital {dim}-manifold: {role} point {v} has rim with "
          f"{len(r.points)} points and {len(r.edges)} edges")
    return FAIL


def cmd_pipeline(args) -> int:
    m = read_pgm(_read_bytes(args.mask), threshold=args.threshold)
    try:
        res = discretize(m, levels=args.levels, base_size=args.base_size, ratio=args.ratio, halo=args.halo)
    except PipelineInvariantBroken as exc:
        print(f"pipeline invariant broken: {exc}", file=sys.stderr)
        if exc.report is not None:
            print(report_json(exc.report.to_dict()), file=sys.stderr, end="")
        return FAIL
    out = Path(args.out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise UsageError(f"{out}: {exc.strerror}") from None
    summary = res.summary()
    _write(str(out / "tiling.json"), dumps_tiling(res.complex))
    _write(str(out / "model.edges"), to_edge_list(res.model, comment=f"model of {args.mask}"))
    _write(str(out / "model.dot"), to_dot(res.model))
    _write(str(out / "report.json"), report_json(summary))
    if args.svg:
        _write(str(out / "tiling.svg"), render_svg(res.complex, res.model))
    print(report_json(summary), end="")
    return OK if res.manifold_ok and res.lcl.ok else FAIL


def cmd_render(args) -> int:
    T = _load_tiling(args.tiling)
    model = intersection_graph(T) if args.model else None
    _write(args.output, render_svg(T, model, scale=args.scale, margin=args.margin))
    return OK


def cmd_export(args) -> int:
    G = _as_graph(_load(args.input))
    _write(args.output, to_dot(G, name=args.name) if args.format == "dot" else to_edge_list(G))
    return OK


# ----------------------------------------------------------------- parser

def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {n}")
    return n


def _add_pipeline_params(p) -> None:
    p.add_argument("--levels", type=_positive, default=3)
    p.add_argument("--base-size", type=_positive, default=16)
    p.add_argument("--ratio", type=_positive, default=2)
    p.add_argument("--halo", type=_positive, default=None, help="band width in pixels (default: finest tile size)")
    p.add_argument("--threshold", type=float, default=None, help="ROI is pixels above this (default: maxval // 2)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lcltile", description="Build and verify LCL tilings and their digital models.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a tiling document")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--cols", type=_positive)
    p.add_argument("--rows", type=_positive)
    p.add_argument("--torus", action="store_true")
    p.add_argument("--k", type=_positive, help="number of arcs (circle, segment)")
    p.add_argument("--tile-width", type=_positive, default=4, help="brick width (brick)")
    p.add_argument("--tile-height", type=_positive, default=2, help="brick height (brick)")
    p.add_argument("--width", type=_positive, help="domain width (graded, no mask)")
    p.add_argument("--height", type=_positive, help="domain height (graded, no mask)")
    p.add_argument("--level", type=_nonneg, default=0, help="uniform refinement level (graded, no mask)")
    p.add_argument("--mask", help="PGM mask driving the density (graded)")
    _add_pipeline_params(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="run the LC / LL checks")
    p.add_argument("tiling")
    p.add_argument("--json", action="store_true", help="emit the report as JSON")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("model", help="write the digital model of a tiling")
    p.add_argument("tiling")
    p.add_argument("--format", choices=("edges", "dot"), default="edges")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("classify", help="digital manifold verdict and type")
    p.add_argument("input", help="tiling document or edge list")
    p.add_argument("--interior", help="auto | all | none | comma-separated point ids")
    p.add_argument("--dim", type=int, choices=(1, 2))
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("pipeline", help="mask to graded LCL tiling to digital model")
    p.add_argument("mask", help="PGM file (P2 or P5)")
    _add_pipeline_params(p)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--svg", action="store_true", help="also write tiling.svg")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("render", help="SVG drawing of a tiling")
    p.add_argument("tiling")
    p.add_argument("--model", action="store_true", help="overlay the digital model")
    p.add_argument("--scale", type=float, default=10.0)
    p.add_argument("--margin", type=float, default=10.0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("export", help="convert a model to DOT or an edge list")
    p.add_argument("input", help="tiling document or edge list")
    p.add_argument("--format", choices=("dot", "edges"), default="dot")
    p.add_argument("--name", default="model")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export)
    return ap


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else ERROR
    try:
        return args.func(args)
    except (UsageError, FormatError, PgmError, ComplexError, UnknownPoint) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"lcltile {args.command}: error: {msg}", file=sys.stderr)
        return ERROR
    except ValueError as exc:
        # generator preconditions (TooSmall, DomainTooSmall, DensityTooFine, ...)
        print(f"lcltile {args.command}: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
