"""Region-of-interest discretisation.

A raster mask becomes a density field (finest tiles over the region, one
level coarser per halo band outward), the density field becomes a graded
brick tiling, and the tiling becomes its digital model.  Every run
re-verifies that the tiling is LCL and that the model is a digital
2-manifold.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy import ndimage
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .complex_core import CellComplex2, interior_faces
from .digital_space import Graph, ManifoldType, intersection_graph, is_digital_2_manifold, manifold_type
from .grid_forge import DensityField, DensityTooFine, gen_graded_brick
from .lcl_checker import LclReport, check_lcl_2d

__all__ = [
    "BadMagic",
    "LCLDiscretizer",
    "Mask",
    "PgmError",
    "PipelineInvariantBroken",
    "PipelineResult",
    "TruncatedData",
    "ValueOutOfRange",
    "discretize",
    "mask_to_density",
    "read_pgm",
    "write_pgm",
]


class PgmError(ValueError):
    pass


class BadMagic(PgmError):
    pass


class TruncatedData(PgmError):
    pass


class ValueOutOfRange(PgmError):
    pass


class PipelineInvariantBroken(RuntimeError):
    def __init__(self, message: str, report: LclReport | None = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True, eq=False)
class Mask:
    """Grayscale raster; pixels strictly above ``threshold`` are in the ROI.

    ``values`` is indexed ``[row, column]`` with row 0 at y = 0.
    """

    values: np.ndarray
    maxval: int = 255
    threshold: float | None = None

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.ndim != 2 or v.size == 0:
            raise ValueError("mask values must be a non-empty 2D array")
        if self.maxval < 1:
            raise ValueError("maxval must be at least 1")
        if v.min() < 0 or v.max() > self.maxval:
            raise ValueOutOfRange(f"mask values must lie in 0..{self.maxval}")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        if self.threshold is None:
            object.__setattr__(self, "threshold", self.maxval // 2)

    @property
    def width(self) -> int:
        return int(self.values.shape[1])

    @property
    def height(self) -> int:
        return int(self.values.shape[0])

    @property
    def roi(self) -> np.ndarray:
        return self.values > self.threshold

    def with_threshold(self, threshold: float) -> "Mask":
        return Mask(self.values, self.maxval, threshold)


_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*")


def _header_tokens(data: bytes, count: int) -> tuple[list[int], int]:
    pos = 2
    out = []
    for i in range(count):
        m = _TOKEN.match(data, pos)
        pos = m.end()
        start = pos
        while pos < len(data) and data[pos:pos + 1].isdigit():
            pos += 1
        if start == pos:
            raise TruncatedData(f"PGM header ended at byte {start} (expected {count} fields)")
        out.append(int(data[start:pos]))
    return out, pos


def read_pgm(data: bytes, threshold: float | None = None) -> Mask:
    """Parse a P2 (ASCII) or P5 (binary) PGM document."""
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise BadMagic(f"expected P2 or P5, got {magic!r}")
    (width, height, maxval), pos = _header_tokens(data, 3)
    if width < 1 or height < 1:
        raise PgmError("PGM dimensions must be positive")
    if not 1 <= maxval <= 65535:
        raise ValueOutOfRange(f"maxval {maxval} outside 1..65535")
    n = width * height
    if magic == b"P2":
        body = re.sub(rb"#[^\n]*", b"", data[pos:]).split()
        if len(body) < n:
            raise TruncatedData(f"expected {n} samples, found {len(body)}")
        try:
            vals = np.array([int(t) for t in body[:n]], dtype=np.int64)
        except ValueError as exc:
            raise PgmError(f"non-numeric sample: {exc}") from None
    else:
        if pos >= len(data) or not data[pos:pos + 1].isspace():
            raise TruncatedData("missing whitespace after the PGM header")
        pos += 1
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        need = n * dtype.itemsize
        if len(data) - pos < need:
            raise TruncatedData(f"expected {need} bytes of samples, found {len(data) - pos}")
        vals = np.frombuffer(data, dtype=dtype, count=n, offset=pos).astype(np.int64)
    if vals.max() > maxval:
        raise ValueOutOfRange(f"sample {int(vals.max())} exceeds maxval {maxval}")
    return Mask(vals.reshape(height, width), maxval, threshold)


def write_pgm(mask: Mask, binary: bool = True) -> bytes:
    h, w = mask.values.shape
    if binary:
        dtype = ">u2" if mask.maxval > 255 else "u1"
        return f"P5\n{w} {h}\n{mask.maxval}\n".encode() + mask.values.astype(dtype).tobytes()
    rows = "\n".join(" ".join(str(int(v)) for v in row) for row in mask.values)
    return f"P2\n{w} {h}\n{mask.maxval}\n{rows}\n".encode()


def mask_to_density(m: Mask, levels: int, base_size: int, ratio: int = 2, halo: int = 4) -> DensityField:
    """Finest level ``levels - 1`` on the ROI and within ``halo`` units of it
    (chessboard distance), one level less per further ``halo`` band."""
    if levels < 1:
        raise ValueError("levels must be at least 1")
    if halo < 1:
        raise ValueError("halo must be at least 1")
    if base_size // ratio ** (levels - 1) < 2:
        raise DensityTooFine(f"base_size {base_size} cannot be divided {levels - 1} times by {ratio}")
    roi = m.roi
    if not roi.any():
        lev = np.zeros(roi.shape, dtype=np.int64)
    else:
        d = ndimage.distance_transform_cdt(~roi, metric="chessboard").astype(np.int64)
        drop = np.maximum(0, (d - 1) // halo)
        lev = np.maximum(0, levels - 1 - drop)
    return DensityField(lev, base_size, ratio)


@dataclass(eq=False)
class PipelineResult:
    complex: CellComplex2
    faces: frozenset
    model: Graph
    lcl: LclReport
    manifold_ok: bool
    type_report: ManifoldType | None
    interior: frozenset
    density: DensityField
    face_levels: dict
    labels: np.ndarray
    stats: dict[str, Any] = field(default_factory=dict)

    def summary(self) -> dict:
        return {
            "lcl": self.lcl.to_dict(),
            "manifold_ok": self.manifold_ok,
            "manifold_type": self.type_report.label if self.type_report else None,
            "rim_lengths": (
                {str(k): v for k, v in self.type_report.counts} if self.type_report else None
            ),
            "stats": self.stats,
        }


def _face_boxes(C: CellComplex2) -> dict:
    boxes = {}
    for f in C.faces:
        xs = [C.vertices[v][0] for v in C.walk_vertices(f)]
        ys = [C.vertices[v][1] for v in C.walk_vertices(f)]
        boxes[f] = (min(xs), min(ys), max(xs), max(ys))
    return boxes


def _label_map(C: CellComplex2, shape: tuple[int, int]) -> np.ndarray:
    # graded brick tiles are axis-aligned rectangles
    labels = np.full(shape, -1, dtype=np.int64)
    for f, (x0, y0, x1, y1) in _face_boxes(C).items():
        labels[y0:y1, x0:x1] = f
    return labels


def discretize(
    m: Mask,
    levels: int = 3,
    base_size: int = 16,
    ratio: int = 2,
    halo: int | None = None,
) -> PipelineResult:
    """Mask -> density -> graded LCL tiling -> digital model, re-verified."""
    finest = base_size // ratio ** (levels - 1)
    halo = finest if halo is None else halo
    D = mask_to_density(m, levels, base_size, ratio, halo)
    C, F, face_levels = gen_graded_brick(D, return_levels=True)
    report = check_lcl_2d(C, F)
    if not report.ok:
        raise PipelineInvariantBroken("graded tiling is not LCL", report)
    G = intersection_graph(C, F)
    interior = interior_faces(C)
    ok = is_digital_2_manifold(G, interior)
    if not ok:
        raise PipelineInvariantBroken("digital model is not a digital 2-manifold", report)
    mtype = manifold_type(G, interior)
    labels = _label_map(C, (m.height, m.width))
    if (labels < 0).any():
        raise PipelineInvariantBroken("tiles do not cover the mask")

    boxes = _face_boxes(C)
    widths = {f: boxes[f][2] - boxes[f][0] for f in F}
    roi_faces = sorted(set(np.unique(labels[m.roi]).tolist()))
    per_level: dict[str, int] = {}
    for lev in face_levels.values():
        per_level[str(lev)] = per_level.get(str(lev), 0) + 1
    stats = {
        "tiles": len(F),
        "interior_tiles": len(interior),
        "model_edges": len(G.edges),
        "min_tile_width": min(widths.values()),
        "max_tile_width": max(widths.values()),
        "roi_pixels": int(m.roi.sum()),
        "roi_tiles": len(roi_faces),
        "roi_min_tile_width": min((widths[f] for f in roi_faces), default=None),
        "roi_max_tile_width": max((widths[f] for f in roi_faces), default=None),
        "tiles_per_level": dict(sorted(per_level.items())),
    }
    return PipelineResult(C, F, G, report, ok, mtype, interior, D, face_levels, labels, stats)


class LCLDiscretizer(TransformerMixin, BaseEstimator):
    """Discretise a region-of-interest mask into a variable-density LCL grid.

    Parameters
    ----------
    levels : int, default=3
        Number of refinement levels; the ROI gets the finest one.
    base_size : int, default=16
        Width of a coarsest tile, in pixels.
    ratio : int, default=2
        Tile-size divisor per level.
    halo : int or None, default=None
        Width of each level band around the ROI; ``None`` uses the finest
        tile width.
    threshold : float or None, default=None
        ROI threshold.  ``None`` keeps the threshold of a :class:`Mask`, or
        uses half the maximum of a plain array.

    Attributes
    ----------
    result_ : PipelineResult
    tiling_ : CellComplex2
    model_ : Graph
        Digital model (intersection graph) of the tiling.
    labels_ : ndarray of shape (height, width)
        Tile id covering each pixel.
    n_tiles_ : int
    manifold_type_ : ManifoldType
    """

    def __init__(self, levels=3, base_size=16, ratio=2, halo=None, threshold=None):
        self.levels = levels
        self.base_size = base_size
        self.ratio = ratio
        self.halo = halo
        self.threshold = threshold

    def _mask(self, X) -> Mask:
        if isinstance(X, Mask):
            return X if self.threshold is None else X.with_threshold(self.threshold)
        arr = check_array(X, dtype=np.float64, ensure_2d=True)
        if arr.min() < 0:
            raise ValueError("mask values must be non-negative")
        top = float(arr.max())
        maxval = max(1, int(np.ceil(top)))
        thr = self.threshold if self.threshold is not None else top / 2
        return Mask(arr, maxval, thr)

    def fit(self, X, y=None):
        """Build the graded tiling and digital model for mask ``X``."""
        mask = self._mask(X)
        res = discretize(mask, self.levels, self.base_size, self.ratio, self.halo)
        self.result_ = res
        self.tiling_ = res.complex
        self.model_ = res.model
        self.labels_ = res.labels
        self.n_tiles_ = len(res.faces)
        self.manifold_type_ = res.type_report
        self.stats_ = res.stats
        return self

    def transform(self, X):
        """Mean pixel value of ``X`` over each tile, indexed by tile id."""
        check_is_fitted(self, "labels_")
        values = X.values if isinstance(X, Mask) else check_array(X, dtype=np.float64)
        if values.shape != self.labels_.shape:
            raise ValueError(f"expected an image of shape {self.labels_.shape}, got {values.shape}")
        sums = np.bincount(self.labels_.ravel(), weights=values.ravel().astype(np.float64), minlength=self.n_tiles_)
        counts = np.bincount(self.labels_.ravel(), minlength=self.n_tiles_)
        return sums / np.maximum(counts, 1)

    def inverse_transform(self, Xt):
        """Paint per-tile values back onto the pixel grid."""
        check_is_fitted(self, "labels_")
        Xt = np.asarray(Xt)
        if Xt.shape != (self.n_tiles_,):
            raise ValueError(f"expected {self.n_tiles_} tile values, got shape {Xt.shape}")
        return Xt[self.labels_]
