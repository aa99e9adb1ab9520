"""Build and verify LCL tilings of planar regions and their digital models."""
from .complex_core import (
    ArcCollection,
    ArcTiling1D,
    CellClass,
    CellComplex2,
    ComplexError,
    DirectedEdge,
    Edge,
    SharedCells,
    TilingKind,
    build_complex,
    classify_cells,
    interior_faces,
    shared_subcomplex,
)
from .digital_space import (
    DeleteEdge,
    DeleteVertex,
    GlueEdge,
    GlueVertex,
    Graph,
    ManifoldType,
    Tri,
    apply_ct,
    clique_counts,
    clique_number,
    euler_characteristic,
    find_contraction,
    graphs_isomorphic,
    intersection_graph,
    is_contractible,
    is_digital_0_sphere,
    is_digital_1_manifold,
    is_digital_1_sphere_fast,
    is_digital_2_manifold,
    is_digital_sphere_def,
    manifold_type,
    rim,
)
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
from .lcl_checker import (
    LclReport,
    Violation,
    ViolationKind,
    check_lcl_1d,
    check_lcl_2d,
    neighborhood_collection,
    subcollection_check,
)
from .roi_pipeline import LCLDiscretizer, Mask, discretize, read_pgm, write_pgm

__version__ = "0.1.0"
