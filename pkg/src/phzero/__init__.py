"""0th persistent homology barcodes of point clouds by graded boundary-matrix reduction."""

from .core import (
    Barcode,
    DimensionMismatchError,
    Edge,
    Filtration,
    Interval,
    PointCloud,
    PointsFormatError,
    generate_uniform_cloud,
    read_points,
    write_points,
)
from .filtration import build_filtration, filtration_of, pairwise_distances
from .oracle import UnionFind, kruskal_barcode, mst_total_weight
from .pipeline import compute_barcode
from .reduction import (
    BoundaryColumn,
    BoundaryMatrix,
    ReductionOptions,
    ReductionStats,
    build_boundary_matrix,
    extract_barcode,
    format_barcode,
    reduce,
    reduce_parallel,
)

__version__ = "0.1.0"
