from __future__ import annotations

from typing import Optional

from .core import Barcode, PointCloud
from .filtration import filtration_of
from .reduction import (
    ReductionOptions,
    ReductionStats,
    build_boundary_matrix,
    extract_barcode,
    reduce,
    reduce_parallel,
)


def compute_barcode(
    cloud: PointCloud,
    opts: ReductionOptions = ReductionOptions(),
    stats: Optional[ReductionStats] = None,
) -> Barcode:
    """Distances, sort, boundary matrix, reduction and barcode for one cloud."""
    f = filtration_of(cloud)
    m = build_boundary_matrix(f, cloud.n)
    run = reduce if opts.workers == 1 else reduce_parallel
    return extract_barcode(run(m, opts, stats), f)
