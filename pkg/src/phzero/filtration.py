"""Pairwise distances and the graded edge filtration of the complete graph."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .core import Edge, Filtration, PointCloud


def pairwise_distances(cloud: PointCloud) -> list[tuple[int, int, float]]:
    """Euclidean length of every unordered pair ``u < v``, in row-major pair order."""
    n = cloud.n
    if n < 2:
        return []
    u, v = np.triu_indices(n, k=1)
    diff = cloud.points[u] - cloud.points[v]
    lengths = np.sqrt(np.einsum("ij,ij->i", diff, diff))
    return list(zip(u.tolist(), v.tolist(), lengths.tolist()))


def build_filtration(distances: Sequence[tuple[int, int, float]] | Iterable) -> Filtration:
    records = list(distances)
    if not records:
        return Filtration()
    u = np.fromiter((r[0] for r in records), dtype=np.int64, count=len(records))
    v = np.fromiter((r[1] for r in records), dtype=np.int64, count=len(records))
    length = np.fromiter((r[2] for r in records), dtype=np.float64, count=len(records))
    # lexsort keys run last-to-first: primary length, then u, then v
    order = np.lexsort((v, u, length))
    u, v, length = u[order], v[order], length[order]
    # exact float equality for dedup, no epsilon merging
    scale, grade_index = np.unique(length, return_inverse=True)
    edges = tuple(
        Edge(a, b, d, g + 1)
        for a, b, d, g in zip(u.tolist(), v.tolist(), length.tolist(), grade_index.tolist())
    )
    return Filtration(edges, tuple(scale.tolist()))


def filtration_of(cloud: PointCloud) -> Filtration:
    return build_filtration(pairwise_distances(cloud))
