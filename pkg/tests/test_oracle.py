import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phzero.core import generate_uniform_cloud
from phzero.filtration import filtration_of
from phzero.oracle import UnionFind, kruskal_barcode, mst_total_weight

from .conftest import COLLINEAR, SQUARE, cloud_of


def test_union_find_basics():
    uf = UnionFind(5)
    assert uf.components == 5
    assert uf.union(0, 1) and uf.union(3, 4)
    assert not uf.union(1, 0)
    assert uf.components == 3
    assert uf.find(0) == uf.find(1) != uf.find(3)
    assert uf.union(1, 4)
    assert len({uf.find(i) for i in range(5)}) == uf.components == 2


def test_kruskal_collinear():
    b = kruskal_barcode(filtration_of(cloud_of(COLLINEAR)), 3)
    assert b.death_lengths() == [1.0, 2.0]
    assert b.essential_count == 1


def test_kruskal_square():
    b = kruskal_barcode(filtration_of(cloud_of(SQUARE)), 4)
    assert b.death_lengths() == [1.0, 1.0, 1.0]


def test_kruskal_single_point():
    b = kruskal_barcode(filtration_of(cloud_of([(0.2, 0.3)])), 1)
    assert b.finite == () and b.essential_count == 1


def test_mst_weight():
    assert mst_total_weight(filtration_of(cloud_of(COLLINEAR)), 3) == 3.0
    assert mst_total_weight(filtration_of(cloud_of(SQUARE)), 4) == 3.0
    assert mst_total_weight(filtration_of(cloud_of([(0.0, 0.0)])), 1) == 0.0
    assert mst_total_weight(filtration_of(generate_uniform_cloud(0, 2, 0)), 0) == 0.0


def _brute_force_mst_weight(points):
    """Minimum over all spanning trees by enumerating (n-1)-edge subsets."""
    n = len(points)
    edges = [(u, v, ((points[u][0] - points[v][0]) ** 2 + (points[u][1] - points[v][1]) ** 2) ** 0.5)
             for u, v in itertools.combinations(range(n), 2)]
    best = None
    for subset in itertools.combinations(edges, n - 1):
        uf = UnionFind(n)
        if all(uf.union(u, v) for u, v, _ in subset):
            w = sum(d for _, _, d in subset)
            best = w if best is None else min(best, w)
    return best


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 6), st.integers(0, 2**64 - 1))
def test_kruskal_weight_matches_enumeration(n, seed):
    cloud = generate_uniform_cloud(n, 2, seed)
    expected = _brute_force_mst_weight(cloud.points.tolist())
    assert mst_total_weight(filtration_of(cloud), n) == pytest.approx(expected, rel=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 40), st.integers(1, 3), st.integers(0, 2**64 - 1))
def test_kruskal_bar_count(n, dim, seed):
    b = kruskal_barcode(filtration_of(generate_uniform_cloud(n, dim, seed)), n)
    assert len(b.finite) == n - 1
    assert b.essential_count == 1
