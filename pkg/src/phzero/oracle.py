"""Kruskal/union-find computation of the 0th persistence barcode, used as the independent check."""

from __future__ import annotations

from .core import Barcode, Filtration, Interval


class UnionFind:
    """Disjoint sets over ``0..n-1`` with union by rank and path compression."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n
        self.components = n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        """Merge the sets of ``x`` and ``y``; False if they were already joined."""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1
        self.components -= 1
        return True


def kruskal_barcode(f: Filtration, n: int) -> Barcode:
    uf = UnionFind(n)
    bars = []
    for e in f.edges:
        if uf.components <= 1:
            break
        if uf.union(e.u, e.v):
            bars.append(Interval(e.grade, e.length))
    return Barcode(tuple(bars), uf.components)


def mst_total_weight(f: Filtration, n: int) -> float:
    return float(sum(kruskal_barcode(f, n).death_lengths()))
