"""Shared domain types, the SplitMix64 point generator and the point-file codec."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, TextIO

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class PointsFormatError(ValueError):
    """Malformed line in a point file."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class DimensionMismatchError(PointsFormatError):
    pass


def splitmix64_mix(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Vigna's SplitMix64. Negative seeds are reduced mod 2**64."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return splitmix64_mix(self.state)

    def next_open_unit(self) -> float:
        # top 53 bits over 2**53; exact zero is redrawn so values lie in (0, 1)
        while True:
            x = (self.next_u64() >> 11) * (1.0 / (1 << 53))
            if x != 0.0:
                return x


@dataclass(frozen=True, eq=False)
class PointCloud:
    """N points in R^dim, stored as a read-only float64 array of shape (n, dim)."""

    points: np.ndarray
    dim: int

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64, copy=True)
        if pts.size == 0:
            pts = pts.reshape(0, self.dim)
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if pts.ndim != 2 or pts.shape[1] != self.dim:
            raise ValueError(f"points must have shape (n, {self.dim}), got {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("coordinates must be finite")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, PointCloud):
            return NotImplemented
        return self.dim == other.dim and np.array_equal(self.points, other.points)

    def __hash__(self):
        return hash((self.dim, self.points.tobytes()))


@dataclass(frozen=True, order=True)
class Edge:
    u: int
    v: int
    length: float
    grade: int


@dataclass(frozen=True)
class Filtration:
    """Edges sorted by (length, u, v) together with the distinct length scale.

    ``edge.grade`` is the 1-based position of ``edge.length`` in ``scale``.
    """

    edges: tuple[Edge, ...] = ()
    scale: tuple[float, ...] = ()

    def __len__(self):
        return len(self.edges)

    def length_of_grade(self, grade: int) -> float:
        return self.scale[grade - 1]


@dataclass(frozen=True, order=True)
class Interval:
    """A bar (birth, death). Essential bars have ``death_grade=None`` and infinite length."""

    death_grade: Optional[int]
    death_length: float
    birth: float = 0.0

    @property
    def essential(self) -> bool:
        return self.death_grade is None

    @classmethod
    def essential_bar(cls) -> "Interval":
        return cls(None, math.inf)


@dataclass(frozen=True)
class Barcode:
    finite: tuple[Interval, ...] = field(default=())
    essential_count: int = 0

    def __post_init__(self):
        object.__setattr__(
            self, "finite", tuple(sorted(self.finite, key=lambda b: (b.death_grade, b.death_length)))
        )

    def death_grades(self) -> list[int]:
        return [b.death_grade for b in self.finite]

    def death_lengths(self) -> list[float]:
        return [b.death_length for b in self.finite]

    def intervals(self, show_essential: bool = False) -> list[Interval]:
        bars = list(self.finite)
        if show_essential:
            bars.extend(Interval.essential_bar() for _ in range(self.essential_count))
        return bars


def generate_uniform_cloud(n: int, dim: int, seed: int) -> PointCloud:
    """Draw ``n`` points with i.i.d. coordinates uniform on the open interval (0, 1).

    Coordinates are consumed from one SplitMix64 stream in point-major order,
    so the cloud is a pure function of ``(n, dim, seed)``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if dim < 1:
        raise ValueError("dim must be positive")
    rng = SplitMix64(seed)
    flat = [rng.next_open_unit() for _ in range(n * dim)]
    return PointCloud(np.array(flat, dtype=np.float64).reshape(n, dim), dim)


_SEP = re.compile(r"[,\s]+")


def read_points(stream: TextIO | Iterable[str], empty_dim: int = 1) -> PointCloud:
    rows: list[list[float]] = []
    dim = None
    for lineno, line in enumerate(stream, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        fields = [f for f in _SEP.split(text) if f]
        try:
            row = [float(f) for f in fields]
        except ValueError:
            raise PointsFormatError(lineno, f"malformed number in {text!r}") from None
        if not all(math.isfinite(x) for x in row):
            raise PointsFormatError(lineno, "non-finite coordinate")
        if dim is None:
            dim = len(row)
        elif len(row) != dim:
            raise DimensionMismatchError(lineno, f"expected {dim} coordinates, got {len(row)}")
        rows.append(row)
    if dim is None:
        return PointCloud(np.empty((0, empty_dim)), empty_dim)
    return PointCloud(np.array(rows, dtype=np.float64), dim)


def write_points(cloud: PointCloud, stream: TextIO) -> None:
    for row in cloud.points:
        stream.write(",".join(format(float(x), ".17g") for x in row) + "\n")
