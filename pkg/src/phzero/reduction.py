"""Graded boundary matrix of the complete graph and its column reduction over GF(2).

Every vertex is born at grade 0, so each nonzero entry of the column for edge j
is the monomial t**a_j. Adding an earlier column k multiplies it by
t**(a_j - a_k) first, which leaves every entry of column j at grade a_j. The
polynomial arithmetic therefore reduces to a fixed grade per column plus a set
of rows, and the set is kept as a packed bit row (a Python int, bit r <-> row r).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .core import Barcode, Filtration, Interval


@dataclass(frozen=True)
class BoundaryColumn:
    grade: int
    bits: int

    @property
    def support(self) -> frozenset[int]:
        out = []
        b = self.bits
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return frozenset(out)

    @property
    def low(self) -> int:
        """Largest row index in the support, or -1 for an empty column."""
        return self.bits.bit_length() - 1

    def __bool__(self):
        return self.bits != 0


@dataclass(frozen=True)
class BoundaryMatrix:
    columns: tuple[BoundaryColumn, ...]
    n_rows: int

    def __len__(self):
        return len(self.columns)

    def surviving(self) -> list[int]:
        return [j for j, c in enumerate(self.columns) if c.bits]


@dataclass(frozen=True)
class ReductionOptions:
    pivoting: bool = True
    workers: int = 1

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass
class ReductionStats:
    """Unit-operation tally of one reduction.

    ``rows_touched`` charges every row of the matrix for each column addition;
    ``probes`` counts pivot-map lookups or, with pivoting off, columns examined
    by the linear scan.
    """

    additions: int = 0
    rows_touched: int = 0
    probes: int = 0

    @property
    def ops(self) -> int:
        return self.rows_touched + self.probes


def build_boundary_matrix(f: Filtration, n: int) -> BoundaryMatrix:
    cols = tuple(BoundaryColumn(e.grade, (1 << e.u) | (1 << e.v)) for e in f.edges)
    return BoundaryMatrix(cols, n)


def reduce(
    m: BoundaryMatrix,
    opts: ReductionOptions = ReductionOptions(),
    stats: Optional[ReductionStats] = None,
) -> BoundaryMatrix:
    """Left-to-right column reduction with low-pairing.

    Column j is repeatedly added to the earlier surviving column that owns its
    low until it either empties (a cycle) or claims a low nobody owns. With
    ``opts.pivoting`` off the owner is found by scanning the earlier surviving
    columns in order instead of a low -> column map; the additions are the same.
    """
    stats = stats if stats is not None else ReductionStats()
    n_rows = m.n_rows
    reduced: list[int] = []
    owner: dict[int, int] = {}
    survivors: list[int] = []

    for j, col in enumerate(m.columns):
        bits = col.bits
        while bits:
            low = bits.bit_length() - 1
            if opts.pivoting:
                stats.probes += 1
                k = owner.get(low)
            else:
                k = None
                for cand in survivors:
                    stats.probes += 1
                    if reduced[cand].bit_length() - 1 == low:
                        k = cand
                        break
            if k is None:
                owner[low] = j
                survivors.append(j)
                break
            bits ^= reduced[k]
            stats.additions += 1
            stats.rows_touched += n_rows
        reduced.append(bits)

    return BoundaryMatrix(
        tuple(BoundaryColumn(c.grade, b) for c, b in zip(m.columns, reduced)), n_rows
    )


def _partition(n_items: int, parts: int) -> list[tuple[int, int]]:
    base, extra = divmod(n_items, parts)
    bounds, lo = [], 0
    for p in range(parts):
        hi = lo + base + (1 if p < extra else 0)
        bounds.append((lo, hi))
        lo = hi
    return bounds


class _LaneGroup:
    """Fork-join group of worker lanes; lane 0 runs on the calling thread."""

    def __init__(self, workers: int):
        self.workers = workers
        self.pool = ThreadPoolExecutor(max_workers=workers - 1, thread_name_prefix="lane")

    def run(self, fn):
        futures = [self.pool.submit(fn, lane) for lane in range(1, self.workers)]
        first = fn(0)
        # leaving this call is the barrier: every lane has finished its share
        return [first] + [fut.result() for fut in futures]

    def close(self):
        self.pool.shutdown(wait=True)


def reduce_parallel(
    m: BoundaryMatrix,
    opts: ReductionOptions = ReductionOptions(),
    stats: Optional[ReductionStats] = None,
) -> BoundaryMatrix:
    """Same reduction as :func:`reduce`, with each inner sweep split across lanes.

    Rows are cut into ``opts.workers`` contiguous ranges and every lane keeps
    its own slice of every column. A column addition XORs each slice on its
    lane and reports the lane's highest row; the global low is the max of those.
    With pivoting off the scan over earlier survivors is split the same way.
    The outer loop over columns stays sequential.
    """
    if opts.workers == 1:
        return reduce(m, opts, stats)
    stats = stats if stats is not None else ReductionStats()
    n_rows = m.n_rows
    workers = opts.workers
    rows = _partition(n_rows, workers)
    masks = [(1 << (hi - lo)) - 1 for lo, hi in rows]
    store: list[list[int]] = [[] for _ in range(workers)]
    cur = [0] * workers
    owner: dict[int, int] = {}
    survivors: list[int] = []
    survivor_lows: list[int] = []
    sweep_arg = [0]

    def xor_sweep(lane: int) -> int:
        s = cur[lane] ^ store[lane][sweep_arg[0]]
        cur[lane] = s
        return s.bit_length() - 1 + rows[lane][0] if s else -1

    def scan_sweep(lane: int) -> tuple[Optional[int], int]:
        target = sweep_arg[0]
        lo, hi = _partition(len(survivors), workers)[lane]
        for pos in range(lo, hi):
            if survivor_lows[pos] == target:
                return pos, pos - lo + 1
        return None, hi - lo

    lanes = _LaneGroup(workers)
    try:
        for j, col in enumerate(m.columns):
            for lane, (lo, _) in enumerate(rows):
                cur[lane] = (col.bits >> lo) & masks[lane]
            low = col.bits.bit_length() - 1
            while low >= 0:
                if opts.pivoting:
                    stats.probes += 1
                    k = owner.get(low)
                else:
                    sweep_arg[0] = low
                    found = lanes.run(scan_sweep)
                    stats.probes += sum(p for _, p in found)
                    hits = [pos for pos, _ in found if pos is not None]
                    k = survivors[min(hits)] if hits else None
                if k is None:
                    owner[low] = j
                    survivors.append(j)
                    survivor_lows.append(low)
                    break
                sweep_arg[0] = k
                low = max(lanes.run(xor_sweep))
                stats.additions += 1
                stats.rows_touched += n_rows
            for lane in range(workers):
                store[lane].append(cur[lane])
    finally:
        lanes.close()

    columns = []
    for j, col in enumerate(m.columns):
        bits = 0
        for lane, (lo, _) in enumerate(rows):
            bits |= store[lane][j] << lo
        columns.append(BoundaryColumn(col.grade, bits))
    return BoundaryMatrix(tuple(columns), n_rows)


def extract_barcode(reduced: BoundaryMatrix, f: Filtration) -> Barcode:
    finite = [
        Interval(c.grade, f.length_of_grade(c.grade)) for c in reduced.columns if c.bits
    ]
    return Barcode(tuple(finite), reduced.n_rows - len(finite))


def _fmt(x: float) -> str:
    text = repr(float(x))
    return text[:-2] if text.endswith(".0") else text


def format_barcode(barcode: Barcode, show_essential: bool = False) -> str:
    """One ``birth,death_length,death_grade`` line per bar; essential bars print as ``0,inf,-``."""
    lines = []
    for bar in barcode.intervals(show_essential):
        if bar.essential:
            lines.append("0,inf,-")
        else:
            lines.append(f"{_fmt(bar.birth)},{_fmt(bar.death_length)},{bar.death_grade}")
    return "".join(line + "\n" for line in lines)
