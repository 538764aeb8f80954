"""Seeded benchmark sweeps, power-law fitting and CSV/SVG emission."""

from __future__ import annotations

import csv
import io
import logging
import math
import statistics
import time
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence
from xml.sax.saxutils import quoteattr

from .core import MASK64, generate_uniform_cloud, splitmix64_mix
from .parmodel import MachineProfile, predict_steps
from .pipeline import compute_barcode
from .reduction import ReductionOptions

log = logging.getLogger(__name__)

MODES = ("seq", "par", "model")
CSV_HEADER = ["n", "workers", "mode", "rep", "seed", "value"]


class FitDomainError(ValueError):
    pass


class EmptyInputError(ValueError):
    pass


@dataclass(frozen=True)
class BenchRecord:
    """One timed (or modeled) run. ``value`` is seconds, or steps in model mode; None marks a failed run."""

    n: int
    workers: int
    mode: str
    rep: int
    seed: int
    value: Optional[float]

    @property
    def failed(self) -> bool:
        return self.value is None


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r_squared: float

    def predict(self, n: float) -> float:
        return math.exp(self.intercept) * n**self.slope


def derive_seed(seed: int, n: int, rep: int) -> int:
    return (seed ^ splitmix64_mix((n << 32) | rep)) & MASK64


def _time_pipeline(n: int, workers: int, mode: str, seed: int, pivoting: bool) -> float:
    cloud = generate_uniform_cloud(n, 2, seed)
    opts = ReductionOptions(pivoting=pivoting, workers=workers if mode == "par" else 1)
    t0 = time.perf_counter()
    compute_barcode(cloud, opts)
    return time.perf_counter() - t0


def run_sweep(
    n_values: Sequence[int],
    workers: int = 1,
    reps: int = 10,
    mode: str = "seq",
    seed: int = 0,
    width: int = MachineProfile().width,
    pivoting: bool = True,
    warmup: bool = True,
) -> list[BenchRecord]:
    """Run ``reps`` repetitions per n. Timed modes get one untimed warm-up run per n first."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if reps < 1:
        raise ValueError("reps must be >= 1")
    if not n_values:
        raise ValueError("n_values must be nonempty")
    if mode == "seq":
        workers = 1
    records = []
    profile = MachineProfile(width)
    for n in n_values:
        if mode != "model" and warmup:
            try:
                _time_pipeline(n, workers, mode, derive_seed(seed, n, 0), pivoting)
            except MemoryError:
                pass
        for rep in range(1, reps + 1):
            s = derive_seed(seed, n, rep)
            try:
                if mode == "model":
                    value: Optional[float] = predict_steps(n, profile).total
                else:
                    value = _time_pipeline(n, workers, mode, s, pivoting)
            except MemoryError:
                log.warning("n=%d rep=%d ran out of memory", n, rep)
                value = None
            records.append(BenchRecord(n, workers, mode, rep, s, value))
    return records


def fit_exponent(points: Iterable[tuple[float, float]]) -> FitResult:
    """Least-squares line through (log n, log measure)."""
    pts = list(points)
    if any(m <= 0 for _, m in pts) or any(n <= 0 for n, _ in pts):
        raise FitDomainError("fit needs positive n and measure")
    if len({n for n, _ in pts}) < 2:
        raise FitDomainError("fit needs at least 2 distinct n")
    xs = [math.log(n) for n, _ in pts]
    ys = [math.log(m) for _, m in pts]
    slope, intercept = statistics.linear_regression(xs, ys)
    if len(set(ys)) == 1:
        r2 = 1.0
    else:
        r2 = min(1.0, statistics.correlation(xs, ys) ** 2)
    return FitResult(slope, intercept, r2)


def speedup(base: float, variant: float) -> float:
    if base <= 0 or variant <= 0:
        raise ValueError("speedup needs positive timings")
    return base / variant


def aggregate(records: Iterable[BenchRecord]) -> dict[tuple[str, int], list[tuple[int, float]]]:
    """Arithmetic mean of the successful reps per (mode, workers) series and n."""
    acc: dict[tuple[str, int, int], list[float]] = defaultdict(list)
    for r in records:
        if not r.failed:
            acc[(r.mode, r.workers, r.n)].append(r.value)
    series: dict[tuple[str, int], list[tuple[int, float]]] = defaultdict(list)
    for (mode, workers, n), vals in sorted(acc.items()):
        series[(mode, workers)].append((n, statistics.fmean(vals)))
    return dict(series)


def fit_series(records: Iterable[BenchRecord]) -> dict[tuple[str, int], FitResult]:
    fits = {}
    for key, pts in aggregate(records).items():
        try:
            fits[key] = fit_exponent(pts)
        except FitDomainError:
            pass
    return fits


def emit_csv(records: Iterable[BenchRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        value = "FAIL" if r.failed else repr(r.value)
        w.writerow([r.n, r.workers, r.mode, r.rep, r.seed, value])
    return buf.getvalue()


def parse_csv(text: str) -> list[BenchRecord]:
    rows = csv.DictReader(io.StringIO(text))
    if rows.fieldnames != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {rows.fieldnames}")
    out = []
    for row in rows:
        value = None if row["value"] == "FAIL" else float(row["value"])
        out.append(
            BenchRecord(int(row["n"]), int(row["workers"]), row["mode"], int(row["rep"]), int(row["seed"]), value)
        )
    return out


_W, _H = 720, 480
_MARGIN = dict(left=70, right=150, top=30, bottom=50)
_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"]


def emit_plot(records: Sequence[BenchRecord], fits: Optional[dict] = None, title: str = "") -> str:
    """Log-log SVG of mean measure against n.

    One ``<path class="series">`` per (mode, workers), plus dashed reference
    curves of slope 1..4 anchored at the first point of the first series.
    """
    series = aggregate(records)
    if not series:
        raise EmptyInputError("emit_plot needs at least one successful record")
    fits = fits if fits is not None else fit_series(records)

    all_n = [n for pts in series.values() for n, _ in pts]
    all_y = [y for pts in series.values() for _, y in pts]
    lx0, lx1 = math.log10(min(all_n)), math.log10(max(all_n))
    ly0, ly1 = math.log10(min(all_y)), math.log10(max(all_y))
    if lx1 - lx0 < 1e-12:
        lx0, lx1 = lx0 - 0.5, lx1 + 0.5
    if ly1 - ly0 < 1e-12:
        ly0, ly1 = ly0 - 0.5, ly1 + 0.5
    pw = _W - _MARGIN["left"] - _MARGIN["right"]
    ph = _H - _MARGIN["top"] - _MARGIN["bottom"]

    def px(n: float) -> float:
        return _MARGIN["left"] + (math.log10(n) - lx0) / (lx1 - lx0) * pw

    def py(y: float) -> float:
        return _MARGIN["top"] + (ly1 - math.log10(y)) / (ly1 - ly0) * ph

    def path(pts) -> str:
        return " ".join(f"{'M' if i == 0 else 'L'}{px(n):.3f},{py(y):.3f}" for i, (n, y) in enumerate(pts))

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" viewBox="0 0 {_W} {_H}">',
        f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="white"/>',
        f'<defs><clipPath id="plot"><rect x="{_MARGIN["left"]}" y="{_MARGIN["top"]}" width="{pw}" height="{ph}"/></clipPath></defs>',
        f'<rect x="{_MARGIN["left"]}" y="{_MARGIN["top"]}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    if title:
        out.append(f'<text x="{_W / 2}" y="18" text-anchor="middle" font-size="14">{_esc(title)}</text>')
    for d in range(math.floor(lx0), math.ceil(lx1) + 1):
        if lx0 - 1e-9 <= d <= lx1 + 1e-9:
            x = px(10.0**d)
            out.append(f'<text x="{x:.1f}" y="{_H - _MARGIN["bottom"] + 18}" text-anchor="middle" font-size="11">1e{d}</text>')
    for d in range(math.floor(ly0), math.ceil(ly1) + 1):
        if ly0 - 1e-9 <= d <= ly1 + 1e-9:
            y = py(10.0**d)
            out.append(f'<text x="{_MARGIN["left"] - 6}" y="{y + 4:.1f}" text-anchor="end" font-size="11">1e{d}</text>')
    out.append(f'<text x="{_MARGIN["left"] + pw / 2}" y="{_H - 10}" text-anchor="middle" font-size="12">n (points)</text>')

    anchor_n, anchor_y = next(iter(series.values()))[0]
    n_lo, n_hi = min(all_n), max(all_n)
    for k in (1, 2, 3, 4):
        ref = [(n, anchor_y * (n / anchor_n) ** k) for n in (n_lo, n_hi)]
        out.append(
            f'<path class="reference" data-slope="{k}" d="{path(ref)}" fill="none" stroke="#999" '
            f'stroke-dasharray="4,3" clip-path="url(#plot)"/>'
        )

    ly = _MARGIN["top"] + 10
    for i, ((mode, workers), pts) in enumerate(series.items()):
        color = _COLORS[i % len(_COLORS)]
        label = f"{mode} w={workers}"
        fit = fits.get((mode, workers))
        if fit is not None:
            label += f" (slope {fit.slope:.2f})"
        out.append(
            f'<path class="series" data-mode={quoteattr(mode)} data-workers="{workers}" '
            f'd="{path(pts)}" fill="none" stroke="{color}" stroke-width="2"/>'
        )
        for n, y in pts:
            out.append(f'<circle cx="{px(n):.3f}" cy="{py(y):.3f}" r="3" fill="{color}"/>')
        lx = _W - _MARGIN["right"] + 10
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 16}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 20}" y="{ly + 4}" font-size="11">{_esc(label)}</text>')
        ly += 16
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
