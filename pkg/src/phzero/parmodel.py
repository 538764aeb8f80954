"""Step-count model of the barcode pipeline on an abstract machine of width P.

The machine executes up to P unit operations per step. The five pipeline
stages are: distances (K = n(n-1)/2 ops), sort, boundary-matrix build (K ops),
reduction (n-1 dependent rounds, each a K x n op grid) and barcode extraction
(n ops). Pivot search is charged nothing.

A reduction round is dispatched along whichever grid axis fits the machine:

* the whole K x n grid at once when P >= K*n            -> 1 step    (ELEMENT, O(N) total)
* one row of K column entries per dispatch when P >= K   -> n steps   (ROW, O(N^2))
* one column of n rows per dispatch, ceil(n/P) steps each -> K*ceil(n/P) steps
  (COLUMN when P >= n giving O(N^3), SEQUENTIAL otherwise giving O(N^4))

Lanes are never shared between dispatches, so leftover width in the ROW band
is idle. The round cost is the cheapest shape that fits.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, fields

from .core import generate_uniform_cloud
from .filtration import filtration_of
from .reduction import ReductionOptions, ReductionStats, build_boundary_matrix, reduce

DEFAULT_WIDTH = 1000


class DegenerateInputError(ValueError):
    pass


@dataclass(frozen=True)
class MachineProfile:
    width: int = DEFAULT_WIDTH

    def __post_init__(self):
        if self.width < 1:
            raise ValueError("width must be >= 1")


@dataclass(frozen=True)
class StepCount:
    distance_steps: int
    sort_steps: int
    build_steps: int
    reduce_steps: int
    extract_steps: int

    @property
    def total(self) -> int:
        return (
            self.distance_steps
            + self.sort_steps
            + self.build_steps
            + self.reduce_steps
            + self.extract_steps
        )

    def stages(self) -> tuple[int, ...]:
        return tuple(getattr(self, f.name) for f in fields(self))


class Regime(enum.Enum):
    ELEMENT = 1
    ROW = 2
    COLUMN = 3
    SEQUENTIAL = 4

    @property
    def exponent(self) -> int:
        return self.value


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _ceil_log2(k: int) -> int:
    return (k - 1).bit_length() if k > 1 else 0


def _check(n: int) -> int:
    if n < 2:
        raise DegenerateInputError(f"need at least 2 points, got n={n}")
    return n * (n - 1) // 2


def _round_steps(n: int, k: int, p: int) -> int:
    if p >= k * n:
        return 1
    cost = k * _ceil_div(n, p)
    if p >= k:
        cost = min(cost, n)
    return cost


def predict_steps(n: int, profile: MachineProfile = MachineProfile()) -> StepCount:
    k = _check(n)
    p = profile.width
    levels = _ceil_log2(k)
    return StepCount(
        distance_steps=_ceil_div(k, p),
        sort_steps=max(_ceil_div(k * levels, p), levels),
        build_steps=_ceil_div(k, p),
        reduce_steps=(n - 1) * _round_steps(n, k, p),
        extract_steps=_ceil_div(n, p),
    )


def classify_regime(n: int, profile: MachineProfile = MachineProfile()) -> Regime:
    k = _check(n)
    p = profile.width
    if p >= n * k:
        return Regime.ELEMENT
    if p >= k:
        return Regime.ROW
    if p >= n:
        return Regime.COLUMN
    return Regime.SEQUENTIAL


def regime_thresholds(profile: MachineProfile = MachineProfile()) -> tuple[int, int]:
    """Largest n that still fits a whole row (n(n-1)/2 <= P) and a whole column (n <= P)."""
    p = profile.width
    # isqrt seed, then settle exactly
    n_row = max(1, (1 + math.isqrt(1 + 8 * p)) // 2)
    while n_row * (n_row - 1) // 2 > p:
        n_row -= 1
    while (n_row + 1) * n_row // 2 <= p:
        n_row += 1
    return n_row, p


class _Scheduler:
    """Counts width-P steps for explicitly enumerated dispatches."""

    def __init__(self, width: int):
        self.width = width
        self.steps = 0
        self.spare = 0

    def dispatch(self, batch: int) -> None:
        # an independent dispatch starts on a fresh step
        used = _ceil_div(batch, self.width)
        self.steps += used
        self.spare = used * self.width - batch

    def stream(self, batch: int) -> None:
        # continuation of the previous dispatch may fill its idle lanes
        take = min(self.spare, batch)
        batch -= take
        self.spare -= take
        if batch:
            self.dispatch(batch)


def simulate_steps(n: int, profile: MachineProfile = MachineProfile(), seed: int = 0) -> StepCount:
    """Walk every dispatch of the pipeline and count steps.

    The reduction charges the full grid each round whatever the data, so
    ``seed`` does not influence the count; it is accepted so the schedule can
    be tied to a concrete generated cloud by callers.
    """
    k = _check(n)
    p = profile.width
    regime = classify_regime(n, profile)

    def stage(run) -> int:
        sched = _Scheduler(p)
        run(sched)
        return sched.steps

    def distances(s):
        s.dispatch(k)

    def sort(s):
        levels = _ceil_log2(k)
        for level in range(levels):
            (s.dispatch if level == 0 else s.stream)(k)
        # each merge level needs a step of its own
        s.steps = max(s.steps, levels)

    def build(s):
        s.dispatch(k)

    def reduction(s):
        for _ in range(n - 1):
            if regime is Regime.ELEMENT:
                s.dispatch(k * n)
            elif regime is Regime.ROW and n <= k:
                for _row in range(n):
                    s.dispatch(k)
            else:
                for _col in range(k):
                    s.dispatch(n)

    def extract(s):
        s.dispatch(n)

    return StepCount(
        distance_steps=stage(distances),
        sort_steps=stage(sort),
        build_steps=stage(build),
        reduce_steps=stage(reduction),
        extract_steps=stage(extract),
    )


def count_actual_ops(n: int, seed: int, dim: int = 2, pivoting: bool = True) -> int:
    """Per-row unit operations of a real sequential reduction on a generated cloud."""
    _check(n)
    cloud = generate_uniform_cloud(n, dim, seed)
    f = filtration_of(cloud)
    stats = ReductionStats()
    reduce(build_boundary_matrix(f, n), ReductionOptions(pivoting=pivoting), stats)
    return stats.ops


MODEL_CSV_HEADER = "n,width,regime,distance,sort,build,reduce,extract,total"


def model_sweep_csv(n_values, profile: MachineProfile = MachineProfile()) -> str:
    lines = [MODEL_CSV_HEADER]
    for n in n_values:
        s = predict_steps(n, profile)
        lines.append(
            ",".join(
                str(x)
                for x in (n, profile.width, classify_regime(n, profile).name, *s.stages(), s.total)
            )
        )
    return "\n".join(lines) + "\n"
