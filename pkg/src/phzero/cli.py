"""Command line front end: ``phzero {generate,compute,oracle,bench,model}``."""

from __future__ import annotations

import argparse
import contextlib
import sys
from typing import Optional, Sequence

from . import bench
from .core import PointCloud, generate_uniform_cloud, read_points, write_points
from .filtration import filtration_of
from .oracle import kruskal_barcode
from .parmodel import DEFAULT_WIDTH, MachineProfile, model_sweep_csv, regime_thresholds
from .pipeline import compute_barcode
from .reduction import ReductionOptions, format_barcode


def parse_n_list(text: str) -> list[int]:
    """``"50,100,150"`` or ``"50:300:50"`` (inclusive stop), or a mix of both."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" in part:
            bits = [int(x) for x in part.split(":")]
            if len(bits) not in (2, 3) or (len(bits) == 3 and bits[2] <= 0):
                raise argparse.ArgumentTypeError(f"bad range {part!r}")
            start, stop = bits[0], bits[1]
            step = bits[2] if len(bits) == 3 else 1
            out.extend(range(start, stop + 1, step))
        else:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError("empty list")
    return out


def _n_list(text: str) -> list[int]:
    try:
        return parse_n_list(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


@contextlib.contextmanager
def _output(path: Optional[str]):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _load_cloud(args) -> PointCloud:
    if args.input is not None:
        if args.input == "-":
            return read_points(sys.stdin)
        with open(args.input, encoding="utf-8") as fh:
            return read_points(fh)
    if args.n is None:
        raise ValueError("one of --in or --n is required")
    return generate_uniform_cloud(args.n, args.dim, args.seed)


def cmd_generate(args) -> None:
    cloud = generate_uniform_cloud(args.n, args.dim, args.seed)
    with _output(args.out) as fh:
        write_points(cloud, fh)


def cmd_compute(args) -> None:
    cloud = _load_cloud(args)
    opts = ReductionOptions(pivoting=args.pivot == "on", workers=args.workers)
    barcode = compute_barcode(cloud, opts)
    with _output(args.out) as fh:
        fh.write(format_barcode(barcode, args.show_essential))


def cmd_oracle(args) -> None:
    cloud = _load_cloud(args)
    barcode = kruskal_barcode(filtration_of(cloud), cloud.n)
    with _output(args.out) as fh:
        fh.write(format_barcode(barcode, args.show_essential))


def cmd_bench(args) -> None:
    records = []
    for workers in args.workers_list:
        records.extend(
            bench.run_sweep(
                args.n_list,
                workers=workers,
                reps=args.reps,
                mode=args.mode,
                seed=args.seed,
                width=args.width,
                pivoting=args.pivot == "on",
            )
        )
        if args.mode == "seq":
            break
    fits = bench.fit_series(records)
    with _output(args.csv) as fh:
        fh.write(bench.emit_csv(records))
    if args.svg:
        title = f"mode={args.mode}" + (f" width={args.width}" if args.mode == "model" else "")
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(bench.emit_plot(records, fits, title))
    for (mode, workers), fit in sorted(fits.items()):
        print(
            f"# {mode} workers={workers}: slope={fit.slope:.3f} r2={fit.r_squared:.4f}",
            file=sys.stderr,
        )


def cmd_model(args) -> None:
    profile = MachineProfile(args.width)
    with _output(args.csv) as fh:
        fh.write(model_sweep_csv(args.n_list, profile))
    n_row, n_col = regime_thresholds(profile)
    stream = sys.stdout if args.csv not in (None, "-") else sys.stderr
    print(f"# width={profile.width} n_row={n_row} n_col={n_col}", file=stream)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phzero", description="0th persistent homology barcodes and parallel scaling models"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a seeded uniform point cloud")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dim", type=_positive, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    for name, func, help_ in (
        ("compute", cmd_compute, "barcode by boundary-matrix reduction"),
        ("oracle", cmd_oracle, "barcode by Kruskal union-find"),
    ):
        p = sub.add_parser(name, help=help_)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--in", dest="input", help="point file ('-' for stdin)")
        src.add_argument("--n", type=int, help="generate this many uniform points instead")
        p.add_argument("--dim", type=_positive, default=2)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--show-essential", action="store_true")
        p.add_argument("--out")
        if name == "compute":
            p.add_argument("--workers", type=_positive, default=1)
            p.add_argument("--pivot", choices=("on", "off"), default="on")
        p.set_defaults(func=func)

    p = sub.add_parser("bench", help="seeded run-time or model sweep")
    p.add_argument("--n-list", type=_n_list, required=True)
    p.add_argument("--workers-list", type=lambda s: [_positive(x) for x in s.split(",")], default=[1])
    p.add_argument("--reps", type=_positive, default=10)
    p.add_argument("--mode", choices=bench.MODES, default="seq")
    p.add_argument("--width", type=_positive, default=DEFAULT_WIDTH)
    p.add_argument("--pivot", choices=("on", "off"), default="on")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("model", help="width-P step predictions, regimes and thresholds")
    p.add_argument("--n-list", type=_n_list, required=True)
    p.add_argument("--width", type=_positive, default=DEFAULT_WIDTH)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_model)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (ValueError, OSError, MemoryError) as exc:
        print(f"phzero {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
