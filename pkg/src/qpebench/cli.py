"""Command-line driver: problem generation, phase estimation, extraction, sweeps."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import h5io
from .bench import (
    DEFAULT_MEMORY_CAP_BYTES,
    MemoryCapError,
    accuracy_sweep,
    bench_sweep,
    write_accuracy_csv,
    write_benchmark_csv,
)
from .bench import BenchmarkRecord
from .circuit import PowerMode, QpeConfig, run_qpe
from .extraction import (
    ExtractionMethod,
    extract_max_norm,
    extract_weighted,
    marginal_distribution,
    phase_error,
)
from .problems import EigensolverError, gen_analytic, gen_random_unitary

_MODES = {"repeat": PowerMode.REPEATED_APPLICATION, "square": PowerMode.REPEATED_SQUARING}
_METHODS = {
    "max": ExtractionMethod.MAX_NORM,
    "weighted": ExtractionMethod.WEIGHTED_AVERAGE,
    "circular": ExtractionMethod.WEIGHTED_CIRCULAR,
}


class UsageError(Exception):
    """Invalid command-line values; exits with status 2."""


def parse_int_list(text: str) -> list[int]:
    """Comma-separated integers and inclusive a-b ranges, e.g. '4,6,10-12'."""
    values: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            values.extend(range(int(lo), int(hi) + 1))
        else:
            values.append(int(part))
    if not values:
        raise UsageError(f"empty integer list: {text!r}")
    return values


def _problem_files(out: Path, count: int) -> list[Path]:
    stem = out.name[: -len(out.suffix)] if out.suffix else out.name
    suffix = out.suffix or ".h5"
    return [out.parent / f"{stem}_{j}{suffix}" for j in range(count)]


def cmd_gen(args) -> None:
    if args.n_mat < 1:
        raise UsageError(f"--n-mat must be >= 1, got {args.n_mat}")
    if args.kind == "analytic":
        problem = gen_analytic(args.n_mat)
    else:
        problem = gen_random_unitary(args.n_mat, args.seed)
    paths = _problem_files(Path(args.out), problem.n_eigenvectors)
    for j, path in enumerate(paths):
        h5io.write_problem(path, problem, j)
    print("index,reference_phase,file")
    for j, path in enumerate(paths):
        print(f"{j},{problem.reference_phases[j]:.17g},{path}")


def cmd_run(args) -> None:
    if args.n_meas < 1:
        raise UsageError(f"--n-meas must be >= 1, got {args.n_meas}")
    problem = h5io.read_problem(args.in_path)
    config = QpeConfig(n_meas=args.n_meas, power_mode=_MODES[args.mode])
    state, timers = run_qpe(problem, 0, config)
    h5io.write_statevector(args.out, state)
    print(
        "n_mat,n_meas,mode,alloc_seconds,input_copy_seconds,"
        "unitary_apply_seconds,iqft_seconds,total_seconds,controlled_dense_count"
    )
    print(
        f"{problem.n_mat},{args.n_meas},{args.mode},"
        f"{timers.alloc_seconds:.6g},{timers.input_copy_seconds:.6g},"
        f"{timers.unitary_apply_seconds:.6g},{timers.iqft_seconds:.6g},"
        f"{timers.total_seconds:.6g},{timers.controlled_dense_count}"
    )


def cmd_extract(args) -> None:
    state = h5io.read_statevector(args.in_path)
    dist = marginal_distribution(state)
    method = _METHODS[args.method]
    if method is ExtractionMethod.MAX_NORM:
        estimate = extract_max_norm(dist)
        print(f"max,{estimate.value:.17g},peak_index={estimate.peak_index}")
        estimates = [estimate]
    else:
        # The two weighted readings diverge near the wrap point; print both.
        naive = extract_weighted(dist, circular=False)
        circular = extract_weighted(dist, circular=True)
        print(f"weighted,{naive.value:.17g}")
        print(f"circular,{circular.value:.17g}")
        estimates = [circular if method is ExtractionMethod.WEIGHTED_CIRCULAR else naive]
    if args.reference is not None:
        for estimate in estimates:
            print(f"error,{phase_error(estimate.value, args.reference):.17g}")


def cmd_bench(args) -> None:
    if args.reps < 1:
        raise UsageError(f"--reps must be >= 1, got {args.reps}")
    n_mats = parse_int_list(args.n_mat)
    n_meass = parse_int_list(args.n_meas)
    records = bench_sweep(
        n_mats, n_meass, _MODES[args.mode], args.reps, args.mem_cap_bytes
    )
    write_benchmark_csv(args.csv, records)
    print(",".join(BenchmarkRecord.CSV_COLUMNS))
    for record in records:
        print(",".join(str(v) for v in record.row()))
    if args.plot:
        from .plots import plot_benchmark

        plot_benchmark(records, args.plot)


def cmd_accuracy(args) -> None:
    n_meass = parse_int_list(args.n_meas)
    methods = []
    for name in args.method.split(","):
        name = name.strip()
        if name not in _METHODS:
            raise UsageError(f"unknown method {name!r}")
        methods.append(_METHODS[name])
    if args.kind == "analytic":
        problem = gen_analytic(args.n_mat)
    else:
        problem = gen_random_unitary(args.n_mat, args.seed)
    records = accuracy_sweep(problem, n_meass, methods, _MODES[args.mode])
    write_accuracy_csv(args.csv, records)
    print("n_mat,n_meas,method,mean_error")
    for record in records:
        print(f"{record.n_mat},{record.n_meas},{record.method},{record.mean_error:.6g}")
    if args.plot:
        from .plots import plot_accuracy

        plot_accuracy(records, args.plot)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qpebench",
        description="Full-statevector phase-estimation emulator and benchmark harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a test problem, one HDF5 file per eigenpair")
    p.add_argument("--kind", choices=("analytic", "random"), required=True)
    p.add_argument("--n-mat", type=int, required=True)
    p.add_argument("--seed", type=int, default=12345)
    p.add_argument("--out", required=True, help="output path prefix (suffix _j added)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("run", help="run phase estimation on a problem file")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--n-meas", type=int, required=True)
    p.add_argument("--mode", choices=tuple(_MODES), default="repeat")
    p.add_argument("--out", required=True, help="output statevector HDF5 path")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("extract", help="extract an eigenphase from a statevector file")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--method", choices=tuple(_METHODS), default="max")
    p.add_argument("--reference", type=float, default=None)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("bench", help="timing sweep over analytic problems")
    p.add_argument("--n-mat", required=True, help="list/range, e.g. 4 or 2,4 or 2-4")
    p.add_argument("--n-meas", required=True, help="list/range, e.g. 10-14")
    p.add_argument("--mode", choices=tuple(_MODES), default="repeat")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--mem-cap-bytes", type=int, default=DEFAULT_MEMORY_CAP_BYTES)
    p.add_argument("--csv", required=True)
    p.add_argument("--plot", default=None, help="optional PNG path for the report figure")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("accuracy", help="accuracy sweep over measurement qubit counts")
    p.add_argument("--kind", choices=("analytic", "random"), default="random")
    p.add_argument("--n-mat", type=int, required=True)
    p.add_argument("--seed", type=int, default=12345)
    p.add_argument("--n-meas", required=True, help="list/range, e.g. 4-12")
    p.add_argument("--method", default="max,weighted,circular")
    p.add_argument("--mode", choices=tuple(_MODES), default="square")
    p.add_argument("--csv", required=True)
    p.add_argument("--plot", default=None, help="optional PNG path for the report figure")
    p.set_defaults(func=cmd_accuracy)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (
        ValueError,
        OSError,
        MemoryCapError,
        EigensolverError,
        h5io.FileFormatError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
