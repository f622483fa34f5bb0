"""Benchmark harness: timing sweeps, memory model, accuracy sweeps, CSV output."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .circuit import PowerMode, QpeConfig, run_qpe
from .extraction import ExtractionMethod, mean_spectrum_error
from .problems import SpectralProblem, gen_analytic

BYTES_PER_AMPLITUDE = 16  # complex double

# Allowance for interpreter, kernels, and transient buffers on top of the
# modeled statevector footprint when pre-checking against the cap.
MEMORY_OVERHEAD_ALLOWANCE = 64 * 1024 * 1024

DEFAULT_MEMORY_CAP_BYTES = 8 * 1024 ** 3


class MemoryCapError(Exception):
    """Configuration would exceed the configured memory cap."""


def memory_model(n_total: int) -> int:
    """Theoretical minimum bytes to hold the full statevector in double precision."""
    if n_total < 0:
        raise ValueError(f"n_total must be >= 0, got {n_total}")
    return BYTES_PER_AMPLITUDE << n_total


def modeled_peak_bytes(n_mat: int, n_meas: int, power_mode: PowerMode) -> int:
    """Modeled peak allocation: bare statevector, plus held matrix powers when squaring."""
    peak = memory_model(n_mat + n_meas)
    if power_mode is PowerMode.REPEATED_SQUARING:
        # Current power plus its square during the squaring step.
        peak += 2 * BYTES_PER_AMPLITUDE * (1 << n_mat) ** 2
    return peak


@dataclass
class BenchmarkRecord:
    n_mat: int
    n_meas: int
    n_total: int
    power_mode: str
    wall_seconds: float
    alloc_seconds: float
    input_copy_seconds: float
    unitary_apply_seconds: float
    iqft_seconds: float
    controlled_dense_count: int
    peak_state_bytes: int
    repetitions: int

    CSV_COLUMNS = (
        "n_mat",
        "n_meas",
        "n_total",
        "power_mode",
        "wall_seconds",
        "alloc_seconds",
        "input_copy_seconds",
        "unitary_apply_seconds",
        "iqft_seconds",
        "controlled_dense_count",
        "peak_state_bytes",
        "repetitions",
    )

    def row(self) -> list:
        return [getattr(self, name) for name in self.CSV_COLUMNS]

    @property
    def unitary_apply_per_call_seconds(self) -> float:
        return self.unitary_apply_seconds / max(self.controlled_dense_count, 1)


def run_benchmark(
    problem: SpectralProblem,
    n_meas: int,
    power_mode: PowerMode = PowerMode.REPEATED_APPLICATION,
    reps: int = 3,
    mem_cap_bytes: int = DEFAULT_MEMORY_CAP_BYTES,
    eigenvector_index: int | None = None,
) -> BenchmarkRecord:
    """Time one configuration: one warm-up run, then the median of ``reps`` runs."""
    if reps < 1:
        raise ValueError(f"reps must be >= 1, got {reps}")
    if n_meas < 1:
        raise ValueError(f"n_meas must be >= 1, got {n_meas}")
    peak = modeled_peak_bytes(problem.n_mat, n_meas, power_mode)
    if peak + MEMORY_OVERHEAD_ALLOWANCE > mem_cap_bytes:
        raise MemoryCapError(
            f"n_mat={problem.n_mat}, n_meas={n_meas} needs {peak} modeled bytes "
            f"(+{MEMORY_OVERHEAD_ALLOWANCE} allowance), cap is {mem_cap_bytes}"
        )
    if eigenvector_index is None:
        eigenvector_index = min(1, problem.n_eigenvectors - 1)
    config = QpeConfig(n_meas=n_meas, power_mode=power_mode)

    run_qpe(problem, eigenvector_index, config)  # warm-up, excluded
    samples = [run_qpe(problem, eigenvector_index, config)[1] for _ in range(reps)]

    def median(attr):
        return float(np.median([getattr(t, attr) for t in samples]))

    return BenchmarkRecord(
        n_mat=problem.n_mat,
        n_meas=n_meas,
        n_total=problem.n_mat + n_meas,
        power_mode=power_mode.value,
        wall_seconds=median("total_seconds"),
        alloc_seconds=median("alloc_seconds"),
        input_copy_seconds=median("input_copy_seconds"),
        unitary_apply_seconds=median("unitary_apply_seconds"),
        iqft_seconds=median("iqft_seconds"),
        controlled_dense_count=samples[0].controlled_dense_count,
        peak_state_bytes=peak,
        repetitions=reps,
    )


def bench_sweep(
    n_mat_list,
    n_meas_list,
    power_mode: PowerMode = PowerMode.REPEATED_APPLICATION,
    reps: int = 3,
    mem_cap_bytes: int = DEFAULT_MEMORY_CAP_BYTES,
) -> list[BenchmarkRecord]:
    """Timing sweep over analytic problems (known phases isolate performance)."""
    records = []
    for n_mat in n_mat_list:
        problem = gen_analytic(n_mat)
        for n_meas in n_meas_list:
            records.append(
                run_benchmark(problem, n_meas, power_mode, reps, mem_cap_bytes)
            )
    return records


def write_benchmark_csv(path, records) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(BenchmarkRecord.CSV_COLUMNS)
        for record in records:
            writer.writerow(record.row())


@dataclass
class AccuracyRecord:
    n_mat: int
    n_meas: int
    method: str
    mean_error: float

    CSV_COLUMNS = ("n_mat", "n_meas", "method", "mean_error")

    def row(self) -> list:
        return [self.n_mat, self.n_meas, self.method, self.mean_error]


def accuracy_sweep(
    problem: SpectralProblem,
    n_meas_values,
    methods,
    power_mode: PowerMode = PowerMode.REPEATED_SQUARING,
) -> list[AccuracyRecord]:
    """Mean spectrum error per (n_meas, method)."""
    n_meas_values = list(n_meas_values)
    if not n_meas_values:
        raise ValueError("empty n_meas range")
    records = []
    for n_meas in n_meas_values:
        for method in methods:
            err = mean_spectrum_error(problem, n_meas, method, power_mode)
            records.append(
                AccuracyRecord(problem.n_mat, n_meas, method.value, err)
            )
    return records


def write_accuracy_csv(path, records) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(AccuracyRecord.CSV_COLUMNS)
        for record in records:
            writer.writerow(record.row())


def log2_error_slope(n_meas_values, errors) -> float:
    """Least-squares slope of log2(error) against n_meas."""
    n = np.asarray(n_meas_values, dtype=np.float64)
    e = np.asarray(errors, dtype=np.float64)
    if np.any(e <= 0):
        raise ValueError("errors must be positive for a log fit")
    return float(np.polyfit(n, np.log2(e), 1)[0])
