"""Figure rendering for benchmark and accuracy reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .bench import memory_model  # noqa: E402


def plot_benchmark(records, path) -> None:
    """Runtime and modeled memory against total qubit count, one PNG."""
    fig, (ax_time, ax_mem) = plt.subplots(1, 2, figsize=(9, 3.5))
    modes = sorted({r.power_mode for r in records})
    for mode in modes:
        rows = sorted((r for r in records if r.power_mode == mode), key=lambda r: r.n_total)
        ax_time.semilogy(
            [r.n_total for r in rows],
            [r.wall_seconds for r in rows],
            marker="o",
            label=f"mode={mode}",
        )
        ax_mem.semilogy(
            [r.n_total for r in rows],
            [r.peak_state_bytes for r in rows],
            marker="s",
            label=f"modeled peak ({mode})",
        )
    n_totals = sorted({r.n_total for r in records})
    ax_mem.semilogy(
        n_totals,
        [memory_model(n) for n in n_totals],
        "k--",
        label="statevector floor",
    )
    ax_time.set_xlabel("total qubits")
    ax_time.set_ylabel("wall time [s]")
    ax_time.legend()
    ax_mem.set_xlabel("total qubits")
    ax_mem.set_ylabel("bytes")
    ax_mem.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_accuracy(records, path) -> None:
    """Mean phase error against measurement qubit count, one line per method."""
    fig, ax = plt.subplots(figsize=(5.5, 3.8))
    methods = sorted({r.method for r in records})
    for method in methods:
        rows = sorted((r for r in records if r.method == method), key=lambda r: r.n_meas)
        ax.semilogy(
            [r.n_meas for r in rows],
            [max(r.mean_error, 1e-16) for r in rows],
            marker="o",
            label=method,
        )
    ax.set_xlabel("measurement qubits")
    ax.set_ylabel("mean phase error")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
