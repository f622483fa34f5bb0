"""Phase-estimation circuit: Hadamard layer, controlled-power ladder, inverse QFT.

Wire ``j`` of the measurement register (qubit ``j``) controls the ``2^j``-th
power of the target operator; after the inverse QFT, wire 0 holds the most
significant bit of the outcome integer ``m`` so that the estimated phase is
``m / 2^n_meas``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .core import (
    DenseOperator,
    RegisterLayout,
    StateVector,
    apply_controlled_dense,
    apply_controlled_phase,
    apply_hadamard,
    apply_swap,
    matrix_multiply,
)


class PowerMode(Enum):
    """How controlled U^(2^j) is realized."""

    REPEATED_APPLICATION = "repeat"
    REPEATED_SQUARING = "square"


@dataclass
class QpeConfig:
    n_meas: int
    power_mode: PowerMode = PowerMode.REPEATED_APPLICATION
    timers_enabled: bool = True

    def __post_init__(self):
        if self.n_meas < 1:
            raise ValueError(f"n_meas must be >= 1, got {self.n_meas}")


@dataclass
class PhaseTimers:
    """Wall-clock durations of the dominant circuit phases, plus kernel count."""

    alloc_seconds: float = 0.0
    input_copy_seconds: float = 0.0
    unitary_apply_seconds: float = 0.0
    iqft_seconds: float = 0.0
    total_seconds: float = 0.0
    controlled_dense_count: int = 0


def normalized_eigenvector(vector, dim: int) -> np.ndarray:
    """Validate length and unit norm (within 1e-6), returning a unit-norm copy."""
    vec = np.asarray(vector, dtype=np.complex128).reshape(-1)
    if vec.shape != (dim,):
        raise ValueError(f"eigenvector has length {vec.size}, expected {dim}")
    nrm = np.linalg.norm(vec)
    if nrm == 0.0:
        raise ValueError("eigenvector is the zero vector")
    if abs(nrm - 1.0) > 1e-6:
        raise ValueError(f"eigenvector norm {nrm} deviates from 1 by more than 1e-6")
    return vec / nrm


def prepare_input(layout: RegisterLayout, eigenvector) -> StateVector:
    """|0..0>_meas tensor |psi> with the target register in the high bits."""
    psi = normalized_eigenvector(eigenvector, layout.dim_mat)
    amps = np.zeros(layout.dim, dtype=np.complex128)
    amps.reshape(layout.dim_mat, layout.dim_meas)[:, 0] = psi
    return StateVector(layout, amps)


def inverse_qft(state: StateVector, qubits) -> StateVector:
    """Inverse discrete Fourier transform on the given measurement wires.

    A register holding amplitudes exp(2*pi*i*m*k/2^n)/sqrt(2^n) over the raw
    low-bit index ``k`` is mapped to the basis state decoding to outcome ``m``
    (wire ``qubits[0]`` ends up as the most significant bit of ``m``).
    """
    qubits = list(qubits)
    n = len(qubits)
    if len(set(qubits)) != n:
        raise ValueError("duplicate qubit indices in inverse QFT")
    for q in qubits:
        if not 0 <= q < state.layout.n_total:
            raise ValueError(f"qubit index {q} out of range")
    if n == 1:
        return apply_hadamard(state, qubits[0])

    # Bit-reversal, Fourier rotations, then bit-reversal again so that the
    # outcome reads MSB-first on the wire order.
    for i in range(n // 2):
        apply_swap(state, qubits[i], qubits[n - 1 - i])
    for j in range(n):
        for k in range(j):
            apply_controlled_phase(state, qubits[k], qubits[j], -np.pi / (1 << (j - k)))
        apply_hadamard(state, qubits[j])
    for i in range(n // 2):
        apply_swap(state, qubits[i], qubits[n - 1 - i])
    return state


def run_qpe(problem, eigenvector_index: int, config: QpeConfig):
    """Execute the full phase-estimation circuit.

    Returns the final pre-measurement statevector together with per-phase
    timers.  No measurement sampling is performed.
    """
    n_mat = problem.n_mat
    layout = RegisterLayout(config.n_meas, n_mat)
    if problem.matrix.dim != layout.dim_mat:
        raise ValueError(
            f"problem matrix dimension {problem.matrix.dim} does not match "
            f"2^{n_mat}"
        )
    timers = PhaseTimers()
    clock = time.perf_counter
    t_start = clock()

    t0 = clock()
    amps = np.zeros(layout.dim, dtype=np.complex128)
    timers.alloc_seconds = clock() - t0

    t0 = clock()
    psi = normalized_eigenvector(problem.eigenvector(eigenvector_index), layout.dim_mat)
    amps.reshape(layout.dim_mat, layout.dim_meas)[:, 0] = psi
    state = StateVector(layout, amps)
    timers.input_copy_seconds = clock() - t0

    for q in range(config.n_meas):
        apply_hadamard(state, q)

    t0 = clock()
    if config.power_mode is PowerMode.REPEATED_APPLICATION:
        for j in range(config.n_meas):
            for _ in range(1 << j):
                apply_controlled_dense(state, j, problem.matrix)
                timers.controlled_dense_count += 1
    else:
        power = problem.matrix
        for j in range(config.n_meas):
            apply_controlled_dense(state, j, power)
            timers.controlled_dense_count += 1
            if j + 1 < config.n_meas:
                power = matrix_multiply(power, power)
    timers.unitary_apply_seconds = clock() - t0

    t0 = clock()
    inverse_qft(state, range(config.n_meas))
    timers.iqft_seconds = clock() - t0

    timers.total_seconds = clock() - t_start
    return state, timers
