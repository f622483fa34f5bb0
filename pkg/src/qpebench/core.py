"""Dense statevector engine: register layout, gate kernels, dense operators.

Index convention: amplitude index ``i`` encodes qubit ``q`` as bit ``q`` of
``i`` (qubit 0 is the least significant bit).  Measurement qubits occupy the
low bits ``0 .. n_meas-1``; the target register occupies the high bits
``n_meas .. n_total-1``.  The measurement outcome integer ``m`` is decoded
with wire 0 as its MOST significant bit, i.e. bit ``(n_meas-1-q)`` of ``m``
equals index bit ``q``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_INV_SQRT2 = 1.0 / np.sqrt(2.0)

DEFAULT_UNITARITY_TOL = 1e-10


@dataclass(frozen=True)
class RegisterLayout:
    """Qubit bookkeeping: measurement register size plus target register size."""

    n_meas: int
    n_mat: int

    def __post_init__(self):
        if self.n_meas < 1:
            raise ValueError(f"n_meas must be >= 1, got {self.n_meas}")
        if self.n_mat < 1:
            raise ValueError(f"n_mat must be >= 1, got {self.n_mat}")

    @property
    def n_total(self) -> int:
        return self.n_meas + self.n_mat

    @property
    def dim(self) -> int:
        return 1 << self.n_total

    @property
    def dim_meas(self) -> int:
        return 1 << self.n_meas

    @property
    def dim_mat(self) -> int:
        return 1 << self.n_mat


def bit_reversal_permutation(n_bits: int) -> np.ndarray:
    """rev[i] = the n_bits-bit reversal of i; decodes raw low bits into m."""
    idx = np.arange(1 << n_bits)
    rev = np.zeros_like(idx)
    for b in range(n_bits):
        rev |= ((idx >> b) & 1) << (n_bits - 1 - b)
    return rev


@dataclass
class StateVector:
    """2^(n_total) complex double-precision amplitudes over a RegisterLayout."""

    layout: RegisterLayout
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (self.layout.dim,):
            raise ValueError(
                f"amplitude array has shape {self.amplitudes.shape}, "
                f"expected ({self.layout.dim},)"
            )

    def copy(self) -> "StateVector":
        return StateVector(self.layout, self.amplitudes.copy())


@dataclass
class DenseOperator:
    """Dense 2^n x 2^n complex matrix; entry (r, c) maps input basis c to output r."""

    entries: np.ndarray

    def __post_init__(self):
        self.entries = np.ascontiguousarray(self.entries, dtype=np.complex128)
        if self.entries.ndim != 2 or self.entries.shape[0] != self.entries.shape[1]:
            raise ValueError(f"operator must be square, got shape {self.entries.shape}")
        d = self.entries.shape[0]
        if d < 1 or d & (d - 1):
            raise ValueError(f"operator dimension must be a power of two, got {d}")

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1

    @classmethod
    def identity(cls, dim: int) -> "DenseOperator":
        return cls(np.eye(dim, dtype=np.complex128))


def new_basis_state(layout: RegisterLayout, index: int) -> StateVector:
    """Computational basis state |index> on the full register."""
    if not 0 <= index < layout.dim:
        raise ValueError(f"basis index {index} out of range for {layout.n_total} qubits")
    amps = np.zeros(layout.dim, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(layout, amps)


def state_norm(state: StateVector) -> float:
    return float(np.linalg.norm(state.amplitudes))


class CpuKernels:
    """Portable in-place gate kernels.

    This class is the dispatch seam for the engine: an accelerator backend
    would provide the same four methods over its own buffers.  All methods
    mutate the amplitude array in place and assume exclusive ownership during
    the call.
    """

    @staticmethod
    def hadamard(amps: np.ndarray, n_total: int, qubit: int) -> None:
        v = amps.reshape([2] * n_total)
        ax = n_total - 1 - qubit
        sl0 = [slice(None)] * n_total
        sl1 = [slice(None)] * n_total
        sl0[ax], sl1[ax] = 0, 1
        sl0, sl1 = tuple(sl0), tuple(sl1)
        a0 = v[sl0]
        a1 = v[sl1]
        s = (a0 + a1) * _INV_SQRT2
        d = (a0 - a1) * _INV_SQRT2
        v[sl0] = s
        v[sl1] = d

    @staticmethod
    def controlled_phase(
        amps: np.ndarray, n_total: int, control: int, target: int, angle: float
    ) -> None:
        v = amps.reshape([2] * n_total)
        sl = [slice(None)] * n_total
        sl[n_total - 1 - control] = 1
        sl[n_total - 1 - target] = 1
        v[tuple(sl)] *= np.exp(1j * angle)

    @staticmethod
    def swap(amps: np.ndarray, n_total: int, q1: int, q2: int) -> None:
        v = amps.reshape([2] * n_total)
        a1, a2 = n_total - 1 - q1, n_total - 1 - q2
        sl01 = [slice(None)] * n_total
        sl10 = [slice(None)] * n_total
        sl01[a1], sl01[a2] = 0, 1
        sl10[a1], sl10[a2] = 1, 0
        sl01, sl10 = tuple(sl01), tuple(sl10)
        tmp = v[sl01].copy()
        v[sl01] = v[sl10]
        v[sl10] = tmp

    @staticmethod
    def controlled_dense(
        amps: np.ndarray, layout: RegisterLayout, control: int, matrix: np.ndarray
    ) -> None:
        # Strided block view: (target register, meas bits above control,
        # control bit, meas bits below control).
        v = amps.reshape(
            layout.dim_mat,
            1 << (layout.n_meas - 1 - control),
            2,
            1 << control,
        )
        sel = v[:, :, 1, :]
        v[:, :, 1, :] = np.tensordot(matrix, sel, axes=(1, 0))


_KERNELS = CpuKernels()


def _check_qubit(layout: RegisterLayout, qubit: int, name: str = "qubit") -> None:
    if not 0 <= qubit < layout.n_total:
        raise ValueError(f"{name} index {qubit} out of range for {layout.n_total} qubits")


def apply_hadamard(state: StateVector, qubit: int) -> StateVector:
    """Hadamard on one qubit, in place."""
    _check_qubit(state.layout, qubit)
    _KERNELS.hadamard(state.amplitudes, state.layout.n_total, qubit)
    return state


def apply_controlled_phase(
    state: StateVector, control: int, target: int, angle: float
) -> StateVector:
    """Multiply amplitudes with both control and target set by exp(i*angle), in place."""
    _check_qubit(state.layout, control, "control")
    _check_qubit(state.layout, target, "target")
    if control == target:
        raise ValueError("control and target qubits must differ")
    _KERNELS.controlled_phase(state.amplitudes, state.layout.n_total, control, target, angle)
    return state


def apply_swap(state: StateVector, q1: int, q2: int) -> StateVector:
    """Exchange two qubits, in place."""
    _check_qubit(state.layout, q1, "q1")
    _check_qubit(state.layout, q2, "q2")
    if q1 == q2:
        raise ValueError("swap qubits must differ")
    _KERNELS.swap(state.amplitudes, state.layout.n_total, q1, q2)
    return state


def apply_controlled_dense(state: StateVector, control: int, op: DenseOperator) -> StateVector:
    """Apply ``op`` to the target register wherever the control qubit is 1, in place.

    ``op`` is not required to be unitary; admissibility is checked separately
    via :func:`check_unitary` when desired.
    """
    layout = state.layout
    if not 0 <= control < layout.n_meas:
        raise ValueError(
            f"control {control} is not a measurement qubit (0..{layout.n_meas - 1})"
        )
    if op.dim != layout.dim_mat:
        raise ValueError(
            f"operator dimension {op.dim} does not match target register "
            f"dimension {layout.dim_mat}"
        )
    _KERNELS.controlled_dense(state.amplitudes, layout, control, op.entries)
    return state


def matrix_multiply(a: DenseOperator, b: DenseOperator) -> DenseOperator:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return DenseOperator(a.entries @ b.entries)


def check_unitary(
    op: DenseOperator, tol: float = DEFAULT_UNITARITY_TOL
) -> tuple[bool, float]:
    """Max entrywise deviation of U^H U from the identity, plus tol verdict."""
    gram = op.entries.conj().T @ op.entries
    dev = float(np.abs(gram - np.eye(op.dim)).max())
    return dev <= tol, dev
