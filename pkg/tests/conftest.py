"""Shared independent oracles: explicit tensor-product matrices and a
full-matrix phase-estimation simulation.

Index convention mirrors the engine: amplitude index bit q is qubit q, so a
kron product kron(A_high, B_low) acts with A on the high bits.
"""

import numpy as np
import pytest

H2 = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
X2 = np.array([[0, 1], [1, 0]], dtype=complex)


def single_qubit_matrix(n_total, gate, qubit):
    """Full 2^n x 2^n matrix for a one-qubit gate via tensor products."""
    return np.kron(
        np.eye(1 << (n_total - 1 - qubit)), np.kron(gate, np.eye(1 << qubit))
    )


def controlled_phase_matrix(n_total, control, target, angle):
    diag = np.ones(1 << n_total, dtype=complex)
    idx = np.arange(1 << n_total)
    both = ((idx >> control) & 1) & ((idx >> target) & 1)
    diag[both == 1] = np.exp(1j * angle)
    return np.diag(diag)


def swap_matrix(n_total, q1, q2):
    dim = 1 << n_total
    mat = np.zeros((dim, dim), dtype=complex)
    for i in range(dim):
        b1, b2 = (i >> q1) & 1, (i >> q2) & 1
        j = i & ~(1 << q1) & ~(1 << q2) | (b2 << q1) | (b1 << q2)
        mat[j, i] = 1.0
    return mat


def controlled_dense_matrix(n_meas, n_mat, control, op):
    """Controlled application of ``op`` on the high-bit target register."""
    dim_meas = 1 << n_meas
    bits = (np.arange(dim_meas) >> control) & 1
    p0 = np.diag((1 - bits).astype(complex))
    p1 = np.diag(bits.astype(complex))
    return np.kron(np.eye(1 << n_mat), p0) + np.kron(op, p1)


def bit_reverse(value, n_bits):
    out = 0
    for b in range(n_bits):
        out |= ((value >> b) & 1) << (n_bits - 1 - b)
    return out


def inverse_qft_matrix(n_meas):
    """Matrix oracle on the measurement space: amplitudes exp(2*pi*i*m*k/N)/sqrt(N)
    over raw index k map to the raw index whose bit-reversal decodes to m."""
    dim = 1 << n_meas
    omega = np.exp(-2j * np.pi / dim)
    f_dag = omega ** (np.outer(np.arange(dim), np.arange(dim))) / np.sqrt(dim)
    perm = np.zeros((dim, dim), dtype=complex)
    for m in range(dim):
        perm[bit_reverse(m, n_meas), m] = 1.0
    return perm @ f_dag


def qpe_matrix_simulation(matrix, eigenvector, n_meas):
    """Phase estimation by explicit full-matrix linear algebra.

    Independent of the gate kernels: Hadamard layer, controlled powers (via
    numpy matrix_power), and the inverse-DFT matrix are all built as dense
    2^(n_total) x 2^(n_total) operators.
    """
    n_mat = matrix.shape[0].bit_length() - 1
    n_total = n_meas + n_mat
    psi = np.asarray(eigenvector, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    meas0 = np.zeros(1 << n_meas, dtype=complex)
    meas0[0] = 1.0
    vec = np.kron(psi, meas0)

    full_h = np.eye(1 << n_total, dtype=complex)
    for qq in range(n_meas):
        full_h = single_qubit_matrix(n_total, H2, qq) @ full_h
    vec = full_h @ vec

    for j in range(n_meas):
        power = np.linalg.matrix_power(matrix, 1 << j)
        vec = controlled_dense_matrix(n_meas, n_mat, j, power) @ vec

    vec = np.kron(np.eye(1 << n_mat), inverse_qft_matrix(n_meas)) @ vec
    return vec


def qpe_kernel(phi, n_meas):
    """Closed-form single-eigenvector outcome distribution."""
    dim = 1 << n_meas
    delta = phi - np.arange(dim) / dim
    probs = np.empty(dim)
    for i, d in enumerate(delta):
        s = np.sin(np.pi * d)
        if abs(s) < 1e-15:
            probs[i] = 1.0
        else:
            probs[i] = (np.sin(dim * np.pi * d) / (dim * s)) ** 2
    return probs


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


def random_state_vector(layout, rng):
    from qpebench import StateVector

    amps = rng.standard_normal(layout.dim) + 1j * rng.standard_normal(layout.dim)
    amps /= np.linalg.norm(amps)
    return StateVector(layout, amps)
