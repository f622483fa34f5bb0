import numpy as np
import pytest

from qpebench import (
    DenseOperator,
    RegisterLayout,
    StateVector,
    apply_controlled_dense,
    apply_controlled_phase,
    apply_hadamard,
    apply_swap,
    check_unitary,
    matrix_multiply,
    new_basis_state,
    state_norm,
)

from conftest import (
    H2,
    X2,
    controlled_dense_matrix,
    controlled_phase_matrix,
    random_state_vector,
    single_qubit_matrix,
    swap_matrix,
)


class TestLayout:
    def test_totals(self):
        layout = RegisterLayout(n_meas=3, n_mat=2)
        assert layout.n_total == 5
        assert layout.dim == 32

    @pytest.mark.parametrize("n_meas,n_mat", [(0, 1), (1, 0), (-1, 2)])
    def test_rejects_empty_registers(self, n_meas, n_mat):
        with pytest.raises(ValueError):
            RegisterLayout(n_meas, n_mat)


class TestBasisState:
    def test_two_qubit_ground(self):
        state = new_basis_state(RegisterLayout(1, 1), 0)
        assert np.array_equal(state.amplitudes, [1, 0, 0, 0])

    def test_single_qubit_excited(self):
        state = new_basis_state(RegisterLayout(1, 1), 1)
        assert state.amplitudes[1] == 1
        assert np.count_nonzero(state.amplitudes) == 1

    def test_index_out_of_range(self):
        with pytest.raises(ValueError):
            new_basis_state(RegisterLayout(2, 1), 8)


class TestHadamard:
    def test_superposition_from_zero(self):
        state = new_basis_state(RegisterLayout(1, 1), 0)
        apply_hadamard(state, 0)
        expected = np.zeros(4, dtype=complex)
        expected[0] = expected[1] = 1 / np.sqrt(2)
        np.testing.assert_allclose(state.amplitudes, expected, atol=1e-15)

    def test_involution(self, rng):
        layout = RegisterLayout(2, 2)
        state = random_state_vector(layout, rng)
        before = state.amplitudes.copy()
        apply_hadamard(state, 2)
        apply_hadamard(state, 2)
        np.testing.assert_allclose(state.amplitudes, before, atol=1e-14)

    def test_minus_state_maps_to_one(self):
        layout = RegisterLayout(1, 1)
        state = StateVector(layout, np.array([1, -1, 0, 0]) / np.sqrt(2))
        apply_hadamard(state, 0)
        np.testing.assert_allclose(state.amplitudes, [0, 1, 0, 0], atol=1e-15)

    def test_qubit_out_of_range(self):
        state = new_basis_state(RegisterLayout(1, 1), 0)
        with pytest.raises(ValueError):
            apply_hadamard(state, 2)


class TestControlledPhase:
    def test_zero_angle_is_identity(self, rng):
        state = random_state_vector(RegisterLayout(2, 1), rng)
        before = state.amplitudes.copy()
        apply_controlled_phase(state, 0, 1, 0.0)
        np.testing.assert_allclose(state.amplitudes, before, atol=1e-15)

    def test_cz_on_11(self):
        state = new_basis_state(RegisterLayout(1, 1), 3)
        apply_controlled_phase(state, 0, 1, np.pi)
        np.testing.assert_allclose(state.amplitudes, [0, 0, 0, -1], atol=1e-15)

    def test_control_off_unchanged(self):
        # |01>: qubit 0 set, qubit 1 (the control) clear
        state = new_basis_state(RegisterLayout(1, 1), 1)
        apply_controlled_phase(state, 1, 0, 1.2345)
        np.testing.assert_allclose(state.amplitudes, [0, 1, 0, 0], atol=1e-15)

    def test_equal_control_target_rejected(self):
        state = new_basis_state(RegisterLayout(1, 1), 0)
        with pytest.raises(ValueError):
            apply_controlled_phase(state, 1, 1, 0.5)


class TestSwap:
    def test_exchanges_bits(self):
        state = new_basis_state(RegisterLayout(1, 1), 2)
        apply_swap(state, 0, 1)
        np.testing.assert_allclose(state.amplitudes, [0, 1, 0, 0], atol=1e-15)

    def test_fixed_point(self):
        state = new_basis_state(RegisterLayout(1, 1), 0)
        apply_swap(state, 0, 1)
        np.testing.assert_allclose(state.amplitudes, [1, 0, 0, 0], atol=1e-15)

    def test_involution(self, rng):
        state = random_state_vector(RegisterLayout(2, 2), rng)
        before = state.amplitudes.copy()
        apply_swap(state, 1, 3)
        apply_swap(state, 1, 3)
        np.testing.assert_allclose(state.amplitudes, before, atol=1e-15)

    def test_equal_qubits_rejected(self):
        state = new_basis_state(RegisterLayout(1, 1), 0)
        with pytest.raises(ValueError):
            apply_swap(state, 0, 0)


class TestControlledDense:
    def test_control_off_unchanged(self, rng):
        layout = RegisterLayout(2, 2)
        psi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        psi /= np.linalg.norm(psi)
        amps = np.zeros(layout.dim, dtype=complex)
        amps.reshape(4, 4)[:, 0] = psi  # measurement register in |00>
        state = StateVector(layout, amps.copy())
        apply_controlled_dense(state, 0, DenseOperator(rng.standard_normal((4, 4))))
        np.testing.assert_allclose(state.amplitudes, amps, atol=1e-15)

    def test_controlled_not(self):
        # control qubit 0 set, target qubit (wire 1) in |0>
        state = new_basis_state(RegisterLayout(1, 1), 1)
        apply_controlled_dense(state, 0, DenseOperator(X2))
        np.testing.assert_allclose(state.amplitudes, [0, 0, 0, 1], atol=1e-15)

    def test_phase_kickback(self):
        # control in (|0>+|1>)/sqrt(2), target |1>, op diag(1, i):
        # oracle is the direct 4x4 matrix-vector product
        layout = RegisterLayout(1, 1)
        amps = np.array([0, 0, 1, 1], dtype=complex) / np.sqrt(2)
        state = StateVector(layout, amps.copy())
        op = np.diag([1, 1j])
        apply_controlled_dense(state, 0, DenseOperator(op))
        oracle = controlled_dense_matrix(1, 1, 0, op) @ amps
        np.testing.assert_allclose(state.amplitudes, oracle, atol=1e-15)
        np.testing.assert_allclose(
            state.amplitudes, np.array([0, 0, 1, 1j]) / np.sqrt(2), atol=1e-15
        )

    def test_identity_op_is_identity(self, rng):
        layout = RegisterLayout(2, 3)
        state = random_state_vector(layout, rng)
        before = state.amplitudes.copy()
        apply_controlled_dense(state, 1, DenseOperator.identity(8))
        np.testing.assert_allclose(state.amplitudes, before, atol=1e-15)

    def test_dimension_mismatch(self):
        state = new_basis_state(RegisterLayout(1, 2), 0)
        with pytest.raises(ValueError):
            apply_controlled_dense(state, 0, DenseOperator(X2))

    def test_control_must_be_measurement_qubit(self):
        state = new_basis_state(RegisterLayout(1, 1), 0)
        with pytest.raises(ValueError):
            apply_controlled_dense(state, 1, DenseOperator(X2))


class TestMatrixOps:
    def test_identity_product(self, rng):
        u = DenseOperator(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
        out = matrix_multiply(DenseOperator.identity(4), u)
        np.testing.assert_allclose(out.entries, u.entries)

    def test_x_squared(self):
        out = matrix_multiply(DenseOperator(X2), DenseOperator(X2))
        np.testing.assert_allclose(out.entries, np.eye(2))

    def test_phase_squaring(self):
        u = DenseOperator(np.diag([1, 1j]))
        out = matrix_multiply(u, u)
        np.testing.assert_allclose(out.entries, np.diag([1, -1]))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            matrix_multiply(DenseOperator(X2), DenseOperator.identity(4))

    def test_non_power_of_two_rejected(self):
        with pytest.raises(ValueError):
            DenseOperator(np.eye(3))


class TestCheckUnitary:
    def test_identity(self):
        ok, dev = check_unitary(DenseOperator.identity(4), tol=1e-12)
        assert ok
        assert dev == 0.0

    def test_scaled_diagonal(self):
        ok, dev = check_unitary(DenseOperator(np.diag([2.0, 1.0])))
        assert not ok
        assert dev == pytest.approx(3.0)


class TestStateNorm:
    def test_basis_state(self):
        assert state_norm(new_basis_state(RegisterLayout(2, 1), 5)) == 1.0

    def test_zero_vector(self):
        state = StateVector(RegisterLayout(1, 1), np.zeros(4))
        assert state_norm(state) == 0.0

    def test_three_four_five(self):
        state = StateVector(RegisterLayout(1, 1), np.array([0.6, 0.8j, 0, 0]))
        assert state_norm(state) == pytest.approx(1.0, abs=1e-15)


class TestGateMatrixOracle:
    """Every kernel equals its explicit tensor-product matrix on random states."""

    @pytest.mark.parametrize("n_meas,n_mat", [(2, 2), (3, 3), (4, 2)])
    def test_hadamard(self, n_meas, n_mat, rng):
        layout = RegisterLayout(n_meas, n_mat)
        for q in range(layout.n_total):
            state = random_state_vector(layout, rng)
            expected = single_qubit_matrix(layout.n_total, H2, q) @ state.amplitudes
            apply_hadamard(state, q)
            np.testing.assert_allclose(state.amplitudes, expected, atol=1e-12)

    @pytest.mark.parametrize("control,target", [(0, 1), (1, 4), (3, 2)])
    def test_controlled_phase(self, control, target, rng):
        layout = RegisterLayout(3, 2)
        angle = 0.8137
        state = random_state_vector(layout, rng)
        expected = (
            controlled_phase_matrix(layout.n_total, control, target, angle)
            @ state.amplitudes
        )
        apply_controlled_phase(state, control, target, angle)
        np.testing.assert_allclose(state.amplitudes, expected, atol=1e-12)

    @pytest.mark.parametrize("q1,q2", [(0, 1), (0, 4), (2, 3)])
    def test_swap(self, q1, q2, rng):
        layout = RegisterLayout(3, 2)
        state = random_state_vector(layout, rng)
        expected = swap_matrix(layout.n_total, q1, q2) @ state.amplitudes
        apply_swap(state, q1, q2)
        np.testing.assert_allclose(state.amplitudes, expected, atol=1e-12)

    @pytest.mark.parametrize("n_meas,n_mat,control", [(2, 2, 0), (2, 2, 1), (3, 3, 2)])
    def test_controlled_dense(self, n_meas, n_mat, control, rng):
        layout = RegisterLayout(n_meas, n_mat)
        d = 1 << n_mat
        op = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        state = random_state_vector(layout, rng)
        expected = controlled_dense_matrix(n_meas, n_mat, control, op) @ state.amplitudes
        apply_controlled_dense(state, control, DenseOperator(op))
        np.testing.assert_allclose(state.amplitudes, expected, atol=1e-12)


class TestGateProperties:
    def test_linearity(self, rng):
        layout = RegisterLayout(2, 2)
        x = random_state_vector(layout, rng)
        y = random_state_vector(layout, rng)
        alpha, beta = 0.3 - 0.4j, 1.1 + 0.2j
        combined = StateVector(layout, alpha * x.amplitudes + beta * y.amplitudes)

        def circuit(state):
            apply_hadamard(state, 1)
            apply_controlled_phase(state, 0, 2, 0.77)
            apply_swap(state, 1, 3)
            apply_controlled_dense(state, 0, DenseOperator(np.diag([1, 1j, -1, -1j])))
            return state

        lhs = circuit(combined).amplitudes
        rhs = alpha * circuit(x).amplitudes + beta * circuit(y).amplitudes
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)

    def test_norm_conservation_random_circuit(self, rng):
        layout = RegisterLayout(4, 3)
        state = random_state_vector(layout, rng)
        u = np.linalg.qr(
            rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
        )[0]
        for _ in range(50):
            apply_hadamard(state, int(rng.integers(layout.n_total)))
            a, b = rng.choice(layout.n_total, size=2, replace=False)
            apply_controlled_phase(state, int(a), int(b), float(rng.uniform(0, np.pi)))
            apply_swap(state, int(a), int(b))
            apply_controlled_dense(state, int(rng.integers(layout.n_meas)), DenseOperator(u))
        assert abs(state_norm(state) - 1.0) < 1e-10
