"""State-vector core: gates, measurement, sampling, basis completion."""
import numpy as np
import pytest
from scipy.stats import unitary_group

from conftest import assert_within_3sigma, rate_within_3sigma
from instaqc.statevec import (
    CNOT,
    H,
    NAMED_GATES,
    S,
    T,
    X,
    Y,
    Z,
    GateMatrix,
    StateVector,
    apply_gate,
    basis_state,
    fidelity,
    measure_in_basis,
    orthonormal_basis_containing,
    outcome_probabilities,
    project_out,
    sample_haar_state,
    tensor_product,
)


def test_state_rejects_unnormalized():
    with pytest.raises(ValueError, match="not normalized"):
        StateVector(1, np.array([1.0, 1.0]))


def test_state_rejects_wrong_length():
    with pytest.raises(ValueError, match="amplitudes"):
        StateVector(2, np.array([1.0, 0.0]))


def test_state_amplitudes_read_only():
    state = basis_state(1, 0)
    with pytest.raises(ValueError):
        state.amplitudes[0] = 0.5


def test_basis_state_places_single_amplitude():
    state = basis_state(3, 5)
    expected = np.zeros(8)
    expected[5] = 1.0
    assert np.array_equal(state.amplitudes, expected)


def test_basis_state_index_range():
    with pytest.raises(ValueError, match="out of range"):
        basis_state(2, 4)


def test_gate_rejects_non_unitary():
    with pytest.raises(ValueError, match="not unitary"):
        GateMatrix(1, np.array([[1.0, 0.0], [0.0, 2.0]]))


def test_named_gates_are_unitary_and_registered():
    for name, gate in NAMED_GATES.items():
        assert gate.name == name
        dim = 1 << gate.arity
        assert np.allclose(gate.entries @ gate.entries.conj().T, np.eye(dim))


def test_h_on_zero_gives_plus():
    """H|0> = (|0> + |1>)/sqrt(2)."""
    state = apply_gate(basis_state(1, 0), H, [0])
    assert np.allclose(state.amplitudes, [1 / np.sqrt(2), 1 / np.sqrt(2)])


@pytest.mark.parametrize("qubit", [0, 1, 2])
def test_x_flips_its_own_bit(qubit):
    state = apply_gate(basis_state(3, 0), X, [qubit])
    assert state.amplitudes[1 << qubit] == 1.0


def test_s_and_t_phases():
    assert np.allclose(apply_gate(basis_state(1, 1), S, [0]).amplitudes, [0, 1j])
    assert np.allclose(apply_gate(basis_state(1, 1), T, [0]).amplitudes,
                       [0, np.exp(1j * np.pi / 4)])


def test_y_and_z_on_basis_states():
    assert np.allclose(apply_gate(basis_state(1, 0), Y, [0]).amplitudes, [0, 1j])
    assert np.allclose(apply_gate(basis_state(1, 1), Z, [0]).amplitudes, [0, -1])


@pytest.mark.parametrize("index,expected", [(0, 0), (1, 3), (2, 2), (3, 1)])
def test_cnot_truth_table(index, expected):
    """Control is the first target: |c=1, t> flips t."""
    state = apply_gate(basis_state(2, index), CNOT, [0, 1])
    assert state.amplitudes[expected] == 1.0


def test_cnot_reversed_targets():
    # control on qubit 1: index 2 (bit 1 set) flips bit 0
    state = apply_gate(basis_state(2, 2), CNOT, [1, 0])
    assert state.amplitudes[3] == 1.0


def test_apply_gate_matches_kron_expansion():
    """Single-qubit gate on qubit q of 3 equals the explicit kron matrix."""
    rng = np.random.default_rng(11)
    psi = sample_haar_state(3, rng)
    mats = {0: np.kron(np.eye(4), H.entries),
            1: np.kron(np.eye(2), np.kron(H.entries, np.eye(2))),
            2: np.kron(H.entries, np.eye(4))}
    for q, full in mats.items():
        got = apply_gate(psi, H, [q]).amplitudes
        assert np.allclose(got, full @ psi.amplitudes)


def test_apply_gate_two_qubit_matches_kron_expansion():
    """CNOT on (0, 1) of 3 qubits equals kron(I, CNOT) on little-endian index."""
    rng = np.random.default_rng(12)
    psi = sample_haar_state(3, rng)
    got = apply_gate(psi, CNOT, [0, 1]).amplitudes
    assert np.allclose(got, np.kron(np.eye(2), CNOT.entries) @ psi.amplitudes)


def test_apply_gate_validates_targets():
    psi = basis_state(2, 0)
    with pytest.raises(ValueError, match="duplicate"):
        apply_gate(psi, CNOT, [1, 1])
    with pytest.raises(ValueError, match="out of range"):
        apply_gate(psi, X, [2])
    with pytest.raises(ValueError, match="arity"):
        apply_gate(psi, X, [0, 1])


def test_apply_gate_preserves_norm():
    rng = np.random.default_rng(21)
    for _ in range(20):
        psi = sample_haar_state(4, rng)
        u = GateMatrix(1, unitary_group.rvs(2, random_state=rng))
        out = apply_gate(psi, u, [int(rng.integers(4))])
        assert abs(np.vdot(out.amplitudes, out.amplitudes).real - 1.0) < 1e-12


def test_tensor_product_ordering():
    """First factor occupies the low qubits."""
    joint = tensor_product(basis_state(1, 1), basis_state(2, 0))
    assert joint.amplitudes[1] == 1.0
    joint = tensor_product(basis_state(1, 0), basis_state(2, 3))
    assert joint.amplitudes[6] == 1.0


def test_tensor_product_norm():
    rng = np.random.default_rng(3)
    a, b = sample_haar_state(2, rng), sample_haar_state(3, rng)
    joint = tensor_product(a, b)
    assert abs(np.vdot(joint.amplitudes, joint.amplitudes).real - 1.0) < 1e-12


def test_tensor_product_size_limit():
    a = basis_state(1, 0)
    with pytest.raises(ValueError, match="limit"):
        tensor_product(a, a, max_qubits=1)


def test_outcome_probabilities_computational():
    state = apply_gate(basis_state(1, 0), H, [0])
    probs = outcome_probabilities(state, [0], np.eye(2))
    assert np.allclose(probs, [0.5, 0.5])


def test_outcome_probabilities_partial_register():
    # Bell state: marginal of either qubit is uniform
    bell = apply_gate(apply_gate(basis_state(2, 0), H, [0]), CNOT, [0, 1])
    for q in (0, 1):
        assert np.allclose(outcome_probabilities(bell, [q], np.eye(2)), [0.5, 0.5])


def test_outcome_probabilities_rejects_bad_basis():
    with pytest.raises(ValueError, match="orthonormal"):
        outcome_probabilities(basis_state(1, 0), [0], np.array([[1, 1], [0, 1.0]]))


def test_measure_collapse_is_repeatable():
    rng = np.random.default_rng(5)
    psi = sample_haar_state(3, rng)
    outcome, prob, collapsed = measure_in_basis(psi, [0, 2], np.eye(4), rng)
    assert 0 < prob <= 1
    again, prob2, _ = measure_in_basis(collapsed, [0, 2], np.eye(4), rng)
    assert again == outcome
    assert abs(prob2 - 1.0) < 1e-9


def test_measure_frequencies_match_probabilities():
    rng = np.random.default_rng(6)
    psi = sample_haar_state(2, rng)
    probs = outcome_probabilities(psi, [0, 1], np.eye(4))
    counts = np.zeros(4, dtype=int)
    trials = 20000
    for _ in range(trials):
        outcome, _, _ = measure_in_basis(psi, [0, 1], np.eye(4), rng)
        counts[outcome] += 1
    for k in range(4):
        rate_within_3sigma(int(counts[k]), trials, probs[k])


def test_measure_in_entangled_basis():
    bell_basis = np.array([[1, 0, 0, 1], [0, 1, 1, 0],
                           [1, 0, 0, -1], [0, -1, 1, 0]]) / np.sqrt(2)
    bell = apply_gate(apply_gate(basis_state(2, 0), H, [0]), CNOT, [0, 1])
    rng = np.random.default_rng(8)
    outcome, prob, _ = measure_in_basis(bell, [0, 1], bell_basis, rng)
    assert outcome == 0
    assert abs(prob - 1.0) < 1e-9


def test_project_out_keeps_remaining_qubit_state():
    # register [q0=|1>, q1=psi, q2=|0>]: projecting q0, q2 onto what they hold
    # has probability 1 and leaves exactly psi
    rng = np.random.default_rng(9)
    psi = sample_haar_state(1, rng)
    joint = tensor_product(basis_state(1, 1), tensor_product(psi, basis_state(1, 0)))
    # vector index over targets (0, 2): q0 is bit 0, q2 is bit 1; q0=1,q2=0 -> 1
    prob, rest = project_out(joint, [0, 2], np.array([0.0, 1.0, 0.0, 0.0]))
    assert abs(prob - 1.0) < 1e-12
    assert fidelity(rest, psi) > 1 - 1e-12


def test_project_out_bell_half():
    bell = apply_gate(apply_gate(basis_state(2, 0), H, [0]), CNOT, [0, 1])
    prob, rest = project_out(bell, [0], np.array([1.0, 0.0]))
    assert abs(prob - 0.5) < 1e-12
    assert np.allclose(rest.amplitudes, [1.0, 0.0])


def test_project_out_zero_probability_raises():
    with pytest.raises(ValueError, match="zero probability"):
        project_out(basis_state(2, 0), [0], np.array([0.0, 1.0]))


def test_project_out_must_leave_a_qubit():
    with pytest.raises(ValueError, match="at least one"):
        project_out(basis_state(1, 0), [0], np.array([1.0, 0.0]))


def test_fidelity_phase_invariant():
    rng = np.random.default_rng(10)
    psi = sample_haar_state(2, rng)
    rotated = StateVector(2, np.exp(1.37j) * psi.amplitudes)
    assert abs(fidelity(psi, rotated) - 1.0) < 1e-12


def test_fidelity_orthogonal_and_mismatch():
    assert fidelity(basis_state(2, 0), basis_state(2, 3)) == 0.0
    with pytest.raises(ValueError, match="qubit counts"):
        fidelity(basis_state(1, 0), basis_state(2, 0))


def test_haar_mean_first_amplitude():
    """E|a_0|^2 = 2^-n for Haar states; checked at n=2."""
    rng = np.random.default_rng(13)
    samples = [abs(sample_haar_state(2, rng).amplitudes[0]) ** 2
               for _ in range(100000)]
    assert_within_3sigma(samples, 0.25)


def test_haar_state_normalized():
    rng = np.random.default_rng(14)
    for n in (1, 3, 5):
        psi = sample_haar_state(n, rng)
        assert abs(np.vdot(psi.amplitudes, psi.amplitudes).real - 1.0) < 1e-12


def test_haar_respects_size_limit():
    rng = np.random.default_rng(15)
    with pytest.raises(ValueError, match="limit"):
        sample_haar_state(17, rng)


@pytest.mark.parametrize("dim", [2, 4, 8])
def test_basis_completion_orthonormal(dim):
    rng = np.random.default_rng(16 + dim)
    first = sample_haar_state(int(np.log2(dim)), rng).amplitudes
    basis = orthonormal_basis_containing(first)
    assert np.allclose(basis[0], first)
    assert np.abs(basis @ basis.conj().T - np.eye(dim)).max() < 1e-9


def test_basis_completion_skips_parallel_candidate():
    # first element equals e_2: the e_2 candidate must be skipped, not doubled
    first = np.zeros(4, dtype=complex)
    first[2] = 1.0
    basis = orthonormal_basis_containing(first)
    assert np.abs(basis @ basis.conj().T - np.eye(4)).max() < 1e-9


def test_basis_completion_skips_near_parallel_candidate():
    eps = 1e-4  # residual of e_0 is eps^2 = 1e-8, under the 1e-6 skip threshold
    first = np.array([np.sqrt(1 - eps**2), eps, 0.0, 0.0], dtype=complex)
    basis = orthonormal_basis_containing(first)
    assert np.abs(basis @ basis.conj().T - np.eye(4)).max() < 1e-9
