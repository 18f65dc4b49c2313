"""Dense complex state-vector core: states, gates, projective measurement, sampling.

Index conventions, fixed for the whole package:
  - Qubit q is bit q of the basis-state index (little-endian: qubit 0 is the
    least-significant bit).  Applying X to qubit q of |0...0> yields basis
    index 2**q.
  - Gate matrices and measurement-basis vectors index their small space the
    same way: targets[j] is bit j of the row/column index.  The CNOT constant
    below is written for targets=(control, target) under this convention.

States are immutable after construction; every operation returns a new
StateVector.  Random choices always come from an explicit numpy Generator.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-9
UNITARY_TOL = 1e-9
DEFAULT_MAX_QUBITS = 16

# Gram-Schmidt completion drops a candidate whose overlap with the span built
# so far exceeds 1 - 1e-6, i.e. whose residual squared norm is below this.
_GS_RESIDUAL_MIN = 1e-6

_SQRT2_INV = 1.0 / np.sqrt(2.0)


# eq=False on array-holding dataclasses: generated field equality would try
# to bool() an elementwise array comparison.  Compare states via fidelity().
@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized amplitudes over 2**num_qubits little-endian basis states."""

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError(f"num_qubits must be >= 1, got {self.num_qubits}")
        amps = np.asarray(self.amplitudes, dtype=complex)
        dim = 1 << self.num_qubits
        if amps.shape != (dim,):
            raise ValueError(f"expected {dim} amplitudes, got shape {amps.shape}")
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValueError(f"state not normalized: sum |a|^2 = {norm_sq!r}")
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return 1 << self.num_qubits


@dataclass(frozen=True, eq=False)
class GateMatrix:
    """Unitary on 1 or 2 qubits; `name` is kept only for serialization."""

    arity: int
    entries: np.ndarray
    name: str | None = None

    def __post_init__(self):
        if self.arity not in (1, 2):
            raise ValueError(f"gate arity must be 1 or 2, got {self.arity}")
        mat = np.asarray(self.entries, dtype=complex)
        dim = 1 << self.arity
        if mat.shape != (dim, dim):
            raise ValueError(f"expected {dim}x{dim} matrix, got shape {mat.shape}")
        err = np.abs(mat @ mat.conj().T - np.eye(dim)).max()
        if err > UNITARY_TOL:
            raise ValueError(f"matrix not unitary: max |MM^dag - I| = {err:g}")
        mat = mat.copy()
        mat.setflags(write=False)
        object.__setattr__(self, "entries", mat)

    def dagger(self) -> "GateMatrix":
        adj = self.entries.conj().T
        name = self.name if np.array_equal(adj, self.entries) else None
        return GateMatrix(self.arity, adj, name=name)


H = GateMatrix(1, np.array([[1, 1], [1, -1]]) * _SQRT2_INV, name="H")
X = GateMatrix(1, np.array([[0, 1], [1, 0]]), name="X")
Y = GateMatrix(1, np.array([[0, -1j], [1j, 0]]), name="Y")
Z = GateMatrix(1, np.array([[1, 0], [0, -1]]), name="Z")
S = GateMatrix(1, np.array([[1, 0], [0, 1j]]), name="S")
T = GateMatrix(1, np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]]), name="T")
# Little-endian CNOT for targets=(control, target): flips bit 1 when bit 0 is set.
CNOT = GateMatrix(
    2,
    np.array([[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]]),
    name="CNOT",
)

NAMED_GATES = {g.name: g for g in (H, X, Y, Z, S, T, CNOT)}


def basis_state(num_qubits: int, index: int) -> StateVector:
    """Computational basis state |index> on num_qubits qubits."""
    dim = 1 << num_qubits
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} out of range for {num_qubits} qubits")
    amps = np.zeros(dim, dtype=complex)
    amps[index] = 1.0
    return StateVector(num_qubits, amps)


def tensor_product(a: StateVector, b: StateVector,
                   max_qubits: int = DEFAULT_MAX_QUBITS) -> StateVector:
    """Combined state with `a` on the lower-indexed qubits, `b` above it."""
    n = a.num_qubits + b.num_qubits
    if n > max_qubits:
        raise ValueError(f"tensor product needs {n} qubits, limit is {max_qubits}")
    return StateVector(n, np.kron(b.amplitudes, a.amplitudes))


def _check_targets(num_qubits: int, targets: list[int]) -> None:
    if len(set(targets)) != len(targets):
        raise ValueError(f"duplicate target qubits: {targets}")
    for t in targets:
        if not 0 <= t < num_qubits:
            raise ValueError(f"target qubit {t} out of range for {num_qubits} qubits")


def _targets_to_front(state: StateVector, targets: list[int]) -> np.ndarray:
    """Reshape amplitudes to (2**k, rest) with the combined row index
    little-endian over `targets`; remaining qubits keep their relative order."""
    n, k = state.num_qubits, len(targets)
    src = [n - 1 - t for t in reversed(targets)]
    moved = np.moveaxis(state.amplitudes.reshape([2] * n), src, range(k))
    return moved.reshape(1 << k, -1)


def apply_gate(state: StateVector, gate: GateMatrix, targets) -> StateVector:
    """Apply `gate` to the target qubits, identity on the rest."""
    targets = list(targets)
    n, k = state.num_qubits, gate.arity
    if len(targets) != k:
        raise ValueError(f"gate of arity {k} got {len(targets)} targets")
    _check_targets(n, targets)
    src = [n - 1 - t for t in reversed(targets)]
    psi = np.moveaxis(state.amplitudes.reshape([2] * n), src, range(k))
    shape = psi.shape
    out = (gate.entries @ psi.reshape(1 << k, -1)).reshape(shape)
    out = np.moveaxis(out, range(k), src)
    return StateVector(n, out.reshape(-1))


def _validated_basis(basis, k: int) -> np.ndarray:
    mat = np.asarray(basis, dtype=complex)
    dim = 1 << k
    if mat.shape != (dim, dim):
        raise ValueError(f"expected {dim} basis vectors of length {dim}, got shape {mat.shape}")
    err = np.abs(mat @ mat.conj().T - np.eye(dim)).max()
    if err > NORM_TOL:
        raise ValueError(f"basis not orthonormal: max deviation {err:g}")
    return mat


def outcome_probabilities(state: StateVector, targets, basis) -> np.ndarray:
    """Exact probabilities of measuring `targets` in the given orthonormal basis.

    `basis` is an array whose rows are the 2**k basis vectors, indexed
    little-endian over the targets list.
    """
    targets = list(targets)
    _check_targets(state.num_qubits, targets)
    mat = _validated_basis(basis, len(targets))
    proj = mat.conj() @ _targets_to_front(state, targets)
    return (np.abs(proj) ** 2).sum(axis=1)


def measure_in_basis(state: StateVector, targets, basis, rng: np.random.Generator):
    """Projectively measure `targets` in an orthonormal basis.

    Returns (outcome_index, pre-measurement probability of that outcome,
    collapsed full-register state).
    """
    targets = list(targets)
    n, k = state.num_qubits, len(targets)
    _check_targets(n, targets)
    mat = _validated_basis(basis, k)

    psi = _targets_to_front(state, targets)
    proj = mat.conj() @ psi
    probs = (np.abs(proj) ** 2).sum(axis=1)
    cum = np.cumsum(probs / probs.sum())
    outcome = min(int(np.searchsorted(cum, rng.random(), side="right")), len(probs) - 1)

    rest = proj[outcome] / np.sqrt(probs[outcome])
    collapsed = np.outer(mat[outcome], rest)
    src = [n - 1 - t for t in reversed(targets)]
    collapsed = np.moveaxis(collapsed.reshape([2] * n), range(k), src).reshape(-1)
    return outcome, float(probs[outcome]), StateVector(n, collapsed)


def project_out(state: StateVector, targets, vector):
    """Project `targets` onto `vector` and drop them from the register.

    Returns (probability of the projection, renormalized state of the
    remaining qubits, which keep their relative order).
    """
    targets = list(targets)
    n, k = state.num_qubits, len(targets)
    _check_targets(n, targets)
    if k >= n:
        raise ValueError("projection must leave at least one qubit")
    vec = np.asarray(vector, dtype=complex)
    if vec.shape != (1 << k,):
        raise ValueError(f"expected projection vector of length {1 << k}, got {vec.shape}")
    reduced = vec.conj() @ _targets_to_front(state, targets)
    prob = float(np.vdot(reduced, reduced).real)
    if prob < 1e-12:
        raise ValueError("projection outcome has (near-)zero probability")
    return prob, StateVector(n - k, reduced / np.sqrt(prob))


def fidelity(a: StateVector, b: StateVector) -> float:
    """|<a|b>|^2, invariant under global phase."""
    if a.num_qubits != b.num_qubits:
        raise ValueError(f"qubit counts differ: {a.num_qubits} vs {b.num_qubits}")
    return min(float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2), 1.0)


def sample_haar_state(num_qubits: int, rng: np.random.Generator,
                      max_qubits: int = DEFAULT_MAX_QUBITS) -> StateVector:
    """Haar-random pure state: normalized vector of iid complex Gaussians."""
    if num_qubits > max_qubits:
        raise ValueError(f"{num_qubits} qubits exceeds limit {max_qubits}")
    dim = 1 << num_qubits
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return StateVector(num_qubits, z / np.linalg.norm(z))


def orthonormal_basis_containing(first) -> np.ndarray:
    """Orthonormal basis (rows) whose row 0 is `first`.

    Completed by Gram-Schmidt over the computational basis vectors in index
    order, skipping candidates nearly parallel to the span built so far.
    Deterministic for a given input vector.
    """
    vec = np.asarray(first, dtype=complex)
    d = vec.shape[0]
    rows = np.empty((d, d), dtype=complex)
    rows[0] = vec / np.linalg.norm(vec)
    m = 1
    for j in range(d):
        if m == d:
            break
        # candidate e_j: its overlap with the rows built so far is column j
        coeffs = rows[:m, j].conj()
        w = -(coeffs @ rows[:m])
        w[j] += 1.0
        norm_sq = float(np.vdot(w, w).real)
        if norm_sq > _GS_RESIDUAL_MIN:
            rows[m] = w / np.sqrt(norm_sq)
            m += 1
    if m != d:
        # d candidates each within 1e-6 of an (m < d)-dim span is impossible
        # unless d > 1e6; out of range for the qubit counts this package allows.
        raise ValueError("could not complete an orthonormal basis")
    return rows
