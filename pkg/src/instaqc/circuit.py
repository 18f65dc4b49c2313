"""Gate-sequence circuits: application, inversion, random generation, JSON I/O."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import unitary_group

from .statevec import NAMED_GATES, CNOT, GateMatrix, StateVector, apply_gate

Gate = tuple[GateMatrix, tuple[int, ...]]


@dataclass(frozen=True, eq=False)
class Circuit:
    """Ordered gates over num_qubits qubits; each entry is (matrix, targets)."""

    num_qubits: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError(f"num_qubits must be >= 1, got {self.num_qubits}")
        gates = []
        for gate, targets in self.gates:
            targets = tuple(targets)
            if len(targets) != gate.arity:
                raise ValueError(
                    f"gate of arity {gate.arity} got targets {targets}")
            for t in targets:
                if not 0 <= t < self.num_qubits:
                    raise ValueError(
                        f"target {t} out of range for {self.num_qubits} qubits")
            gates.append((gate, targets))
        object.__setattr__(self, "gates", tuple(gates))

    def __len__(self) -> int:
        return len(self.gates)


def apply_circuit(circuit: Circuit, state: StateVector, offset: int = 0) -> StateVector:
    """Run the circuit on `state`, with circuit qubit i mapped to qubit offset+i."""
    if offset < 0 or offset + circuit.num_qubits > state.num_qubits:
        raise ValueError(
            f"circuit on {circuit.num_qubits} qubits at offset {offset} "
            f"does not fit in {state.num_qubits} qubits")
    for gate, targets in circuit.gates:
        state = apply_gate(state, gate, [offset + t for t in targets])
    return state


def inverse(circuit: Circuit) -> Circuit:
    """Reversed gate order with each matrix conjugate-transposed."""
    gates = tuple((gate.dagger(), targets) for gate, targets in reversed(circuit.gates))
    return Circuit(circuit.num_qubits, gates)


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Full 2**n x 2**n matrix of the circuit (little-endian column index)."""
    dim = 1 << circuit.num_qubits
    cols = np.eye(dim, dtype=complex)
    for j in range(dim):
        state = StateVector(circuit.num_qubits, cols[:, j].copy())
        cols[:, j] = apply_circuit(circuit, state).amplitudes
    return cols


def random_circuit(num_qubits: int, depth: int, rng: np.random.Generator) -> Circuit:
    """Layered random circuit: per layer, a Haar-random single-qubit gate on
    every qubit, then (when num_qubits >= 2) one CNOT on a random pair."""
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    gates: list[Gate] = []
    for _ in range(depth):
        for q in range(num_qubits):
            u = unitary_group.rvs(2, random_state=rng)
            gates.append((GateMatrix(1, u), (q,)))
        if num_qubits >= 2:
            control, target = rng.choice(num_qubits, size=2, replace=False)
            gates.append((CNOT, (int(control), int(target))))
    return Circuit(num_qubits, tuple(gates))


def _matrix_to_json(mat: np.ndarray) -> list:
    return [[[float(v.real), float(v.imag)] for v in row] for row in mat]


def _matrix_from_json(rows: list) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows])


def circuit_to_dict(circuit: Circuit) -> dict:
    """JSON-ready form: named gates where possible, raw matrices otherwise."""
    gates = []
    for gate, targets in circuit.gates:
        entry: dict = {"targets": list(targets)}
        known = NAMED_GATES.get(gate.name)
        if known is not None and np.array_equal(known.entries, gate.entries):
            entry["name"] = gate.name
        else:
            entry["matrix"] = _matrix_to_json(gate.entries)
        gates.append(entry)
    return {"num_qubits": circuit.num_qubits, "gates": gates}


def circuit_from_dict(doc: dict) -> Circuit:
    gates: list[Gate] = []
    for entry in doc["gates"]:
        targets = tuple(entry["targets"])
        if "name" in entry:
            name = entry["name"]
            if name not in NAMED_GATES:
                raise ValueError(f"unknown gate name {name!r}")
            gate = NAMED_GATES[name]
        else:
            mat = _matrix_from_json(entry["matrix"])
            arity = {2: 1, 4: 2}.get(mat.shape[0])
            if arity is None or mat.shape[0] != mat.shape[1]:
                raise ValueError(f"matrix shape {mat.shape} is not 2x2 or 4x4")
            gate = GateMatrix(arity, mat)
        gates.append((gate, targets))
    return Circuit(doc["num_qubits"], tuple(gates))


def save_circuit(circuit: Circuit, path) -> None:
    with open(path, "w") as fh:
        json.dump(circuit_to_dict(circuit), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_circuit(path) -> Circuit:
    with open(path) as fh:
        return circuit_from_dict(json.load(fh))
