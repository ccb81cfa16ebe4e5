"""Dense statevector simulation and basis-set gate counting.

The simulator is deliberately small: pure states up to 12 qubits, the gate
vocabulary needed by amplitude amplification (single-qubit Cliffords plus T,
CNOT, SWAP, controlled-Z, and a diagonal phase flip over marked bitstrings),
and seeded measurement sampling. Qubit 0 is the least significant bit of a
basis index, so outcome strings read as plain binary numbers.

Gate counting rewrites a circuit into the one- and two-qubit set
{CNOT, SWAP, H, |+> prep, |0> prep, X meas, Z meas, X, Y, Z, S, T} using a
decomposition table shipped as JSON data, so the per-gate expansion rules are
auditable and editable without touching code.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

MAX_QUBITS = 12

BASIS_GATES = (
    "cnot",
    "swap",
    "h",
    "plus_prep",
    "zero_prep",
    "x_meas",
    "z_meas",
    "x",
    "y",
    "z",
    "s",
    "t",
)

_SINGLE_QUBIT_MATRICES = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
    "h": np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2.0),
    "s": np.array([[1, 0], [0, 1j]], dtype=complex),
    "t": np.array([[1, 0], [0, np.exp(1j * math.pi / 4)]], dtype=complex),
}

UNITARY_GATES = frozenset(_SINGLE_QUBIT_MATRICES) | {"cnot", "swap", "cz", "diag_phase"}

_PSEUDO_OPS = frozenset({"zero_prep", "plus_prep", "z_meas", "x_meas"})


class SimulationError(ValueError):
    """Bad qubit index, unsupported gate, or invalid simulator input."""


@dataclass
class StateVector:
    """Pure state over ``num_qubits`` qubits; amplitudes sum-square to 1."""

    num_qubits: int
    amps: np.ndarray

    @property
    def dim(self) -> int:
        return 1 << self.num_qubits

    def norm(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


def zero_state(num_qubits: int) -> StateVector:
    _check_qubit_count(num_qubits)
    amps = np.zeros(1 << num_qubits, dtype=complex)
    amps[0] = 1.0
    return StateVector(num_qubits, amps)


def uniform_superposition(num_qubits: int) -> StateVector:
    """The equal superposition over all basis states."""
    _check_qubit_count(num_qubits)
    dim = 1 << num_qubits
    amps = np.full(dim, 1.0 / math.sqrt(dim), dtype=complex)
    return StateVector(num_qubits, amps)


def _check_qubit_count(n: int) -> None:
    if not 1 <= n <= MAX_QUBITS:
        raise SimulationError(f"qubit count {n} outside [1, {MAX_QUBITS}]")


def _check_indices(state_qubits: int, qubits: tuple[int, ...]) -> None:
    for q in qubits:
        if not 0 <= q < state_qubits:
            raise SimulationError(f"qubit index {q} outside register of {state_qubits}")
    if len(set(qubits)) != len(qubits):
        raise SimulationError(f"repeated qubit in {qubits}")


def apply_gate(
    state: StateVector,
    gate: str,
    qubits: tuple[int, ...] | list[int],
    marked: tuple[int, ...] | None = None,
) -> StateVector:
    """Apply one gate and return the new state (inputs are not mutated).

    ``diag_phase`` flips the sign of the listed ``marked`` basis values of the
    sub-register ``qubits``; all other gates ignore ``marked``.
    """
    qubits = tuple(qubits)
    _check_indices(state.num_qubits, qubits)
    amps = state.amps.copy()
    n = state.num_qubits

    if gate in _SINGLE_QUBIT_MATRICES:
        if len(qubits) != 1:
            raise SimulationError(f"{gate} expects 1 qubit, got {len(qubits)}")
        (q,) = qubits
        u = _SINGLE_QUBIT_MATRICES[gate]
        view = amps.reshape(1 << (n - q - 1), 2, 1 << q)
        amps = np.einsum("ab,hbl->hal", u, view).reshape(-1)
    elif gate == "cnot":
        control, target = _two_qubits(gate, qubits)
        idx = np.arange(1 << n)
        sel = np.nonzero(((idx >> control) & 1 == 1) & ((idx >> target) & 1 == 0))[0]
        partner = sel | (1 << target)
        amps[sel], amps[partner] = amps[partner].copy(), amps[sel].copy()
    elif gate == "swap":
        q1, q2 = _two_qubits(gate, qubits)
        idx = np.arange(1 << n)
        sel = np.nonzero(((idx >> q1) & 1 == 1) & ((idx >> q2) & 1 == 0))[0]
        partner = (sel & ~(1 << q1)) | (1 << q2)
        amps[sel], amps[partner] = amps[partner].copy(), amps[sel].copy()
    elif gate == "cz":
        control, target = _two_qubits(gate, qubits)
        idx = np.arange(1 << n)
        both = ((idx >> control) & 1 == 1) & ((idx >> target) & 1 == 1)
        amps[both] *= -1.0
    elif gate == "diag_phase":
        if marked is None:
            raise SimulationError("diag_phase needs marked bitstring values")
        sub_dim = 1 << len(qubits)
        for m in marked:
            if not 0 <= m < sub_dim:
                raise SimulationError(f"marked value {m} outside sub-register")
        idx = np.arange(1 << n)
        sub = np.zeros_like(idx)
        for pos, q in enumerate(qubits):
            sub |= ((idx >> q) & 1) << pos
        flip = np.isin(sub, np.asarray(list(marked), dtype=sub.dtype))
        amps[flip] *= -1.0
    else:
        raise SimulationError(f"unsupported gate {gate!r}")
    return StateVector(n, amps)


def _two_qubits(gate: str, qubits: tuple[int, ...]) -> tuple[int, int]:
    if len(qubits) != 2:
        raise SimulationError(f"{gate} expects 2 qubits, got {len(qubits)}")
    return qubits


@dataclass(frozen=True)
class Gate:
    """One circuit operation; ``marked`` is only used by diag_phase."""

    name: str
    qubits: tuple[int, ...]
    marked: tuple[int, ...] | None = None


@dataclass
class Circuit:
    """An ordered gate list over a fixed register width."""

    num_qubits: int
    gates: list[Gate] = field(default_factory=list)

    def add(self, name: str, qubits, marked=None) -> "Circuit":
        qubits = tuple(qubits)
        _check_indices(self.num_qubits, qubits)
        if name not in UNITARY_GATES and name not in _PSEUDO_OPS:
            raise SimulationError(f"unknown gate {name!r}")
        self.gates.append(Gate(name, qubits, None if marked is None else tuple(marked)))
        return self

    def __len__(self) -> int:
        return len(self.gates)


def run_circuit(circuit: Circuit, state: StateVector | None = None) -> StateVector:
    """Simulate a circuit's unitary gates on a state (default all-zeros).

    Preparation and measurement pseudo-ops are count-only bookkeeping and are
    rejected here; strip them or simulate the unitary core.
    """
    if state is None:
        state = zero_state(circuit.num_qubits)
    if state.num_qubits != circuit.num_qubits:
        raise SimulationError("state and circuit register widths differ")
    for gate in circuit.gates:
        if gate.name in _PSEUDO_OPS:
            raise SimulationError(f"{gate.name} is not simulable; counting only")
        state = apply_gate(state, gate.name, gate.qubits, gate.marked)
    return state


@dataclass
class MeasurementHistogram:
    """Sampled outcome counts; keys are bitstrings, MSB first."""

    counts: dict[str, int]
    shots: int

    def most_common(self) -> str:
        """Highest-count outcome; ties go to the lowest basis value."""
        return min(self.counts, key=lambda k: (-self.counts[k], int(k, 2)))


def measure_all(state: StateVector, shots: int, seed) -> MeasurementHistogram:
    """Sample all qubits ``shots`` times from the state's distribution."""
    if shots <= 0:
        raise SimulationError("shots must be positive")
    probs = state.probabilities()
    total = probs.sum()
    if abs(total - 1.0) > 1e-9:
        raise SimulationError(f"state norm {total} is not 1")
    rng = np.random.default_rng(seed)
    outcomes = rng.choice(state.dim, size=shots, p=probs / total)
    width = state.num_qubits
    counts: Counter[str] = Counter(format(int(o), f"0{width}b") for o in outcomes)
    return MeasurementHistogram(dict(counts), shots)


# --- transpiled gate counting ---------------------------------------------


@lru_cache(maxsize=1)
def load_decompositions(path: str | None = None) -> dict[str, dict[str, int]]:
    """Load the native-gate to basis-gate expansion table."""
    if path is None:
        text = resources.files("qroute").joinpath("data/decompositions.json").read_text()
    else:
        text = Path(path).read_text(encoding="utf-8")
    table = json.loads(text)
    return {k: v for k, v in table.items() if not k.startswith("_")}


def multi_controlled_z_cost(num_controls: int) -> Counter:
    """Basis-gate cost of a phase flip controlled on ``num_controls`` qubits."""
    table = load_decompositions()
    key = f"mcz_{num_controls}"
    if key not in table:
        raise SimulationError(f"no decomposition entry for {key}")
    return Counter(table[key])


def transpile_counts(circuit: Circuit) -> Counter:
    """Count the basis gates needed to realize a circuit.

    Basis gates and the prep/measurement pseudo-ops pass through unchanged;
    controlled-Z and diagonal phase gates expand per the decomposition table.
    A diagonal phase over k marked values costs one multi-controlled Z per
    value plus an X conjugation pair for every zero bit of that value.
    """
    counts: Counter = Counter()
    table = load_decompositions()
    for gate in circuit.gates:
        if gate.name == "diag_phase":
            width = len(gate.qubits)
            mcz = multi_controlled_z_cost(width - 1)
            for value in gate.marked or ():
                zeros = width - int(value).bit_count()
                counts["x"] += 2 * zeros
                counts += mcz
        elif gate.name in table:
            counts += Counter(table[gate.name])
        else:
            raise SimulationError(f"no decomposition rule for gate {gate.name!r}")
    return counts


def gate_counts_to_rows(circuits: dict[str, Counter]) -> list[tuple[str, str, int]]:
    """Flatten per-circuit counts into (circuit_id, gate_name, count) rows."""
    rows = []
    for circuit_id in sorted(circuits):
        counter = circuits[circuit_id]
        for gate_name in BASIS_GATES:
            if counter.get(gate_name, 0):
                rows.append((circuit_id, gate_name, counter[gate_name]))
    return rows
