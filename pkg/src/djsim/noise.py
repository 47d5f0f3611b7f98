"""Stochastic Pauli + readout noise for circuit sampling.

Channel mapping for a per-qubit calibration table:

* gate error -> after each single-qubit gate, with that probability, a
  uniformly random X, Y or Z on the gate's qubit;
* multi-qubit gate error -> after each multi-qubit gate, a uniformly random
  non-identity Pauli string on the touched qubits;
* readout error -> symmetric classical flip of each measured bit.

T1/T2 are parsed and kept but never simulated.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ConfigurationError, InputError
from .sim import (
    Circuit,
    Gate,
    Histogram,
    StateVector,
    apply_gate,
    bitstring,
    init_basis_state,
    measure_probabilities,
    sample_shots,
)

NOISE_FIELDS = ("qubit", "gate_error", "readout_error", "multiqubit_gate_error", "t1_us", "t2_us")
_REQUIRED = ("gate_error", "readout_error")
_RATES = ("gate_error", "readout_error", "multiqubit_gate_error")
_ABSENT = ("", "-", "—")
_PAULIS = ("I", "X", "Y", "Z")

DEFAULT_NOISE_FILE = "ibmqx4_table1.csv"


@dataclass(frozen=True)
class QubitNoise:
    gate_error: float
    readout_error: float
    multiqubit_gate_error: float | None = None
    t1_us: float | None = None
    t2_us: float | None = None

    def __post_init__(self) -> None:
        for name in _RATES:
            value = getattr(self, name)
            if value is not None and not 0.0 <= value <= 1.0:
                raise ConfigurationError(f"{name}={value} is not a probability")
        for name in ("t1_us", "t2_us"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ConfigurationError(f"{name}={value} must be positive")


@dataclass(frozen=True)
class NoiseModel:
    per_qubit: tuple[QubitNoise, ...]
    enabled: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "per_qubit", tuple(self.per_qubit))

    @classmethod
    def noiseless(cls, num_qubits: int) -> "NoiseModel":
        return cls(tuple(QubitNoise(0.0, 0.0, 0.0) for _ in range(num_qubits)))

    def __len__(self) -> int:
        return len(self.per_qubit)

    def scaled(self, factor: float) -> "NoiseModel":
        """Every error rate multiplied by ``factor`` (capped at 1)."""
        def scale(v):
            return None if v is None else min(1.0, v * factor)
        return NoiseModel(
            tuple(replace(q, **{k: scale(getattr(q, k)) for k in _RATES}) for q in self.per_qubit),
            self.enabled,
        )

    def gate_rate(self, qubits: tuple[int, ...]) -> float:
        """Depolarizing probability after a gate touching ``qubits``."""
        self.require(qubits)
        if len(qubits) == 1:
            return self.per_qubit[qubits[0]].gate_error
        rates = [self.per_qubit[q].multiqubit_gate_error for q in qubits]
        rates = [r for r in rates if r is not None]
        if not rates:
            raise ConfigurationError(f"no multiqubit_gate_error for any of qubits {list(qubits)}")
        return max(rates)

    def readout_rate(self, qubit: int) -> float:
        self.require((qubit,))
        return self.per_qubit[qubit].readout_error

    def require(self, qubits) -> None:
        missing = [q for q in qubits if q >= len(self.per_qubit)]
        if missing:
            raise ConfigurationError(f"noise model has no parameters for qubits {missing}")


def physical_gates(gate: Gate) -> list[Gate]:
    """Elementary gates carrying the noise of ``gate``.

    One-input oracles compile to at most a CNOT and an X; wider oracles stay
    a single multi-qubit operation.
    """
    if not gate.is_oracle or gate.function.arity != 1:
        return [gate]
    control, target = gate.targets
    f0, f1 = gate.function.table
    ops = []
    if f0 != f1:
        ops.append(Gate("CNOT", (control, target)))
    if f0 == 1:
        ops.append(Gate("X", (target,)))
    return ops


def _apply_pauli_string(state: StateVector, qubits: tuple[int, ...], code: int) -> StateVector:
    # Base-4 digits of ``code`` select I/X/Y/Z per qubit, first qubit most significant.
    for pos, q in enumerate(qubits):
        digit = (code >> (2 * (len(qubits) - 1 - pos))) & 3
        if digit:
            state = apply_gate(state, Gate(_PAULIS[digit], (q,)))
    return state


def _is_silent(model: NoiseModel, circuit: Circuit) -> bool:
    if not model.enabled:
        return True
    model.require(range(circuit.num_qubits))
    return all(
        q.gate_error == 0 and q.readout_error == 0 and not q.multiqubit_gate_error
        for q in model.per_qubit[: circuit.num_qubits]
    )


def noisy_sample(circuit: Circuit, model: NoiseModel, shots: int, seed,
                 initial_state: StateVector | None = None) -> Histogram:
    """Sample ``shots`` noisy trajectories of ``circuit``; deterministic per seed.

    Error events are drawn for every shot up front, then shots sharing an
    error pattern are simulated once and their outcomes drawn from that
    trajectory's exact distribution.  This has the same law as simulating
    each shot separately.
    """
    if shots < 1:
        raise InputError(f"shots must be >= 1, got {shots}")
    if initial_state is None:
        initial_state = init_basis_state(circuit.num_qubits, "0" * circuit.num_qubits)
    measured = list(circuit.measured_qubits)

    if _is_silent(model, circuit):
        ideal = measure_probabilities(circuit.run(initial_state), measured)
        return sample_shots(ideal, shots, seed)

    rng = np.random.default_rng(seed)
    ops = [op for gate in circuit.gates for op in physical_gates(gate)]
    rates = [model.gate_rate(op.targets) for op in ops]
    patterns = np.zeros((shots, len(ops)), dtype=np.int64)
    for j, (op, rate) in enumerate(zip(ops, rates)):
        if rate > 0:
            hit = rng.random(shots) < rate
            pauli = rng.integers(1, 4 ** len(op.targets), size=shots)
            patterns[:, j] = np.where(hit, pauli, 0)

    m = len(measured)
    outcomes = np.empty(shots, dtype=np.int64)
    unique, inverse = np.unique(patterns, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    for u, pattern in enumerate(unique):
        state = initial_state
        for op, code in zip(ops, pattern):
            state = apply_gate(state, op)
            if code:
                state = _apply_pauli_string(state, op.targets, int(code))
        probs = measure_probabilities(state, measured).completed()
        p = np.fromiter(probs.values(), dtype=float, count=1 << m)
        members = np.flatnonzero(inverse == u)
        outcomes[members] = rng.choice(1 << m, size=members.size, p=p / p.sum())

    for pos, q in enumerate(measured):
        flips = rng.random(shots) < model.readout_rate(q)
        outcomes ^= flips.astype(np.int64) << (m - 1 - pos)

    counts = np.bincount(outcomes, minlength=1 << m)
    return Histogram({bitstring(i, m): int(c) for i, c in enumerate(counts) if c}, total_shots=shots)


# --- noise configuration file ------------------------------------------------

def _parse_value(raw: str, name: str, where: str) -> float | None:
    raw = raw.strip()
    if raw in _ABSENT:
        if name in _REQUIRED:
            raise ConfigurationError(f"{where}: field {name} is required")
        return None
    try:
        return float(raw)
    except ValueError:
        raise ConfigurationError(f"{where}: field {name}: not a number: {raw!r}") from None


def parse_noise_text(text: str, source: str = "<noise>") -> NoiseModel:
    """Parse comma-separated per-qubit records (``#`` starts a comment line).

    The first record is the header and must name ``qubit``, ``gate_error``
    and ``readout_error``; ``multiqubit_gate_error``, ``t1_us`` and ``t2_us``
    are optional columns, and an empty cell or ``-`` marks a missing value.
    Qubit labels are ``Q<k>`` or ``<k>`` and must cover 0..n-1 exactly once.
    """
    records = [(no, line) for no, line in enumerate(text.splitlines(), start=1)
               if line.strip() and not line.lstrip().startswith("#")]
    if not records:
        raise ConfigurationError(f"{source}: no records")
    header_no, header_line = records[0]
    header = [h.strip() for h in next(csv.reader([header_line]))]
    unknown = set(header) - set(NOISE_FIELDS)
    if unknown:
        raise ConfigurationError(f"{source}:{header_no}: unknown fields {sorted(unknown)}")
    for name in ("qubit",) + _REQUIRED:
        if name not in header:
            raise ConfigurationError(f"{source}:{header_no}: missing column {name}")
    if len(records) == 1:
        raise ConfigurationError(f"{source}: header but no qubit records")

    qubits: dict[int, QubitNoise] = {}
    for no, line in records[1:]:
        where = f"{source}:{no}"
        cells = next(csv.reader([line]))
        if len(cells) != len(header):
            raise ConfigurationError(f"{where}: expected {len(header)} fields, got {len(cells)}")
        row = dict(zip(header, cells))
        label = row["qubit"].strip()
        digits = label[1:] if label[:1] in ("Q", "q") else label
        if not digits.isdigit():
            raise ConfigurationError(f"{where}: field qubit: bad label {label!r}")
        index = int(digits)
        if index in qubits:
            raise ConfigurationError(f"{where}: field qubit: duplicate {label!r}")
        values = {k: _parse_value(row[k], k, where) for k in header if k != "qubit"}
        try:
            qubits[index] = QubitNoise(**values)
        except ConfigurationError as exc:
            raise ConfigurationError(f"{where}: field {exc}") from None
    if sorted(qubits) != list(range(len(qubits))):
        raise ConfigurationError(f"{source}: qubits {sorted(qubits)} are not 0..{len(qubits) - 1}")
    return NoiseModel(tuple(qubits[i] for i in range(len(qubits))))


def parse_noise_file(path: str | Path) -> NoiseModel:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigurationError(f"cannot read noise file {path}: {exc}") from None
    return parse_noise_text(text, str(path))


def format_noise_model(model: NoiseModel) -> str:
    def cell(v):
        return "-" if v is None else repr(v)
    lines = [",".join(NOISE_FIELDS)]
    for i, q in enumerate(model.per_qubit):
        lines.append(",".join([f"Q{i}"] + [cell(getattr(q, k)) for k in NOISE_FIELDS[1:]]))
    return "\n".join(lines) + "\n"


def default_noise_text() -> str:
    return resources.files("djsim").joinpath("data").joinpath(DEFAULT_NOISE_FILE).read_text()


def default_noise_model() -> NoiseModel:
    return parse_noise_text(default_noise_text(), DEFAULT_NOISE_FILE)
