"""Dense state-vector simulator.

Bit order: qubit 0 is the most significant bit of a basis index, so the
label ``"q0 q1 q2"`` reads left to right exactly as a ket ``|q0 q1 q2>``.
Internally the amplitude array is viewed as a rank-``q`` tensor of shape
``(2,) * q`` whose axis ``k`` is qubit ``k``; gates act on axis slices and
never build ``2^q x 2^q`` matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError

MAX_QUBITS = 24
NORM_TOL = 1e-10
# Marginal probabilities below this are float residue of exact cancellations.
PROB_FLOOR = 1e-15

SINGLE_QUBIT_KINDS = ("H", "X", "Y", "Z")
TWO_QUBIT_KINDS = ("CNOT", "CZ")
ORACLE_KINDS = ("PermutationOracle", "ControlledBitOracle")
GATE_KINDS = SINGLE_QUBIT_KINDS + TWO_QUBIT_KINDS + ORACLE_KINDS

_SQRT_HALF = 1.0 / np.sqrt(2.0)


def _check_num_qubits(num_qubits: int) -> None:
    if not isinstance(num_qubits, (int, np.integer)) or num_qubits < 1:
        raise InputError(f"num_qubits must be a positive integer, got {num_qubits!r}")
    if num_qubits > MAX_QUBITS:
        raise InputError(f"num_qubits={num_qubits} exceeds the limit of {MAX_QUBITS}")


def _parse_bits(bits: str | Sequence[int]) -> list[int]:
    out = [int(b) for b in bits]
    if any(b not in (0, 1) for b in out):
        raise InputError(f"not a bit sequence: {bits!r}")
    return out


def bitstring(index: int, width: int) -> str:
    return format(index, f"0{width}b")


@dataclass
class StateVector:
    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        _check_num_qubits(self.num_qubits)
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (1 << self.num_qubits,):
            raise InputError(
                f"expected {1 << self.num_qubits} amplitudes for {self.num_qubits} qubits, "
                f"got shape {self.amplitudes.shape}"
            )

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def copy(self) -> "StateVector":
        return StateVector(self.num_qubits, self.amplitudes.copy())

    def tensor(self, other: "StateVector") -> "StateVector":
        """``self ⊗ other``; the qubits of ``other`` follow those of ``self``."""
        return StateVector(
            self.num_qubits + other.num_qubits, np.kron(self.amplitudes, other.amplitudes)
        )

    def overlap(self, other: "StateVector") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def equals_up_to_phase(self, other: "StateVector", atol: float = NORM_TOL) -> bool:
        if self.num_qubits != other.num_qubits:
            return False
        return abs(abs(self.overlap(other)) - 1.0) <= atol


def init_basis_state(num_qubits: int, bits: str | Sequence[int]) -> StateVector:
    _check_num_qubits(num_qubits)
    parsed = _parse_bits(bits)
    if len(parsed) != num_qubits:
        raise InputError(f"bitstring of length {len(parsed)} for {num_qubits} qubits")
    amps = np.zeros(1 << num_qubits, dtype=complex)
    amps[int("".join(map(str, parsed)), 2)] = 1.0
    return StateVector(num_qubits, amps)


def init_entangled_ancilla(n: int) -> StateVector:
    """(|0...0> - |1...1>)/sqrt(2) on ``n`` qubits."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InputError(f"ancilla register needs n >= 1 qubits, got {n!r}")
    _check_num_qubits(n)
    amps = np.zeros(1 << n, dtype=complex)
    amps[0] = _SQRT_HALF
    amps[-1] -= _SQRT_HALF
    return StateVector(n, amps)


@dataclass(frozen=True)
class Gate:
    """A gate on explicit qubit indices.

    Oracle kinds carry a truth-table ``function`` (anything exposing
    ``arity`` and ``table``).  For ``PermutationOracle`` the targets are the
    ``arity`` input qubits followed by the output qubit; for
    ``ControlledBitOracle`` they are ``(control, target)``.  ``query`` tags
    the gate as an oracle call on the function with that index.
    """

    kind: str
    targets: tuple[int, ...]
    function: object = None
    query: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        if self.kind not in GATE_KINDS:
            raise InputError(f"unknown gate kind {self.kind!r}")
        if len(set(self.targets)) != len(self.targets):
            raise InputError(f"repeated target in {self.targets}")
        if any(t < 0 for t in self.targets):
            raise InputError(f"negative target in {self.targets}")
        if self.kind in SINGLE_QUBIT_KINDS:
            expected = 1
        elif self.kind in TWO_QUBIT_KINDS:
            expected = 2
        else:
            if self.function is None:
                raise InputError(f"{self.kind} needs a function payload")
            arity = self.function.arity
            if self.kind == "ControlledBitOracle" and arity != 1:
                raise InputError(f"ControlledBitOracle needs an arity-1 function, got {arity}")
            expected = arity + 1
        if len(self.targets) != expected:
            raise InputError(f"{self.kind} takes {expected} targets, got {len(self.targets)}")

    @property
    def is_oracle(self) -> bool:
        return self.kind in ORACLE_KINDS

    def check_fits(self, num_qubits: int) -> None:
        bad = [t for t in self.targets if t >= num_qubits]
        if bad:
            raise InputError(f"{self.kind} targets {bad} out of range for {num_qubits} qubits")


def _index(num_qubits: int, fixed: dict[int, int]) -> tuple:
    sl: list = [slice(None)] * num_qubits
    for axis, value in fixed.items():
        sl[axis] = value
    return tuple(sl)


@lru_cache(maxsize=256)
def _oracle_source(table: tuple[int, ...], inputs: tuple[int, ...], output: int, num_qubits: int) -> np.ndarray:
    # |x>|y> -> |x>|y ^ f(x)> is an involution, so source and destination maps coincide.
    idx = np.arange(1 << num_qubits, dtype=np.int64)
    x = np.zeros_like(idx)
    for q in inputs:
        x = (x << 1) | ((idx >> (num_qubits - 1 - q)) & 1)
    fx = np.asarray(table, dtype=np.int64)[x]
    return idx ^ (fx << (num_qubits - 1 - output))


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Return ``gate`` applied to ``state``; the input is left untouched."""
    q = state.num_qubits
    gate.check_fits(q)
    if gate.is_oracle:
        inputs, output = gate.targets[:-1], gate.targets[-1]
        src = _oracle_source(tuple(gate.function.table), inputs, output, q)
        return StateVector(q, state.amplitudes[src])

    psi = state.amplitudes.reshape((2,) * q).copy()
    if gate.kind in SINGLE_QUBIT_KINDS:
        (t,) = gate.targets
        i0, i1 = _index(q, {t: 0}), _index(q, {t: 1})
        a0, a1 = psi[i0].copy(), psi[i1].copy()
        if gate.kind == "H":
            psi[i0], psi[i1] = (a0 + a1) * _SQRT_HALF, (a0 - a1) * _SQRT_HALF
        elif gate.kind == "X":
            psi[i0], psi[i1] = a1, a0
        elif gate.kind == "Y":
            psi[i0], psi[i1] = -1j * a1, 1j * a0
        else:
            psi[i1] = -a1
    else:
        c, t = gate.targets
        i10 = _index(q, {c: 1, t: 0})
        i11 = _index(q, {c: 1, t: 1})
        if gate.kind == "CNOT":
            psi[i10], psi[i11] = psi[i11].copy(), psi[i10].copy()
        else:
            psi[i11] = -psi[i11]
    return StateVector(q, psi.reshape(-1))


def gate_matrix(gate: Gate, num_qubits: int) -> np.ndarray:
    """Dense unitary of ``gate`` on ``num_qubits`` qubits (columns = images of basis states)."""
    dim = 1 << num_qubits
    cols = [apply_gate(StateVector(num_qubits, np.eye(dim, dtype=complex)[j]), gate).amplitudes
            for j in range(dim)]
    return np.column_stack(cols)


@dataclass
class Circuit:
    num_qubits: int
    gates: list[Gate] = field(default_factory=list)
    measured_qubits: list[int] | None = None

    def __post_init__(self) -> None:
        _check_num_qubits(self.num_qubits)
        for g in self.gates:
            g.check_fits(self.num_qubits)
        if self.measured_qubits is None:
            self.measured_qubits = list(range(self.num_qubits))
        self.measure(*self.measured_qubits)

    def append(self, gate: Gate) -> "Circuit":
        gate.check_fits(self.num_qubits)
        self.gates.append(gate)
        return self

    def h(self, *qubits: int) -> "Circuit":
        for q in qubits:
            self.append(Gate("H", (q,)))
        return self

    def x(self, *qubits: int) -> "Circuit":
        for q in qubits:
            self.append(Gate("X", (q,)))
        return self

    def z(self, *qubits: int) -> "Circuit":
        for q in qubits:
            self.append(Gate("Z", (q,)))
        return self

    def cnot(self, control: int, target: int) -> "Circuit":
        return self.append(Gate("CNOT", (control, target)))

    def cz(self, a: int, b: int) -> "Circuit":
        return self.append(Gate("CZ", (a, b)))

    def measure(self, *qubits: int) -> "Circuit":
        qs = [int(q) for q in qubits]
        if not qs or len(set(qs)) != len(qs) or any(not 0 <= q < self.num_qubits for q in qs):
            raise InputError(f"invalid measured qubits {qs} for {self.num_qubits} qubits")
        self.measured_qubits = qs
        return self

    def run(self, state: StateVector | None = None, ledger=None) -> StateVector:
        """Apply every gate in order.  Oracle gates are reported to ``ledger.record``."""
        if state is None:
            state = init_basis_state(self.num_qubits, "0" * self.num_qubits)
        if state.num_qubits != self.num_qubits:
            raise InputError(f"{state.num_qubits}-qubit state for a {self.num_qubits}-qubit circuit")
        for gate in self.gates:
            state = apply_gate(state, gate)
            if ledger is not None and gate.query is not None:
                ledger.record(gate.query)
        return state


@dataclass
class Histogram:
    """Outcome bitstring -> probability (``total_shots == 0``) or count."""

    entries: dict[str, float]
    total_shots: int = 0

    def __post_init__(self) -> None:
        if self.total_shots < 0:
            raise InputError("total_shots must be >= 0")
        widths = {len(k) for k in self.entries}
        if len(widths) > 1:
            raise InputError(f"outcome labels of mixed widths: {sorted(widths)}")
        if any(v < 0 for v in self.entries.values()):
            raise InputError("negative histogram entry")

    @property
    def is_exact(self) -> bool:
        return self.total_shots == 0

    @property
    def num_bits(self) -> int:
        return len(next(iter(self.entries))) if self.entries else 0

    def get(self, outcome: str) -> float:
        return self.entries.get(outcome, 0)

    def probabilities(self) -> dict[str, float]:
        if self.is_exact:
            return dict(self.entries)
        return {k: v / self.total_shots for k, v in self.entries.items()}

    def probability(self, outcome: str) -> float:
        return self.probabilities().get(outcome, 0.0)

    def completed(self) -> dict[str, float]:
        """Probabilities over every outcome of ``num_bits`` bits, lexicographic."""
        p = self.probabilities()
        return {bitstring(i, self.num_bits): p.get(bitstring(i, self.num_bits), 0.0)
                for i in range(1 << self.num_bits)}

    def marginal(self, positions: Iterable[int]) -> "Histogram":
        """Keep only the bits at ``positions`` (indices into the outcome label)."""
        positions = list(positions)
        out: dict[str, float] = {}
        for key, value in self.entries.items():
            sub = "".join(key[i] for i in positions)
            out[sub] = out.get(sub, 0) + value
        return Histogram(out, self.total_shots)


def measure_probabilities(state: StateVector, qubits: Sequence[int]) -> Histogram:
    qubits = [int(q) for q in qubits]
    if not qubits:
        raise InputError("no qubits to measure")
    q = state.num_qubits
    if len(set(qubits)) != len(qubits) or any(not 0 <= k < q for k in qubits):
        raise InputError(f"invalid qubit list {qubits} for {q} qubits")
    probs = state.probabilities().reshape((2,) * q)
    rest = tuple(k for k in range(q) if k not in qubits)
    marg = probs.sum(axis=rest) if rest else probs
    # Surviving axes are in ascending qubit order; reorder to the requested order.
    kept = sorted(qubits)
    marg = np.transpose(marg, [kept.index(k) for k in qubits]).reshape(-1)
    m = len(qubits)
    return Histogram({bitstring(i, m): float(p) for i, p in enumerate(marg) if p > PROB_FLOOR})


def sample_shots(hist: Histogram, shots: int, seed: int | np.random.SeedSequence) -> Histogram:
    """Multinomial sample of ``shots`` outcomes from ``hist``; reproducible per seed."""
    if shots < 1:
        raise InputError(f"shots must be >= 1, got {shots}")
    probs = hist.probabilities()
    if not probs:
        raise InputError("cannot sample from an empty distribution")
    keys = sorted(probs)
    p = np.array([probs[k] for k in keys], dtype=float)
    counts = np.random.default_rng(seed).multinomial(shots, p / p.sum())
    return Histogram({k: int(c) for k, c in zip(keys, counts) if c}, total_shots=shots)
