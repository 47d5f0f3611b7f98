import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from djsim.oracles import BooleanFunction  # noqa: E402
from djsim.sim import Circuit, Gate, StateVector  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


def random_state(rng, num_qubits):
    v = rng.normal(size=2 ** num_qubits) + 1j * rng.normal(size=2 ** num_qubits)
    return StateVector(num_qubits, v / np.linalg.norm(v))


def random_function(rng, arity):
    return BooleanFunction(arity, tuple(int(b) for b in rng.integers(0, 2, size=2 ** arity)))


def random_gate(rng, num_qubits):
    kinds = ["H", "X", "Y", "Z"]
    if num_qubits >= 2:
        kinds += ["CNOT", "CZ", "PermutationOracle", "ControlledBitOracle"]
    kind = kinds[rng.integers(len(kinds))]
    if kind in ("H", "X", "Y", "Z"):
        return Gate(kind, (int(rng.integers(num_qubits)),))
    if kind in ("CNOT", "CZ", "ControlledBitOracle"):
        a, b = rng.choice(num_qubits, size=2, replace=False)
        f = random_function(rng, 1) if kind == "ControlledBitOracle" else None
        return Gate(kind, (a, b), function=f)
    arity = int(rng.integers(1, num_qubits))
    qs = rng.choice(num_qubits, size=arity + 1, replace=False)
    return Gate(kind, tuple(qs), function=random_function(rng, arity))


def random_circuit(rng, max_qubits=6, max_gates=20):
    q = int(rng.integers(1, max_qubits + 1))
    c = Circuit(q)
    for _ in range(int(rng.integers(0, max_gates + 1))):
        c.append(random_gate(rng, q))
    return c


@pytest.fixture
def rng():
    return np.random.default_rng(20180111)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
