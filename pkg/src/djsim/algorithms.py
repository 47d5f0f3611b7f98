"""End-to-end runs of the three query algorithms plus the classical baseline.

Each ``run_*`` builds its circuit, simulates it exactly, reads the decisive
marginals and returns ``(verdict, ledger, histogram)``.  The algorithms are
deterministic, so a decisive probability that is neither ~0 nor ~1 raises
:class:`ConsistencyError` instead of being rounded.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import ConsistencyError, InputError, PromiseViolation
from .oracles import (
    BooleanFunction,
    FunctionFamily,
    PromiseClass,
    build_controlled_uf,
    build_uf,
    classify,
)
from .sim import (
    Circuit,
    Histogram,
    StateVector,
    init_basis_state,
    init_entangled_ancilla,
    measure_probabilities,
)

CERTAINTY_TOL = 1e-10


class Equality(enum.Enum):
    EQUAL = "Equal"
    UNEQUAL = "Unequal"
    NOT_APPLICABLE = "NotApplicable"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Verdict:
    promise: PromiseClass
    equality: Equality
    # Probability of a correlated ancilla outcome, where the algorithm measures one.
    correlated_probability: float | None = None

    def __str__(self) -> str:
        return f"{self.promise}, {self.equality}"


@dataclass
class QueryLedger:
    oracle_calls: Counter = field(default_factory=Counter)

    def record(self, function_index: int) -> None:
        self.oracle_calls[function_index] += 1

    @property
    def total(self) -> int:
        return sum(self.oracle_calls.values())


class RunResult(NamedTuple):
    verdict: Verdict
    ledger: QueryLedger
    histogram: Histogram


def _certain(p: float, what: str) -> bool:
    if p >= 1.0 - CERTAINTY_TOL:
        return True
    if p <= CERTAINTY_TOL:
        return False
    raise ConsistencyError(f"{what} has probability {p!r}, expected 0 or 1")


def _promise_of(functions: list[BooleanFunction]) -> PromiseClass:
    classes = {classify(f) for f in functions}
    if PromiseClass.NEITHER in classes:
        bad = [str(f) for f in functions if classify(f) is PromiseClass.NEITHER]
        raise PromiseViolation(f"functions {bad} are neither constant nor balanced")
    if len(classes) > 1:
        raise PromiseViolation("functions mix constant and balanced")
    return classes.pop()


# --- classic Deutsch-Jozsa -------------------------------------------------

def deutsch_jozsa_circuit(f: BooleanFunction) -> tuple[Circuit, StateVector]:
    """Query register 0..n-1 in |0>, answer qubit n in |1>."""
    n = f.arity
    circuit = Circuit(n + 1, measured_qubits=list(range(n)))
    circuit.h(*range(n + 1))
    circuit.append(build_uf(f, query=0))
    circuit.h(*range(n))
    return circuit, init_basis_state(n + 1, "0" * n + "1")


def run_deutsch_jozsa(f: BooleanFunction) -> RunResult:
    _promise_of([f])
    circuit, psi0 = deutsch_jozsa_circuit(f)
    ledger = QueryLedger()
    final = circuit.run(psi0, ledger)
    hist = measure_probabilities(final, circuit.measured_qubits)
    constant = _certain(hist.get("0" * f.arity), "all-zeros query register")
    promise = PromiseClass.CONSTANT if constant else PromiseClass.BALANCED
    return RunResult(Verdict(promise, Equality.NOT_APPLICABLE), ledger, hist)


# --- k one-bit functions with a GHZ-like ancilla ---------------------------

def _check_one_bit_family(family: FunctionFamily) -> PromiseClass:
    for f in family:
        if f.arity != 1:
            raise InputError(f"expected one-bit functions, got arity {f.arity}")
    return _promise_of(list(family))


def generalized_circuit(family: FunctionFamily) -> tuple[Circuit, StateVector]:
    """Register qubit 0, ancilla i+1 receives f_i(register)."""
    k = len(family)
    circuit = Circuit(k + 1)
    circuit.h(0)
    for i, f in enumerate(family):
        circuit.append(build_controlled_uf(f, control=0, target=i + 1, query=i))
    circuit.h(0)
    psi0 = init_basis_state(1, "0").tensor(init_entangled_ancilla(k))
    return circuit, psi0


def run_generalized(family: FunctionFamily) -> RunResult:
    _check_one_bit_family(family)
    k = len(family)
    circuit, psi0 = generalized_circuit(family)
    ledger = QueryLedger()
    final = circuit.run(psi0, ledger)
    hist = measure_probabilities(final, circuit.measured_qubits)

    register = measure_probabilities(final, [0])
    constant = _certain(register.get("0"), "register qubit 0")
    ancillas = measure_probabilities(final, range(1, k + 1))
    correlated = ancillas.get("0" * k) + ancillas.get("1" * k)
    if k == 1:
        equality = Equality.NOT_APPLICABLE
    else:
        equality = Equality.EQUAL if _certain(correlated, "correlated ancillas") else Equality.UNEQUAL
    promise = PromiseClass.CONSTANT if constant else PromiseClass.BALANCED
    return RunResult(Verdict(promise, equality, correlated), ledger, hist)


def run_classical_baseline(family: FunctionFamily) -> tuple[Verdict, QueryLedger]:
    """f_1(0), f_1(1), then f_i(0) for the remaining functions: k + 1 lookups."""
    _check_one_bit_family(family)
    ledger = QueryLedger()

    def query(i: int, x: int) -> int:
        ledger.record(i)
        return family[i](x)

    first0, first1 = query(0, 0), query(0, 1)
    promise = PromiseClass.CONSTANT if first0 == first1 else PromiseClass.BALANCED
    # Under the shared promise a one-bit function is fixed by its value at 0.
    others = [query(i, 0) for i in range(1, len(family))]
    if not others:
        equality = Equality.NOT_APPLICABLE
    else:
        equality = Equality.EQUAL if all(v == first0 for v in others) else Equality.UNEQUAL
    return Verdict(promise, equality), ledger


# --- two n-bit functions with a two-qubit ancilla ---------------------------

def compute_m_p(f: BooleanFunction, g: BooleanFunction) -> tuple[int, int]:
    """p = |{x: f(x) = g(x)}|, m = |{x: f(x) = g(x) = 0}|."""
    if f.arity != g.arity:
        raise InputError(f"arity mismatch: {f.arity} vs {g.arity}")
    p = sum(a == b for a, b in zip(f.table, g.table))
    m = sum(a == b == 0 for a, b in zip(f.table, g.table))
    return m, p


def zero_register_probability(f: BooleanFunction, g: BooleanFunction) -> float:
    """All-zeros register probability of the two-function circuit, from set counts.

    On the all-zeros register branch the ancilla is ``(2m - p)|E1>`` plus
    ``(2|C| - 2m - 2^n + p)|E2>`` over ``2^n``, with |E1> = (|00>-|11>)/sqrt2,
    |E2> = (|01>-|10>)/sqrt2 and C = {x: f(x)=0}.  For balanced f the second
    coefficient is ``p - 2m`` and the probability is ``2(2m-p)^2 / 4^n``.
    """
    m, p = compute_m_p(f, g)
    size = 1 << f.arity
    c = size - f.ones
    e1 = 2 * m - p
    e2 = 2 * c - 2 * m - size + p
    return (e1 * e1 + e2 * e2) / (size * size)


def extension_circuit(f: BooleanFunction, g: BooleanFunction) -> tuple[Circuit, StateVector]:
    """Register 0..n-1, ancilla n receives f(x), ancilla n+1 receives g(x)."""
    n = f.arity
    reg = list(range(n))
    circuit = Circuit(n + 2)
    circuit.h(*reg)
    circuit.append(build_uf(f, inputs=reg, output=n, query=0))
    circuit.append(build_uf(g, inputs=reg, output=n + 1, query=1))
    circuit.h(*reg)
    psi0 = init_basis_state(n, "0" * n).tensor(init_entangled_ancilla(2))
    return circuit, psi0


def run_two_function_extension(f: BooleanFunction, g: BooleanFunction) -> RunResult:
    """Decide constant/balanced for a pair (f, g) of n-bit functions.

    The equality verdict read from the exact distribution is sound, but a
    single shot of an unequal pair still lands on a correlated ancilla
    outcome with probability ``verdict.correlated_probability`` = p / 2^n.
    """
    if f.arity != g.arity:
        raise InputError(f"arity mismatch: {f.arity} vs {g.arity}")
    _promise_of([f, g])
    n = f.arity
    circuit, psi0 = extension_circuit(f, g)
    ledger = QueryLedger()
    final = circuit.run(psi0, ledger)
    hist = measure_probabilities(final, circuit.measured_qubits)

    register = measure_probabilities(final, range(n))
    constant = _certain(register.get("0" * n), "all-zeros register")
    ancillas = measure_probabilities(final, [n, n + 1])
    correlated = ancillas.get("00") + ancillas.get("11")
    equality = Equality.EQUAL if correlated >= 1.0 - CERTAINTY_TOL else Equality.UNEQUAL
    promise = PromiseClass.CONSTANT if constant else PromiseClass.BALANCED
    return RunResult(Verdict(promise, equality, correlated), ledger, hist)
