"""The two-function hardware experiment: four (promise, equality) cases.

Qubit 0 is the register, qubits 1 and 2 the answer pair.  After the two
controlled oracles, CNOT(1->2) writes f(c) xor g(c) into qubit 2, and H then
X on qubit 1 return it to |0>.  The ideal outcome is therefore
``"<balanced bit> 0 <unequal bit>"``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algorithms import Equality
from .analysis import ChartRow, RunSummary, aggregate_runs, export_chart_data, fidelity
from .errors import InputError
from .noise import NoiseModel, noisy_sample
from .oracles import BooleanFunction, PromiseClass, build_controlled_uf, classify
from .sim import Circuit, Histogram, measure_probabilities

DEFAULT_SHOTS = 8192
DEFAULT_RUNS = 10


@dataclass(frozen=True)
class CaseSpec:
    case_id: int
    f: BooleanFunction
    g: BooleanFunction
    expected_class: PromiseClass
    expected_equality: Equality

    def __post_init__(self) -> None:
        if not classify(self.f) is classify(self.g) is self.expected_class:
            raise InputError(f"case {self.case_id}: functions are not both {self.expected_class}")
        equal = self.f.table == self.g.table
        if equal != (self.expected_equality is Equality.EQUAL):
            raise InputError(f"case {self.case_id}: functions are not {self.expected_equality}")

    @property
    def label(self) -> str:
        return f"{self.expected_class.value.lower()} and {self.expected_equality.value.lower()}"


def _case(case_id, f, g, cls, eq):
    return CaseSpec(case_id, BooleanFunction.from_string(f), BooleanFunction.from_string(g), cls, eq)


CASES: dict[int, CaseSpec] = {
    1: _case(1, "01", "01", PromiseClass.BALANCED, Equality.EQUAL),
    2: _case(2, "01", "10", PromiseClass.BALANCED, Equality.UNEQUAL),
    3: _case(3, "00", "00", PromiseClass.CONSTANT, Equality.EQUAL),
    4: _case(4, "00", "11", PromiseClass.CONSTANT, Equality.UNEQUAL),
}


def get_case(case_id: int) -> CaseSpec:
    try:
        return CASES[case_id]
    except KeyError:
        raise InputError(f"unknown case {case_id!r}; choose from {sorted(CASES)}") from None


def pair_circuit(f: BooleanFunction, g: BooleanFunction) -> Circuit:
    """Three-qubit circuit from |000> with the two-outcome answer decoding."""
    c = Circuit(3)
    c.h(0)
    c.x(1).h(1).cnot(1, 2)  # (|00> - |11>)/sqrt2 on the answer pair
    c.append(build_controlled_uf(f, control=0, target=1, query=0))
    c.append(build_controlled_uf(g, control=0, target=2, query=1))
    c.cnot(1, 2).h(1).x(1)
    c.h(0)
    return c


def case_circuit(case: CaseSpec) -> Circuit:
    return pair_circuit(case.f, case.g)


def decode_outcome(outcome: str) -> tuple[PromiseClass, Equality]:
    if len(outcome) != 3 or set(outcome) - {"0", "1"}:
        raise InputError(f"not a 3-bit outcome: {outcome!r}")
    promise = PromiseClass.BALANCED if outcome[0] == "1" else PromiseClass.CONSTANT
    equality = Equality.UNEQUAL if outcome[2] == "1" else Equality.EQUAL
    return promise, equality


def theoretical_distribution(case: CaseSpec) -> Histogram:
    circuit = case_circuit(case)
    return measure_probabilities(circuit.run(), circuit.measured_qubits)


@dataclass
class CaseResult:
    case: CaseSpec
    theory: Histogram
    runs: list[Histogram]
    run_fidelities: list[float]
    summary: RunSummary | None
    shots: int
    seed: int

    @property
    def mean_fidelity(self) -> float:
        return float(np.mean(self.run_fidelities))

    @property
    def fidelity_std(self) -> float:
        return float(np.std(self.run_fidelities, ddof=1)) if len(self.run_fidelities) > 1 else 0.0

    @property
    def pooled_fidelity(self) -> float:
        """Fidelity of the run-averaged distribution to theory."""
        if self.summary is None:
            return self.run_fidelities[0]
        return fidelity(self.theory, self.summary.mean_histogram())

    def chart_rows(self) -> list[ChartRow]:
        if self.summary is not None:
            summary = self.summary
        else:
            only = self.runs[0].probabilities()
            summary = RunSummary(only, {k: 0.0 for k in only}, 1, self.runs[0].total_shots)
        return export_chart_data(summary, self.theory)


def run_seed(seed: int, case_id: int, run: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([seed, case_id, run])


def run_case(case: CaseSpec, model: NoiseModel, shots: int = DEFAULT_SHOTS,
             runs: int = DEFAULT_RUNS, seed: int = 0) -> CaseResult:
    """``runs`` independent noisy samplings of ``shots`` shots each."""
    if runs < 1:
        raise InputError(f"runs must be >= 1, got {runs}")
    circuit = case_circuit(case)
    theory = measure_probabilities(circuit.run(), circuit.measured_qubits)
    hists = [noisy_sample(circuit, model, shots, run_seed(seed, case.case_id, r)) for r in range(runs)]
    fids = [fidelity(theory, h) for h in hists]
    summary = aggregate_runs(hists) if runs > 1 else None
    return CaseResult(case, theory, hists, fids, summary, shots, seed)
