"""Acceptance criteria 1-7, one test each.

Every test prints (and records for the terminal summary) a single
``[n] PASS|FAIL`` line.  Run alone with::

    pytest tests/test_acceptance.py -v
"""

import itertools
import time
from contextlib import contextmanager

import numpy as np

from conftest import ACCEPTANCE_LINES, random_circuit, random_function, random_state
from djsim.algorithms import (
    Equality,
    compute_m_p,
    run_classical_baseline,
    run_deutsch_jozsa,
    run_generalized,
    run_two_function_extension,
)
from djsim.analysis import fidelity
from djsim.cases import CASES, case_circuit, decode_outcome, run_case
from djsim.noise import NoiseModel, default_noise_model, noisy_sample
from djsim.oracles import FunctionFamily, PromiseClass, build_uf, enumerate_promise_functions
from djsim.sim import Gate, Histogram, apply_gate, sample_shots

C, B = PromiseClass.CONSTANT, PromiseClass.BALANCED


@contextmanager
def criterion(number, title):
    start = time.perf_counter()
    detail = {}
    try:
        yield detail
    except BaseException as exc:
        line = f"[{number}] FAIL {title}: {type(exc).__name__}: {exc}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        raise
    elapsed = time.perf_counter() - start
    extra = "".join(f"; {k}={v}" for k, v in detail.items())
    line = f"[{number}] PASS {title} ({elapsed:.2f}s{extra})"
    ACCEPTANCE_LINES.append(line)
    print(line)


def test_1_classic_dj_determinism():
    with criterion(1, "classic DJ determinism, n=1..3 exhaustive") as d:
        start = time.perf_counter()
        count = 0
        for n in (1, 2, 3):
            for cls in (C, B):
                for f in enumerate_promise_functions(n, cls):
                    _, ledger, hist = run_deutsch_jozsa(f)
                    p0 = hist.get("0" * n)
                    if cls is C:
                        assert p0 >= 1 - 1e-10, (str(f), p0)
                    else:
                        assert p0 <= 1e-10, (str(f), p0)
                    assert ledger.total == 1
                    count += 1
        elapsed = time.perf_counter() - start
        assert count == 4 + 8 + 72
        assert elapsed < 1.0, f"took {elapsed:.3f}s"
        d["functions"] = count


def test_2_generalized_algorithm():
    with criterion(2, "generalized k-function algorithm, k=1..4 exhaustive") as d:
        start = time.perf_counter()
        families = 0
        for k in (1, 2, 3, 4):
            for cls, tables in ((C, ("00", "11")), (B, ("01", "10"))):
                for combo in itertools.product(tables, repeat=k):
                    family = FunctionFamily.from_strings(combo)
                    verdict, ledger, _ = run_generalized(family)
                    _, classical_ledger = run_classical_baseline(family)
                    truth_eq = (Equality.NOT_APPLICABLE if k == 1
                                else Equality.EQUAL if len(set(combo)) == 1 else Equality.UNEQUAL)
                    assert verdict.promise is cls, combo
                    assert verdict.equality is truth_eq, combo
                    assert ledger.total == k and classical_ledger.total == k + 1
                    families += 1
        elapsed = time.perf_counter() - start
        assert families == 2 * (2 + 4 + 8 + 16)
        assert elapsed < 1.0, f"took {elapsed:.3f}s"
        d["families"] = families


def test_3_two_function_extension():
    with criterion(3, "two-function extension, n=2 and n=3 exhaustive") as d:
        start = time.perf_counter()
        for n in (2, 3):
            balanced = enumerate_promise_functions(n, B)
            constant = enumerate_promise_functions(n, C)
            bound = 1 - 2 ** (1 - n)
            worst = 0.0
            pairs = 0
            for f, g in itertools.product(balanced, repeat=2):
                m, p = compute_m_p(f, g)
                assert 2 * m == p, (str(f), str(g))
                verdict, _, hist = run_two_function_extension(f, g)
                zero = sum(v for key, v in hist.entries.items() if key[:n] == "0" * n)
                assert zero <= 1e-10, (str(f), str(g), zero)
                assert abs(verdict.correlated_probability - p / 2 ** n) <= 1e-12
                if f != g:
                    worst = max(worst, verdict.correlated_probability)
                pairs += 1
            assert pairs == len(balanced) ** 2
            for f, g in itertools.product(constant, repeat=2):
                verdict, _, hist = run_two_function_extension(f, g)
                zero = sum(v for key, v in hist.entries.items() if key[:n] == "0" * n)
                assert zero >= 1 - 1e-10
                if f != g:
                    worst = max(worst, verdict.correlated_probability)
            assert worst <= bound + 1e-10
            assert abs(worst - bound) <= 1e-10, (n, worst, bound)
            d[f"worst_n{n}"] = round(worst, 12)
        elapsed = time.perf_counter() - start
        assert elapsed < 30.0, f"took {elapsed:.1f}s"


def test_4_four_case_noiseless():
    with criterion(4, "four-case noiseless reproduction") as d:
        for case_id, case in CASES.items():
            result = run_case(case, NoiseModel.noiseless(3), shots=8192, runs=10, seed=0)
            outcomes = set().union(*(h.entries for h in result.runs))
            assert len(outcomes) == 1, outcomes
            (outcome,) = outcomes
            assert decode_outcome(outcome) == (case.expected_class, case.expected_equality)
            assert abs(fidelity(result.theory, result.theory) - 1.0) <= 1e-12
            for f in result.run_fidelities:
                assert abs(f - 1.0) <= 1e-12
            d[f"case{case_id}"] = outcome


def test_5_noisy_qualitative_reproduction():
    with criterion(5, "noisy four-case reproduction with the shipped calibration") as d:
        start = time.perf_counter()
        model = default_noise_model()
        mean = {}
        for case_id, case in CASES.items():
            result = run_case(case, model, shots=8192, runs=10, seed=0)
            mean[case_id] = result.mean_fidelity
            assert 0.5 < mean[case_id] < 1.0, (case_id, mean[case_id])
        assert mean[3] >= mean[2] and mean[4] >= mean[2], mean
        elapsed = time.perf_counter() - start
        assert elapsed < 60.0, f"took {elapsed:.1f}s"
        d.update({f"F{k}": round(v, 4) for k, v in mean.items()})


def test_6_fidelity_properties():
    with criterion(6, "fidelity metric properties"):
        rng = np.random.default_rng(6)
        for _ in range(200):
            a, b = rng.random(8), rng.random(8)
            p = {format(i, "03b"): v for i, v in enumerate(a / a.sum())}
            q = {format(i, "03b"): v for i, v in enumerate(b / b.sum())}
            assert abs(fidelity(p, p) - 1.0) <= 1e-12
            assert abs(fidelity(p, q) - fidelity(q, p)) <= 1e-14
            assert 0.0 <= fidelity(p, q) <= 1.0
        assert fidelity({"000": 0.5, "001": 0.5}, {"110": 0.25, "111": 0.75}) == 0.0
        spread = {"100": 0.81, "000": 0.07, "101": 0.07, "111": 0.05}
        assert abs(fidelity({"100": 1.0}, spread) - 0.9) <= 1e-12


def test_7_simulator_soundness():
    with criterion(7, "simulator soundness suite") as d:
        rng = np.random.default_rng(7)
        worst = 0.0
        for _ in range(1000):
            circuit = random_circuit(rng, max_qubits=6, max_gates=20)
            assert len(circuit.gates) <= 20 and circuit.num_qubits <= 6
            psi = random_state(rng, circuit.num_qubits)
            worst = max(worst, abs(circuit.run(psi).norm() - 1.0))
        assert worst <= 1e-10, worst
        d["max_norm_drift"] = f"{worst:.1e}"

        for _ in range(50):
            q = int(rng.integers(2, 7))
            psi = random_state(rng, q)
            a, b = (int(v) for v in rng.choice(q, size=2, replace=False))
            arity = int(rng.integers(1, q))
            wires = [int(v) for v in rng.choice(q, size=arity + 1, replace=False)]
            uf = build_uf(random_function(rng, arity), inputs=wires[:-1], output=wires[-1])
            for gate in (Gate("H", (a,)), Gate("X", (a,)), Gate("CNOT", (a, b)), uf):
                twice = apply_gate(apply_gate(psi, gate), gate)
                np.testing.assert_allclose(twice.amplitudes, psi.amplitudes, atol=1e-10)

        theory = Histogram({"000": 0.3, "011": 0.2, "101": 0.4, "111": 0.1})
        assert repr(sample_shots(theory, 8192, 123)).encode() == repr(sample_shots(theory, 8192, 123)).encode()
        circuit = case_circuit(CASES[2])
        model = default_noise_model()
        first = repr(noisy_sample(circuit, model, 8192, 123)).encode()
        assert first == repr(noisy_sample(circuit, model, 8192, 123)).encode()
