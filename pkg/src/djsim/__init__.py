"""State-vector simulation of entanglement-assisted Deutsch-Jozsa-type algorithms."""

from .algorithms import (
    Equality,
    QueryLedger,
    RunResult,
    Verdict,
    compute_m_p,
    run_classical_baseline,
    run_deutsch_jozsa,
    run_generalized,
    run_two_function_extension,
    zero_register_probability,
)
from .analysis import RunSummary, aggregate_runs, export_chart_data, fidelity
from .errors import (
    ConfigurationError,
    ConsistencyError,
    DJSimError,
    InputError,
    PromiseViolation,
)
from .noise import NoiseModel, QubitNoise, default_noise_model, noisy_sample, parse_noise_file
from .oracles import (
    BooleanFunction,
    FunctionFamily,
    PromiseClass,
    build_controlled_uf,
    build_uf,
    classify,
    enumerate_promise_functions,
)
from .sim import (
    Circuit,
    Gate,
    Histogram,
    StateVector,
    apply_gate,
    init_basis_state,
    init_entangled_ancilla,
    measure_probabilities,
    sample_shots,
)

__version__ = "0.1.0"
