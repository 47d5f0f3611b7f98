"""Command-line entry point: ``djsim {dj,gen,ext,case,noise}``.

Exit codes: 0 ok, 2 usage, 3 promise violation, 4 configuration.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .algorithms import (
    compute_m_p,
    run_classical_baseline,
    run_deutsch_jozsa,
    run_generalized,
    run_two_function_extension,
)
from .analysis import format_chart_csv
from .cases import DEFAULT_RUNS, DEFAULT_SHOTS, CaseResult, decode_outcome, get_case, run_case
from .errors import ConfigurationError, InputError, PromiseViolation
from .noise import (
    DEFAULT_NOISE_FILE,
    NoiseModel,
    default_noise_model,
    format_noise_model,
    parse_noise_file,
)
from .oracles import BooleanFunction, FunctionFamily
from .sim import Histogram

EXIT_OK, EXIT_USAGE, EXIT_PROMISE, EXIT_CONFIG = 0, 2, 3, 4

log = logging.getLogger("djsim")


def _queries(n: int) -> str:
    return f"{n} query" if n == 1 else f"{n} queries"


def _format_distribution(hist: Histogram) -> str:
    return "\n".join(f"  {k}  {v:.6f}" for k, v in sorted(hist.probabilities().items()))


def cmd_dj(args) -> int:
    f = BooleanFunction.from_string(args.table)
    verdict, ledger, hist = run_deutsch_jozsa(f)
    print(f"{verdict.promise}, {_queries(ledger.total)}")
    print(f"query-register distribution (n={f.arity}):")
    print(_format_distribution(hist))
    return EXIT_OK


def cmd_generalized(args) -> int:
    for t in args.tables:
        if len(t) != 2:
            raise InputError(f"one-bit truth tables have 2 characters, got {t!r}")
    family = FunctionFamily.from_strings(args.tables)
    verdict, ledger, hist = run_generalized(family)
    classical, classical_ledger = run_classical_baseline(family)
    print(f"{verdict}; quantum {ledger.total} vs classical {_queries(classical_ledger.total)}")
    if (classical.promise, classical.equality) != (verdict.promise, verdict.equality):
        log.warning("classical baseline disagrees: %s", classical)
    print("register + ancilla distribution:")
    print(_format_distribution(hist))
    return EXIT_OK


def cmd_extension(args) -> int:
    f, g = BooleanFunction.from_string(args.f), BooleanFunction.from_string(args.g)
    verdict, ledger, _ = run_two_function_extension(f, g)
    m, p = compute_m_p(f, g)
    print(f"{verdict}; {_queries(ledger.total)}")
    print(f"correlated-ancilla probability {verdict.correlated_probability:.6f} (m={m}, p={p})")
    return EXIT_OK


def _load_noise(spec: str) -> tuple[NoiseModel, str]:
    if spec == "off":
        return NoiseModel.noiseless(3), "off"
    if spec == "default":
        return default_noise_model(), f"default ({DEFAULT_NOISE_FILE})"
    return parse_noise_file(spec), spec


def _case_report(result: CaseResult, noise_label: str) -> str:
    case = result.case
    (ideal, _), = result.theory.probabilities().items()
    promise, equality = decode_outcome(ideal)
    fids = ", ".join(f"{x:.6f}" for x in result.run_fidelities)
    lines = [
        f"case {case.case_id}: {case.label}",
        f"f = {case.f}, g = {case.g}",
        f"shots per run: {result.shots}",
        f"runs: {len(result.runs)}",
        f"seed: {result.seed}",
        f"noise: {noise_label}",
        f"ideal outcome: {ideal} -> {promise}, {equality}",
        f"expected: {case.expected_class}, {case.expected_equality}",
        f"fidelity per run: {fids}",
        f"mean fidelity: {result.mean_fidelity:.6f} +/- {result.fidelity_std:.6f}",
        f"fidelity of mean distribution: {result.pooled_fidelity:.6f}",
    ]
    return "\n".join(lines) + "\n"


def cmd_case(args) -> int:
    if args.shots < 1 or args.runs < 1:
        raise InputError("--shots and --runs must be >= 1")
    model, noise_label = _load_noise(args.noise)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for case_id in args.case_ids:
        case = get_case(case_id)
        result = run_case(case, model, shots=args.shots, runs=args.runs, seed=args.seed)
        report = _case_report(result, noise_label)
        (out / f"case{case_id}_chart.csv").write_text(format_chart_csv(result.chart_rows()))
        (out / f"case{case_id}_summary.txt").write_text(report)
        print(report)
    return EXIT_OK


def cmd_noise(args) -> int:
    model, _ = _load_noise(args.file)
    sys.stdout.write(format_noise_model(model))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="djsim", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dj", help="classic Deutsch-Jozsa on one n-bit truth table")
    p.add_argument("table", help='truth table, e.g. "0110"')
    p.set_defaults(func=cmd_dj)

    p = sub.add_parser("gen", help="k one-bit functions with an entangled ancilla register")
    p.add_argument("tables", nargs="+", help='one-bit truth tables, e.g. 01 10')
    p.set_defaults(func=cmd_generalized)

    p = sub.add_parser("ext", help="two n-bit functions with a two-qubit entangled ancilla")
    p.add_argument("f")
    p.add_argument("g")
    p.set_defaults(func=cmd_extension)

    p = sub.add_parser("case", help="noisy reproduction of the four hardware cases")
    p.add_argument("case_ids", nargs="+", type=int, choices=range(1, 5), metavar="CASE",
                   help="case number(s), 1-4")
    p.add_argument("--shots", type=int, default=DEFAULT_SHOTS)
    p.add_argument("--runs", type=int, default=DEFAULT_RUNS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--noise", default="default", help='noise file, "default" or "off"')
    p.add_argument("--out", default="results", help="output directory")
    p.set_defaults(func=cmd_case)

    p = sub.add_parser("noise", help="parse and print a noise file")
    p.add_argument("file", nargs="?", default="default")
    p.set_defaults(func=cmd_noise)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except PromiseViolation as exc:
        print(f"promise violation: {exc}", file=sys.stderr)
        return EXIT_PROMISE
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InputError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
