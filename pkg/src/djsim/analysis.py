"""Classical fidelity, multi-run statistics and chart-table export."""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, NamedTuple, Sequence

from .errors import InputError
from .sim import Histogram, bitstring

NORMALIZATION_TOL = 1e-6
CHART_HEADER = ("outcome", "theory", "exp_mean", "exp_std")


def _as_distribution(dist: Histogram | Mapping[str, float], name: str) -> dict[str, float]:
    probs = dist.probabilities() if isinstance(dist, Histogram) else dict(dist)
    total = math.fsum(probs.values())
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise InputError(f"{name} sums to {total}, not 1")
    if any(v < 0 for v in probs.values()):
        raise InputError(f"{name} has negative probabilities")
    return probs


def fidelity(p_th: Histogram | Mapping[str, float], p_ex: Histogram | Mapping[str, float]) -> float:
    """Bhattacharyya overlap sum_i sqrt(p_i q_i); outcomes missing on one side count as 0."""
    p = _as_distribution(p_th, "theoretical distribution")
    q = _as_distribution(p_ex, "experimental distribution")
    widths = {len(k) for k in p} | {len(k) for k in q}
    if len(widths) > 1:
        raise InputError(f"distributions over different outcome widths {sorted(widths)}")
    overlap = math.fsum(math.sqrt(p[k] * q[k]) for k in p.keys() & q.keys())
    return min(1.0, overlap)


@dataclass(frozen=True)
class RunSummary:
    per_outcome_mean: dict[str, float]
    per_outcome_stddev: dict[str, float]
    num_runs: int
    shots_per_run: int

    def mean_histogram(self) -> Histogram:
        return Histogram(dict(self.per_outcome_mean))


def aggregate_runs(runs: Sequence[Histogram]) -> RunSummary:
    """Per-outcome mean frequency and sample standard deviation (n-1 divisor)."""
    if len(runs) < 2:
        raise InputError(f"need at least 2 runs for a standard deviation, got {len(runs)}")
    shots = {h.total_shots for h in runs}
    if len(shots) != 1:
        raise InputError(f"runs have different shot counts: {sorted(shots)}")
    freqs = [h.probabilities() for h in runs]
    outcomes = sorted(set().union(*freqs))
    columns = {k: [f.get(k, 0.0) for f in freqs] for k in outcomes}
    return RunSummary(
        per_outcome_mean={k: statistics.fmean(v) for k, v in columns.items()},
        per_outcome_stddev={k: statistics.stdev(v) for k, v in columns.items()},
        num_runs=len(runs),
        shots_per_run=shots.pop(),
    )


class ChartRow(NamedTuple):
    outcome: str
    theory: float
    exp_mean: float
    exp_std: float


def export_chart_data(summary: RunSummary, theory: Histogram) -> list[ChartRow]:
    """One row per outcome of the measured register, lexicographic order."""
    widths = {len(k) for k in summary.per_outcome_mean} | {len(k) for k in theory.entries}
    if len(widths) != 1:
        raise InputError(f"cannot infer register width from {sorted(widths)}")
    m = widths.pop()
    th = theory.probabilities()
    rows = []
    for i in range(1 << m):
        key = bitstring(i, m)
        rows.append(ChartRow(key, th.get(key, 0.0), summary.per_outcome_mean.get(key, 0.0),
                             summary.per_outcome_stddev.get(key, 0.0)))
    return rows


def format_chart_csv(rows: Sequence[ChartRow]) -> str:
    lines = [",".join(CHART_HEADER)]
    lines += [f"{r.outcome},{r.theory:.6f},{r.exp_mean:.6f},{r.exp_std:.6f}" for r in rows]
    return "\n".join(lines) + "\n"


def write_chart_csv(rows: Sequence[ChartRow], path: str | Path) -> Path:
    path = Path(path)
    path.write_text(format_chart_csv(rows))
    return path
