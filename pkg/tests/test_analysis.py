import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from djsim.analysis import (
    CHART_HEADER,
    RunSummary,
    aggregate_runs,
    export_chart_data,
    fidelity,
    format_chart_csv,
    write_chart_csv,
)
from djsim.cases import CASES, run_case
from djsim.errors import InputError
from djsim.noise import NoiseModel, default_noise_model
from djsim.sim import Histogram, bitstring


@st.composite
def distributions(draw, bits=3):
    weights = draw(st.lists(st.floats(0, 1, allow_nan=False), min_size=2 ** bits, max_size=2 ** bits))
    total = math.fsum(weights)
    if total == 0:
        weights, total = [1.0] + [0.0] * (2 ** bits - 1), 1.0
    return {bitstring(i, bits): w / total for i, w in enumerate(weights)}


class TestFidelity:
    def test_identical(self):
        p = {"000": 0.2, "011": 0.3, "111": 0.5}
        assert fidelity(p, p) == pytest.approx(1.0, abs=1e-15)

    def test_disjoint(self):
        assert fidelity({"00": 1.0}, {"01": 0.5, "11": 0.5}) == 0.0

    def test_hand_computed(self):
        ex = {"100": 0.81, "000": 0.1, "101": 0.05, "111": 0.04}
        assert fidelity({"100": 1.0}, ex) == pytest.approx(0.9, abs=1e-12)

    def test_counts_histogram(self):
        assert fidelity(Histogram({"0": 1.0}), Histogram({"0": 81, "1": 19}, 100)) == pytest.approx(0.9)

    def test_unnormalized(self):
        with pytest.raises(InputError):
            fidelity({"0": 0.5}, {"0": 1.0})

    def test_width_mismatch(self):
        with pytest.raises(InputError):
            fidelity({"0": 1.0}, {"00": 1.0})

    @given(distributions(), distributions())
    def test_symmetric_and_bounded(self, p, q):
        f = fidelity(p, q)
        assert abs(f - fidelity(q, p)) <= 1e-14
        assert 0.0 <= f <= 1.0

    @given(distributions(), st.floats(1e-3, 0.5))
    def test_moving_mass_lowers_fidelity(self, p, shift):
        # 1 - F is the squared Hellinger distance, second order in the shift;
        # 1e-3 keeps it well above double-precision resolution.
        keys = sorted(p)
        src = max(keys, key=p.get)
        dst = next(k for k in keys if k != src)
        amount = min(shift, p[src])
        q = dict(p)
        q[src] -= amount
        q[dst] += amount
        assert fidelity(p, q) < 1.0

    @given(distributions())
    def test_self_fidelity_is_one(self, p):
        assert fidelity(p, p) == pytest.approx(1.0, abs=1e-12)


class TestAggregate:
    def test_identical_runs(self):
        runs = [Histogram({"0": 60, "1": 40}, 100)] * 10
        summary = aggregate_runs(runs)
        assert summary.per_outcome_stddev == {"0": 0.0, "1": 0.0}
        assert summary.num_runs == 10 and summary.shots_per_run == 100

    def test_two_point(self):
        runs = [Histogram({"0": 40, "1": 60}, 100), Histogram({"0": 60, "1": 40}, 100)]
        summary = aggregate_runs(runs)
        assert summary.per_outcome_mean["0"] == pytest.approx(0.5, abs=1e-15)
        assert summary.per_outcome_stddev["0"] == pytest.approx(math.sqrt(0.02), abs=1e-12)

    def test_needs_two_runs(self):
        with pytest.raises(InputError):
            aggregate_runs([Histogram({"0": 1}, 1)])

    def test_shot_mismatch(self):
        with pytest.raises(InputError):
            aggregate_runs([Histogram({"0": 1}, 1), Histogram({"0": 2}, 2)])

    def test_means_sum_to_one(self):
        runs = [Histogram({"00": 3, "11": 1}, 4), Histogram({"01": 4}, 4), Histogram({"10": 2, "11": 2}, 4)]
        summary = aggregate_runs(runs)
        assert math.fsum(summary.per_outcome_mean.values()) == pytest.approx(1.0, abs=1e-9)
        assert all(s >= 0 for s in summary.per_outcome_stddev.values())

    def test_marginalize_commutes(self):
        result = run_case(CASES[2], default_noise_model(), shots=2048, runs=5, seed=1)
        for keep in ([0], [2], [0, 2], [1, 2]):
            a = result.summary.mean_histogram().marginal(keep).completed()
            b = aggregate_runs([h.marginal(keep) for h in result.runs]).mean_histogram().completed()
            for k in a:
                assert abs(a[k] - b[k]) <= 1e-12

    def test_case3_stddev_band(self):
        result = run_case(CASES[3], default_noise_model(), shots=8192, runs=10, seed=0)
        summary = result.summary
        for k, p in summary.per_outcome_mean.items():
            band = 3 * math.sqrt(p * (1 - p) / 8192) + 1e-3
            assert summary.per_outcome_stddev[k] <= band


class TestChart:
    def test_completion(self):
        summary = RunSummary({"00": 0.95, "01": 0.05}, {"00": 0.01, "01": 0.01}, 10, 8192)
        rows = export_chart_data(summary, Histogram({"00": 1.0}))
        assert [r.outcome for r in rows] == ["00", "01", "10", "11"]
        assert rows[2].theory == rows[2].exp_mean == rows[2].exp_std == 0.0

    def test_row_count(self):
        for m in (1, 2, 3):
            summary = RunSummary({"1" * m: 1.0}, {"1" * m: 0.0}, 2, 1)
            assert len(export_chart_data(summary, Histogram({"0" * m: 1.0}))) == 2 ** m

    def test_case1_ideal(self):
        result = run_case(CASES[1], NoiseModel.noiseless(3), shots=100, runs=2)
        rows = result.chart_rows()
        assert [(r.outcome, round(r.theory, 12)) for r in rows if r.theory > 0] == [("100", 1.0)]

    def test_csv_format(self, tmp_path):
        summary = RunSummary({"0": 0.25, "1": 0.75}, {"0": 0.0125, "1": 0.0125}, 10, 8192)
        path = write_chart_csv(export_chart_data(summary, Histogram({"1": 1.0})), tmp_path / "c.csv")
        lines = path.read_text().splitlines()
        assert lines[0] == ",".join(CHART_HEADER)
        assert lines[1] == "0,0.000000,0.250000,0.012500"
        assert lines[2] == "1,1.000000,0.750000,0.012500"
        assert format_chart_csv([]) == "outcome,theory,exp_mean,exp_std\n"
