"""Arrival-generator and trace-I/O tests."""

from __future__ import annotations

import math

import numpy as np
import pytest

from eeesim import (
    ArrivalStream,
    DomainError,
    LinkConfig,
    TraceParseError,
    TraceProcess,
    TrafficSpec,
    gen_pareto,
    gen_periodic,
    gen_poisson,
    pareto_traffic,
    read_trace,
    realize,
    write_trace,
)

LINK = LinkConfig()
LAM = 8_333.3333333333  # 1% load on a 10 Gb/s link with 12 kbit frames


def gaps_of(stream: ArrivalStream) -> np.ndarray:
    """Inter-arrival gaps in seconds; t = 0 starts the first gap."""
    return np.diff(stream.timestamps_ns, prepend=0) / 1e9


class TestArrivalStream:
    def test_rejects_malformed_streams(self):
        with pytest.raises(DomainError):
            ArrivalStream(np.array([10, 5]), np.array([100, 100]))
        with pytest.raises(DomainError):
            ArrivalStream(np.array([1, 2]), np.array([100, 0]))
        with pytest.raises(DomainError):
            ArrivalStream(np.array([1, 2, 3]), np.array([100, 100]))

    def test_duration_and_totals(self):
        s = ArrivalStream(np.array([1_000, 3_000, 6_000]), np.array([8, 8, 16]))
        assert s.duration_s == pytest.approx(5e-6)
        assert s.total_bits() == 32
        assert len(s) == 3
        assert ArrivalStream(np.array([5]), np.array([8])).duration_s == 0.0


class TestPoissonGenerator:
    def test_seed_determinism(self):
        a = gen_poisson(LAM, 12000, 5_000, seed=42)
        b = gen_poisson(LAM, 12000, 5_000, seed=42)
        c = gen_poisson(LAM, 12000, 5_000, seed=43)
        np.testing.assert_array_equal(a.timestamps_ns, b.timestamps_ns)
        assert not np.array_equal(a.timestamps_ns, c.timestamps_ns)

    def test_gap_moments_match_exponential(self):
        n = 200_000
        g = gaps_of(gen_poisson(LAM, 12000, n, seed=7))
        se = g.std(ddof=1) / math.sqrt(n)
        assert abs(g.mean() - 1.0 / LAM) < 4 * se
        # exponential gaps have coefficient of variation 1
        assert g.std(ddof=1) / g.mean() == pytest.approx(1.0, abs=0.02)

    def test_input_validation(self):
        with pytest.raises(DomainError):
            gen_poisson(0.0, 12000, 10, seed=1)
        with pytest.raises(DomainError):
            gen_poisson(LAM, 12000, 0, seed=1)


class TestParetoGenerator:
    SHAPE = 1.8
    SCALE = (SHAPE - 1.0) / (SHAPE * LAM)  # minimum possible gap

    def test_gaps_respect_the_scale_floor(self):
        g = gaps_of(gen_pareto(self.SHAPE, LAM, 12000, 100_000, seed=3))
        # nanosecond rounding can shave at most half a ns off the floor
        assert g.min() * 1e9 >= math.floor(self.SCALE * 1e9)

    def test_mean_gap_is_load_matched(self):
        g = gaps_of(gen_pareto(self.SHAPE, LAM, 12000, 400_000, seed=11))
        # infinite-variance tail: accept a generous band around 1/lam
        assert g.mean() == pytest.approx(1.0 / LAM, rel=0.05)

    def test_tail_exponent_matches_shape(self):
        g = gaps_of(gen_pareto(self.SHAPE, LAM, 12000, 400_000, seed=19))
        lo, hi = 10 * self.SCALE, np.quantile(g, 0.999)
        thresholds = np.geomspace(lo, hi, 12)
        ccdf = np.array([(g > t).mean() for t in thresholds])
        slope = np.polyfit(np.log(thresholds), np.log(ccdf), 1)[0]
        assert slope == pytest.approx(-self.SHAPE, abs=0.1)

    def test_large_shape_degenerates_to_nearly_fixed_gaps(self):
        g = gaps_of(gen_pareto(50.0, LAM, 12000, 50_000, seed=5, allow_any_shape=True))
        assert g.mean() == pytest.approx(1.0 / LAM, rel=0.01)
        assert g.std(ddof=1) / g.mean() < 0.05

    def test_shape_validation(self):
        with pytest.raises(DomainError):
            gen_pareto(2.5, LAM, 12000, 10, seed=1)
        with pytest.raises(DomainError):
            gen_pareto(1.0, LAM, 12000, 10, seed=1)
        # an out-of-range but finite-mean shape passes with the escape hatch
        gen_pareto(2.5, LAM, 12000, 10, seed=1, allow_any_shape=True)
        with pytest.raises(DomainError):
            gen_pareto(0.9, LAM, 12000, 10, seed=1, allow_any_shape=True)


class TestPeriodicGenerator:
    def test_exact_integer_grid(self):
        s = gen_periodic(1e-6, 12000, 5)
        np.testing.assert_array_equal(
            s.timestamps_ns, np.array([0, 1000, 2000, 3000, 4000])
        )
        np.testing.assert_array_equal(s.sizes_bits, np.full(5, 12000))

    def test_rejects_bad_period(self):
        with pytest.raises(DomainError):
            gen_periodic(0.0, 12000, 5)


class TestRealize:
    def test_dispatch_matches_direct_generators(self):
        spec = pareto_traffic(0.01, LINK)
        direct = gen_pareto(1.8, spec.rate, 12000, 1_000, seed=9)
        via = realize(spec, 1_000, seed=9)
        np.testing.assert_array_equal(direct.timestamps_ns, via.timestamps_ns)

    def test_trace_specs_truncate_to_frame_budget(self, tmp_path):
        path = tmp_path / "t.trace"
        write_trace(gen_periodic(1e-6, 8000, 50), path)
        spec = TrafficSpec(process=TraceProcess(path=str(path)))
        assert len(realize(spec, 20, seed=0)) == 20
        assert len(realize(spec, 500, seed=0)) == 50


class TestTraceIO:
    def test_round_trip_is_lossless(self, tmp_path):
        stream = gen_poisson(LAM, 12000, 2_000, seed=21)
        path = tmp_path / "rt.trace"
        write_trace(stream, path)
        back = read_trace(path)
        np.testing.assert_array_equal(stream.timestamps_ns, back.timestamps_ns)
        np.testing.assert_array_equal(stream.sizes_bits, back.sizes_bits)

    def test_comments_and_blank_lines_are_skipped(self, tmp_path):
        path = tmp_path / "c.trace"
        path.write_text("# header\n\n100 8000\n# middle\n200 8000\n")
        s = read_trace(path)
        np.testing.assert_array_equal(s.timestamps_ns, [100, 200])

    @pytest.mark.parametrize(
        "body, fragment",
        [
            ("100 8000 extra\n", ":1:"),
            ("abc 8000\n", "non-integer"),
            ("100 0\n", "size must be > 0"),
            ("200 8000\n100 8000\n", "backwards"),
        ],
    )
    def test_parse_errors_carry_line_numbers(self, tmp_path, body, fragment):
        path = tmp_path / "bad.trace"
        path.write_text(body)
        with pytest.raises(TraceParseError) as exc:
            read_trace(path)
        assert fragment in str(exc.value)

    def test_parse_error_is_a_domain_error(self, tmp_path):
        path = tmp_path / "bad2.trace"
        path.write_text("nope\n")
        with pytest.raises(DomainError):
            read_trace(path)
