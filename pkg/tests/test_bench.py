"""Benchmark harness: slope math, suite plumbing, CSV output."""

import numpy as np
import pytest

from eegfx.bench import (
    BenchResult,
    LINEAR_SUITE,
    QUADRATIC_SUITE,
    bench_csv,
    run_bench,
)


class TestSlopeMath:
    def test_doubling_time_with_size_is_slope_one(self):
        r = BenchResult("f", (1000, 2000, 4000), (1e-3, 2e-3, 4e-3))
        assert r.slope == pytest.approx(1.0, abs=1e-12)

    def test_quadrupling_time_is_slope_two(self):
        r = BenchResult("f", (1000, 2000, 4000), (1e-3, 4e-3, 16e-3))
        assert r.slope == pytest.approx(2.0, abs=1e-12)

    def test_constant_time_is_slope_zero(self):
        r = BenchResult("f", (1000, 2000), (5e-3, 5e-3))
        assert r.slope == pytest.approx(0.0, abs=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError, match="increase"):
            BenchResult("f", (2000, 1000), (1e-3, 2e-3))
        with pytest.raises(ValueError, match="sizes for"):
            BenchResult("f", (1000, 2000), (1e-3,))
        with pytest.raises(ValueError, match=">= 2 sizes"):
            BenchResult("f", (1000,), (1e-3,))
        with pytest.raises(ValueError, match="positive"):
            BenchResult("f", (1000, 2000), (1e-3, 0.0))


class TestRunBench:
    def test_measures_every_suite_entry(self):
        results = run_bench(
            {"sum": np.sum, "ptp": np.ptp}, sizes=(256, 512), repeats=2
        )
        assert tuple(r.feature for r in results) == ("sum", "ptp")
        assert all(r.sizes == (256, 512) for r in results)
        assert all(s > 0 for r in results for s in r.seconds)

    def test_line_length_scales_linearly(self):
        results = run_bench(
            {"LineLength": LINEAR_SUITE["LineLength"]},
            sizes=(16384, 65536, 262144),
            repeats=3,
        )
        assert 0.6 < results[0].slope < 1.5

    def test_template_entropy_scales_quadratically(self):
        results = run_bench(
            {"SampEn": QUADRATIC_SUITE["SampEn"]}, sizes=(512, 1024, 2048), repeats=2
        )
        assert 1.5 < results[0].slope < 2.5

    def test_empty_suite_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            run_bench({}, sizes=(256, 512))

    def test_bad_repeats_rejected(self):
        with pytest.raises(ValueError, match="repeats"):
            run_bench({"sum": np.sum}, sizes=(256, 512), repeats=0)


class TestCsv:
    def test_layout(self):
        results = (BenchResult("f", (1000, 2000), (1e-3, 2e-3)),)
        text = bench_csv(results)
        lines = text.splitlines()
        assert lines[0] == "feature,n_samples,seconds,slope"
        assert lines[1] == "f,1000,0.001,1.0000"
        assert lines[2] == "f,2000,0.002,1.0000"
        assert text.endswith("\n")
