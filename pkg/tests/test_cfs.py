import itertools
import json
import math

import numpy as np
import pytest

from eegfx.cfs import (
    DiscretizedFeature,
    MeritTrace,
    discretize,
    forward_search,
    merit,
    symmetric_correlation,
)
from eegfx.feature_table import FeatureTable


def _table(columns: dict, labels):
    labels = np.asarray(labels, dtype=int)
    names = tuple(columns)
    values = np.column_stack([np.asarray(columns[n], dtype=float) for n in names])
    return FeatureTable(
        records=tuple("r" for _ in labels),
        epoch_starts=np.arange(float(len(labels))),
        labels=labels,
        feature_names=names,
        values=values,
    )


def test_discretize_equal_frequency():
    rng = np.random.default_rng(0)
    values = rng.permutation(np.linspace(-5.0, 5.0, 100))
    codes = discretize(values, n_bins=10)
    assert np.array_equal(np.bincount(codes.bins), np.full(10, 10))


def test_discretize_constant_is_single_bin():
    codes = discretize(np.full(40, 7.7), n_bins=10)
    assert np.all(codes.bins == 0)


def test_discretize_ties_share_lower_bin():
    codes = discretize(np.array([1.0, 1.0, 2.0, 3.0]), n_bins=2)
    assert codes.bins.tolist() == [0, 0, 1, 1]


def test_discretize_is_rank_based():
    rng = np.random.default_rng(1)
    values = rng.standard_normal(200)
    base = discretize(values).bins
    assert np.array_equal(discretize(np.exp(values)).bins, base)
    assert np.array_equal(discretize(3.0 * values + 10.0).bins, base)


def test_discretize_validation():
    with pytest.raises(ValueError):
        discretize(np.array([1.0, np.inf]))
    with pytest.raises(ValueError):
        discretize(np.array([1.0, 2.0]), n_bins=1)
    with pytest.raises(ValueError):
        DiscretizedFeature(bins=np.array([0, 5]), n_bins=3)


def test_su_identical_is_one():
    codes = discretize(np.random.default_rng(2).standard_normal(100))
    assert symmetric_correlation(codes, codes) == 1.0


def test_su_independent_is_near_zero():
    rng = np.random.default_rng(3)
    a = DiscretizedFeature(bins=rng.integers(0, 10, size=10000), n_bins=10)
    b = DiscretizedFeature(bins=rng.integers(0, 10, size=10000), n_bins=10)
    assert symmetric_correlation(a, b) < 0.02


def test_su_constant_side_is_zero():
    flat = discretize(np.full(50, 1.0))
    varied = discretize(np.arange(50.0))
    assert symmetric_correlation(flat, varied) == 0.0
    assert symmetric_correlation(flat, flat) == 0.0


def test_su_is_symmetric():
    rng = np.random.default_rng(4)
    for _ in range(20):
        a = discretize(rng.standard_normal(300))
        b = discretize(rng.standard_normal(300) + 0.5 * a.bins)
        assert abs(symmetric_correlation(a, b) - symmetric_correlation(b, a)) < 1e-12


def test_su_invariant_under_code_relabeling():
    rng = np.random.default_rng(5)
    a = discretize(rng.standard_normal(500))
    b = discretize(rng.standard_normal(500) + a.bins)
    perm = rng.permutation(10)
    relabeled = DiscretizedFeature(bins=perm[a.bins], n_bins=10)
    assert symmetric_correlation(relabeled, b) == pytest.approx(
        symmetric_correlation(a, b), abs=1e-12
    )


def test_su_accepts_raw_labels():
    labels = np.array([0, 1, 0, 1, 0, 1])
    feature = DiscretizedFeature(bins=np.array([0, 9, 0, 9, 0, 9]), n_bins=10)
    assert symmetric_correlation(feature, labels) == pytest.approx(1.0)


def test_su_length_mismatch():
    a = discretize(np.arange(10.0))
    b = discretize(np.arange(12.0))
    with pytest.raises(ValueError, match="length mismatch"):
        symmetric_correlation(a, b)


def test_merit_singleton_is_class_correlation():
    assert merit(["F"], {"F": 0.37}, {}) == 0.37


def test_merit_plug_in_value():
    r_fc = {"A": 0.5, "B": 0.3}
    r_ff = {("A", "B"): 1.0}
    assert merit(["A", "B"], r_fc, r_ff) == pytest.approx(0.8 / math.sqrt(4.0))


def test_merit_duplicate_never_beats_singleton():
    rng = np.random.default_rng(6)
    for _ in range(20):
        r = float(rng.uniform(0.05, 1.0))
        singleton = merit(["F"], {"F": r}, {})
        doubled = merit(["F", "Twin"], {"F": r, "Twin": r}, {("F", "Twin"): 1.0})
        assert doubled <= singleton + 1e-12


def test_merit_validation():
    with pytest.raises(ValueError):
        merit([], {}, {})
    with pytest.raises(ValueError, match="repeated"):
        merit(["F", "F"], {"F": 0.5}, {})


def test_forward_search_picks_dominant_feature_first():
    rng = np.random.default_rng(7)
    labels = rng.integers(0, 2, size=300)
    table = _table(
        {
            "NoiseA": rng.standard_normal(300),
            "Signal": labels.astype(float),
            "NoiseB": rng.standard_normal(300),
        },
        labels,
    )
    trace = forward_search(table, max_size=3)
    assert trace.features[0] == "Signal"
    assert trace.merits[0] == pytest.approx(1.0)


def test_forward_search_full_size_is_a_permutation():
    rng = np.random.default_rng(8)
    labels = rng.integers(0, 2, size=200)
    table = _table(
        {f"F{i}": rng.standard_normal(200) + 0.3 * i * labels for i in range(5)},
        labels,
    )
    trace = forward_search(table, max_size=5)
    assert sorted(trace.features) == sorted(table.feature_names)
    assert len(trace.merits) == 5


def test_forward_search_is_deterministic():
    rng = np.random.default_rng(9)
    labels = rng.integers(0, 2, size=250)
    cols = {f"F{i}": rng.standard_normal(250) + 0.2 * i * labels for i in range(6)}
    a = forward_search(_table(cols, labels), max_size=4)
    b = forward_search(_table(cols, labels), max_size=4)
    assert a == b


def test_forward_search_breaks_exact_ties_by_name():
    rng = np.random.default_rng(10)
    labels = rng.integers(0, 2, size=200)
    shared = rng.standard_normal(200) + labels
    table = _table({"B": shared, "A": shared.copy()}, labels)
    trace = forward_search(table, max_size=1)
    assert trace.features == ("A",)


def test_forward_search_merits_are_self_consistent():
    rng = np.random.default_rng(11)
    labels = rng.integers(0, 2, size=300)
    cols = {f"F{i}": rng.standard_normal(300) + 0.4 * (i % 3) * labels for i in range(6)}
    table = _table(cols, labels)
    trace = forward_search(table, max_size=4)
    codes = {n: discretize(table.column(n)) for n in table.feature_names}
    r_fc = {n: symmetric_correlation(codes[n], table.labels.astype(int)) for n in codes}
    r_ff = {
        (f, g): symmetric_correlation(codes[f], codes[g])
        for f, g in itertools.combinations(sorted(codes), 2)
    }
    for size, recorded in enumerate(trace.merits, start=1):
        assert recorded == merit(list(trace.features[:size]), r_fc, r_ff)


def test_greedy_merit_close_to_exhaustive():
    rng = np.random.default_rng(12)
    for _ in range(10):
        labels = rng.integers(0, 2, size=150)
        cols = {}
        for i in range(6):
            gain = rng.uniform(0.0, 1.2)
            cols[f"F{i}"] = rng.standard_normal(150) + gain * labels
        cols["F1"] = cols["F0"] + 0.01 * rng.standard_normal(150)  # near-duplicate
        table = _table(cols, labels)
        trace = forward_search(table, max_size=4)
        codes = {n: discretize(table.column(n)) for n in table.feature_names}
        r_fc = {n: symmetric_correlation(codes[n], table.labels.astype(int)) for n in codes}
        r_ff = {
            (f, g): symmetric_correlation(codes[f], codes[g])
            for f, g in itertools.combinations(sorted(codes), 2)
        }
        names = table.feature_names
        assert trace.merits[0] == max(r_fc.values())
        for size in range(1, 5):
            best = max(
                merit(list(sub), r_fc, r_ff) for sub in itertools.combinations(names, size)
            )
            assert trace.merits[size - 1] >= 0.95 * best


def test_forward_search_guards():
    rng = np.random.default_rng(13)
    labels = rng.integers(0, 2, size=100)
    table = _table({"F": rng.standard_normal(100)}, labels)
    with pytest.raises(ValueError, match="max_size"):
        forward_search(table, max_size=2)
    single_class = _table({"F": rng.standard_normal(100)}, np.ones(100, dtype=int))
    with pytest.raises(ValueError, match="both classes"):
        forward_search(single_class, max_size=1)


def test_trace_outputs():
    trace = MeritTrace(features=("B", "A", "C"), merits=(0.4, 0.6, 0.5), best_size=2)
    assert trace.best_subset == ("B", "A")
    assert trace.best_merit == 0.6
    lines = trace.to_csv().splitlines()
    assert lines[0] == "rank,feature,merit_at_entry"
    assert lines[1] == "1,B,0.4"
    summary = json.loads(json.dumps(trace.summary()))
    assert summary == {"best_size": 2, "best_merit": 0.6, "features": ["B", "A"]}


def test_trace_validation():
    with pytest.raises(ValueError, match="best_size"):
        MeritTrace(features=("A",), merits=(0.5,), best_size=2)
    with pytest.raises(ValueError, match="maximum merit"):
        MeritTrace(features=("A", "B"), merits=(0.5, 0.9), best_size=1)
