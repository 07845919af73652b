"""Correlation-based feature selection.

Features and labels are discretized, correlations are symmetrical
uncertainty (an entropy ratio in [0, 1]), and subsets are scored by the
merit heuristic that rewards feature-class correlation while punishing
feature-feature redundancy.  Search is greedy forward selection.
"""

from __future__ import annotations

import io
import itertools
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from eegfx.feature_table import FeatureTable

__all__ = [
    "DiscretizedFeature",
    "MeritTrace",
    "discretize",
    "symmetric_correlation",
    "merit",
    "forward_search",
]

_DEFAULT_BINS = 10


@dataclass(frozen=True)
class DiscretizedFeature:
    """Integer bin codes for one feature column."""

    bins: np.ndarray
    n_bins: int

    def __post_init__(self) -> None:
        bins = np.asarray(self.bins)
        if bins.ndim != 1 or bins.size == 0 or not np.issubdtype(bins.dtype, np.integer):
            raise ValueError("bins must be a nonempty 1-D integer vector")
        if self.n_bins < 1:
            raise ValueError(f"n_bins must be >= 1, got {self.n_bins}")
        if bins.min() < 0 or bins.max() >= self.n_bins:
            raise ValueError("codes must lie in [0, n_bins)")
        bins = bins.astype(np.int64)
        bins.flags.writeable = False
        object.__setattr__(self, "bins", bins)


def discretize(values, n_bins: int = _DEFAULT_BINS) -> DiscretizedFeature:
    """Equal-frequency binning by rank; ties share the lower bin.

    A sample's code is floor(rank * n_bins / N) where rank is the
    position of its first occurrence in sort order, so the codes depend
    only on the ordering of the values: any increasing transform of the
    input yields identical codes.
    """
    a = np.asarray(values, dtype=np.float64)
    if a.ndim != 1 or a.size == 0:
        raise ValueError("values must be a nonempty 1-D vector")
    if not np.all(np.isfinite(a)):
        raise ValueError("values must be finite")
    if n_bins < 2:
        raise ValueError(f"n_bins must be >= 2, got {n_bins}")
    first_rank = np.searchsorted(np.sort(a), a, side="left")
    codes = first_rank * n_bins // a.size
    return DiscretizedFeature(bins=codes, n_bins=n_bins)


def _codes_of(x) -> tuple[np.ndarray, int]:
    if isinstance(x, DiscretizedFeature):
        return x.bins, x.n_bins
    a = np.asarray(x)
    if a.ndim != 1 or a.size == 0 or not np.issubdtype(a.dtype, np.integer):
        raise ValueError("expected a DiscretizedFeature or 1-D integer labels")
    if a.min() < 0:
        raise ValueError("codes must be nonnegative")
    return a.astype(np.int64), int(a.max()) + 1


def _entropy_of_counts(counts: np.ndarray) -> float:
    p = counts[counts > 0] / counts.sum()
    return float(-(p @ np.log(p)))


def symmetric_correlation(a, b) -> float:
    """Symmetrical uncertainty 2 I(a;b) / (H(a) + H(b)), natural log.

    Accepts discretized features or raw integer label vectors.  Zero
    when the joint information is zero (for instance either side is
    constant).
    """
    codes_a, n_a = _codes_of(a)
    codes_b, n_b = _codes_of(b)
    if codes_a.size != codes_b.size:
        raise ValueError(f"length mismatch: {codes_a.size} vs {codes_b.size}")
    h_a = _entropy_of_counts(np.bincount(codes_a, minlength=n_a))
    h_b = _entropy_of_counts(np.bincount(codes_b, minlength=n_b))
    if h_a + h_b == 0.0:
        return 0.0
    h_ab = _entropy_of_counts(np.bincount(codes_a * n_b + codes_b, minlength=n_a * n_b))
    info = h_a + h_b - h_ab
    return max(0.0, 2.0 * info / (h_a + h_b))


def _pair_lookup(r_ff: Mapping, f: str, g: str) -> float:
    if (f, g) in r_ff:
        return float(r_ff[(f, g)])
    return float(r_ff[(g, f)])


def merit(
    subset: Sequence[str],
    feature_class_corr: Mapping[str, float],
    feature_feature_corr: Mapping[tuple[str, str], float],
) -> float:
    """Merit = k r_fc / sqrt(k + k (k-1) r_ff), means over the subset."""
    k = len(subset)
    if k < 1:
        raise ValueError("subset must contain at least one feature")
    if len(set(subset)) != k:
        raise ValueError("subset contains repeated features")
    mean_fc = sum(float(feature_class_corr[f]) for f in subset) / k
    if k == 1:
        return mean_fc
    pairs = list(itertools.combinations(subset, 2))
    mean_ff = sum(_pair_lookup(feature_feature_corr, f, g) for f, g in pairs) / len(pairs)
    return k * mean_fc / math.sqrt(k + k * (k - 1) * mean_ff)


@dataclass(frozen=True)
class MeritTrace:
    """Greedy-search record: features in entry order with merit per size."""

    features: tuple[str, ...]
    merits: tuple[float, ...]
    best_size: int

    def __post_init__(self) -> None:
        if len(self.features) != len(self.merits) or not self.features:
            raise ValueError("one merit per selected feature required")
        if not 1 <= self.best_size <= len(self.features):
            raise ValueError("best_size outside the trace")
        if self.merits[self.best_size - 1] != max(self.merits):
            raise ValueError("best_size must point at the maximum merit")

    @property
    def best_subset(self) -> tuple[str, ...]:
        return self.features[: self.best_size]

    @property
    def best_merit(self) -> float:
        return self.merits[self.best_size - 1]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("rank,feature,merit_at_entry\n")
        for rank, (feature, m) in enumerate(zip(self.features, self.merits), start=1):
            buf.write(f"{rank},{feature},{m:.9g}\n")
        return buf.getvalue()

    def summary(self) -> dict:
        return {
            "best_size": self.best_size,
            "best_merit": self.best_merit,
            "features": list(self.best_subset),
        }


def forward_search(
    table: FeatureTable,
    max_size: int,
    n_bins: int = _DEFAULT_BINS,
) -> MeritTrace:
    """Greedy forward selection over the table's feature columns.

    Each step adds the unselected feature whose addition maximizes the
    merit; ties fall to the higher feature-class correlation and then
    to feature-name order.
    """
    names = table.feature_names
    if not 1 <= max_size <= len(names):
        raise ValueError(f"max_size {max_size} not in [1, {len(names)}]")
    n_seizure, n_normal = table.class_counts()
    if n_seizure == 0 or n_normal == 0:
        raise ValueError("both classes must be present for selection")
    labels = table.labels.astype(np.int64)
    codes = {name: discretize(table.column(name), n_bins) for name in names}
    r_fc = {name: symmetric_correlation(codes[name], labels) for name in names}
    r_ff: dict[tuple[str, str], float] = {}

    def pair_corr(f: str, g: str) -> float:
        key = (f, g) if f <= g else (g, f)
        if key not in r_ff:
            r_ff[key] = symmetric_correlation(codes[key[0]], codes[key[1]])
        return r_ff[key]

    selected: list[str] = []
    merits: list[float] = []
    remaining = list(names)
    while len(selected) < max_size:
        best_name = None
        best_key: tuple[float, float] | None = None
        for name in remaining:
            for prev in selected:
                pair_corr(prev, name)
            candidate_merit = merit(selected + [name], r_fc, r_ff)
            key = (candidate_merit, r_fc[name])
            if best_key is None or key > best_key or (key == best_key and name < best_name):
                best_key = key
                best_name = name
        selected.append(best_name)
        merits.append(best_key[0])
        remaining.remove(best_name)
    best_size = int(np.argmax(merits)) + 1
    return MeritTrace(features=tuple(selected), merits=tuple(merits), best_size=best_size)
