"""Time-domain features for one epoch (or any real-valued sequence).

Everything here is a pure function of a 1-D array, so the same operations
apply unchanged to raw samples and to wavelet sub-band coefficients. Entropy
conventions: natural log throughout, 0*ln(0) := 0, Chebyshev distance for
template matching, and match tolerance is inclusive (distance <= r counts).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

__all__ = [
    "StatSummary",
    "TemplateConfig",
    "approximate_entropy",
    "average_power",
    "box_counting_fd",
    "dfa",
    "distribution_entropy",
    "energy",
    "fuzzy_entropy",
    "higuchi_fd",
    "hjorth",
    "hurst_exponent",
    "lbp_codes",
    "lgp_codes",
    "line_length",
    "lndp_codes",
    "local_extrema",
    "nonlinear_energy",
    "permutation_entropy",
    "rms",
    "sample_entropy",
    "shannon_entropy",
    "stat_summary",
    "svd_entropy",
    "weighted_permutation_entropy",
    "zero_crossings",
]

# Rows per block when tiling pairwise template distances; keeps the O(N^2)
# work in large matrix ops without holding the full distance matrix.
_BLOCK_ROWS = 128


def _as_signal(x, min_len: int, name: str = "x") -> np.ndarray:
    a = np.asarray(x, dtype=np.float64)
    if a.ndim != 1:
        raise ValueError(f"{name} must be 1-D, got shape {a.shape}")
    if a.size < min_len:
        raise ValueError(f"{name} needs at least {min_len} samples, got {a.size}")
    return a


@dataclass(frozen=True)
class TemplateConfig:
    """Template-matching parameters: window length m, tolerance r (signal
    units), histogram bin count, and embedding delay."""

    m: int = 2
    r: float = 1.0
    n_bins: int = 64
    delay: int = 1

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if not self.r > 0:
            raise ValueError("r must be > 0")
        if self.n_bins < 2:
            raise ValueError("n_bins must be >= 2")
        if self.delay < 1:
            raise ValueError("delay must be >= 1")


@dataclass(frozen=True)
class StatSummary:
    mean: float
    variance: float
    cv: float
    skewness: float
    kurtosis: float
    min: float
    max: float
    median: float
    mode: float
    q1: float
    q3: float
    iqr: float


def stat_summary(x) -> StatSummary:
    """Moment and order statistics of a sequence.

    Population moments (divide by N); skewness/kurtosis standardized by
    SD^3/SD^4, kurtosis raw (Gaussian -> 3), both 0 for a constant input.
    Quartiles use linear interpolation; mode is the center of the fullest of
    64 equal-width bins. cv = sqrt(variance)/mean, 0 for a constant signal
    and NaN when the mean is exactly 0 (undefined).
    """
    a = _as_signal(x, 2)
    mean = float(a.mean())
    var = float(a.var())
    lo, hi = float(a.min()), float(a.max())
    if var == 0.0:
        skew = kurt = 0.0
        cv = 0.0
    else:
        sd = math.sqrt(var)
        d = a - mean
        skew = float((d**3).mean()) / sd**3
        kurt = float((d**4).mean()) / var**2
        cv = math.sqrt(var) / mean if mean != 0.0 else math.nan
    if hi == lo:
        mode = lo
    else:
        counts, edges = np.histogram(a, bins=64, range=(lo, hi))
        top = int(np.argmax(counts))
        mode = float(0.5 * (edges[top] + edges[top + 1]))
    q1, med, q3 = (float(v) for v in np.percentile(a, [25, 50, 75]))
    return StatSummary(
        mean=mean,
        variance=var,
        cv=cv,
        skewness=skew,
        kurtosis=kurt,
        min=lo,
        max=hi,
        median=med,
        mode=mode,
        q1=q1,
        q3=q3,
        iqr=q3 - q1,
    )


def energy(x) -> float:
    """Sum of squared amplitudes."""
    a = _as_signal(x, 1)
    return float(a @ a)


def average_power(x) -> float:
    """Energy per sample."""
    a = _as_signal(x, 1)
    return float(a @ a) / a.size


def rms(x) -> float:
    """Root mean square amplitude."""
    return math.sqrt(average_power(x))


def line_length(x) -> float:
    """Total vertical extent: sum of absolute successive differences."""
    a = _as_signal(x, 2)
    return float(np.abs(np.diff(a)).sum())


def nonlinear_energy(x) -> float:
    """Sum of x[i]^2 - x[i+1]*x[i-1] over interior samples.

    Grows with both amplitude and frequency (~ A^2 w^2 for a sinusoid).
    """
    a = _as_signal(x, 3)
    return float((a[1:-1] * a[1:-1] - a[2:] * a[:-2]).sum())


def _entropy(p: np.ndarray) -> float:
    p = p[p > 0]
    return float(-(p * np.log(p)).sum())


def shannon_entropy(x, n_bins: int = 64) -> float:
    """Entropy of the amplitude histogram over equal-width bins on [min, max]."""
    a = _as_signal(x, 1)
    if n_bins < 2:
        raise ValueError("n_bins must be >= 2")
    lo, hi = float(a.min()), float(a.max())
    if lo == hi:
        return 0.0
    counts, _ = np.histogram(a, bins=n_bins, range=(lo, hi))
    return _entropy(counts / a.size)


def _check_template_args(a: np.ndarray, m: int, r: float) -> None:
    if m < 1:
        raise ValueError("m must be >= 1")
    if a.size < m + 2:
        raise ValueError(f"need N >= m + 2, got N={a.size}, m={m}")
    if not r > 0:
        raise ValueError("tolerance r must be > 0")


def _match_counts(a: np.ndarray, length: int, r: float) -> np.ndarray:
    """Per-template counts of Chebyshev matches (d <= r), self included.

    Templates are every window ``a[i:i+length]``. Work is tiled in row
    blocks so memory stays O(block * n_templates).
    """
    windows = sliding_window_view(a, length)
    n = windows.shape[0]
    counts = np.empty(n, dtype=np.int64)
    for lo in range(0, n, _BLOCK_ROWS):
        blk = windows[lo : lo + _BLOCK_ROWS]
        d = np.abs(blk[:, None, 0] - windows[None, :, 0])
        for k in range(1, length):
            np.maximum(d, np.abs(blk[:, None, k] - windows[None, :, k]), out=d)
        counts[lo : lo + blk.shape[0]] = (d <= r).sum(axis=1)
    return counts


def approximate_entropy(x, m: int = 2, r: float | None = None) -> float:
    """Template-matching regularity statistic with self-matches included.

    phi(s) averages ln of the fraction of length-s windows within Chebyshev
    distance r of each window (the window itself always matches, so the
    fraction is never 0); result is phi(m) - phi(m+1). r defaults to
    0.2 * sample SD.
    """
    a = _as_signal(x, m + 2)
    if r is None:
        r = 0.2 * float(a.std(ddof=1))
    _check_template_args(a, m, r)

    def phi(length: int) -> float:
        counts = _match_counts(a, length, r)
        return float(np.log(counts / counts.size).mean())

    return phi(m) - phi(m + 1)


def sample_entropy(x, m: int = 2, r: float | None = None) -> float:
    """ln of the ratio of m-window to (m+1)-window match counts.

    Counts ordered template pairs i != j (no self-matches) under Chebyshev
    distance <= r, each window length over its own full index range. Raises
    if no (m+1)-pair matches, where the statistic is undefined.
    """
    a = _as_signal(x, m + 2)
    if r is None:
        r = 0.2 * float(a.std(ddof=1))
    _check_template_args(a, m, r)
    matches_m = int(_match_counts(a, m, r).sum()) - (a.size - m + 1)
    matches_m1 = int(_match_counts(a, m + 1, r).sum()) - (a.size - m)
    if matches_m1 == 0:
        raise ValueError("sample entropy undefined: no template pair matches at m+1")
    return math.log(matches_m) - math.log(matches_m1)


def _ordinal_patterns(a: np.ndarray, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Rank patterns of all stride-1 windows, ties keeping earlier index first.

    Returns (pattern id per window, window matrix).
    """
    windows = sliding_window_view(a, m)
    order = np.argsort(windows, axis=1, kind="stable")
    # encode each permutation as an integer in factorial-free base m
    ids = np.zeros(windows.shape[0], dtype=np.int64)
    for k in range(m):
        ids = ids * m + order[:, k]
    return ids, windows


def permutation_entropy(x, m: int = 3) -> float:
    """Entropy of the rank-order pattern distribution of stride-1 windows."""
    a = _as_signal(x, m)
    if m < 1:
        raise ValueError("m must be >= 1")
    if m > 8:
        raise ValueError("m > 8 is intractable (m! patterns)")
    ids, _ = _ordinal_patterns(a, m)
    _, counts = np.unique(ids, return_counts=True)
    return _entropy(counts / ids.size)


def weighted_permutation_entropy(x, m: int = 3) -> float:
    """Permutation entropy with each window weighted by its variance.

    Pattern probabilities are variance-weighted relative frequencies; a
    signal whose every window is constant carries zero total weight and
    returns 0.
    """
    a = _as_signal(x, m)
    if m < 1:
        raise ValueError("m must be >= 1")
    if m > 8:
        raise ValueError("m > 8 is intractable (m! patterns)")
    ids, windows = _ordinal_patterns(a, m)
    weights = windows.var(axis=1)
    total = weights.sum()
    if total == 0.0:
        return 0.0
    uniq, inv = np.unique(ids, return_inverse=True)
    p = np.bincount(inv, weights=weights, minlength=uniq.size) / total
    return _entropy(p)


def _centered_windows(a: np.ndarray, length: int, count: int) -> np.ndarray:
    windows = sliding_window_view(a, length)[:count]
    return windows - windows.mean(axis=1, keepdims=True)


def _gaussian_similarity_sum(windows: np.ndarray, r: float) -> float:
    """Sum of exp(-d^2/(2r^2)) over ordered pairs i != j of rows."""
    n, length = windows.shape
    total = 0.0
    for lo in range(0, n, _BLOCK_ROWS):
        blk = windows[lo : lo + _BLOCK_ROWS]
        d = np.abs(blk[:, None, 0] - windows[None, :, 0])
        for k in range(1, length):
            np.maximum(d, np.abs(blk[:, None, k] - windows[None, :, k]), out=d)
        total += float(np.exp(-(d * d) / (2.0 * r * r)).sum())
    return total - n  # drop the n self-pairs (similarity exactly 1)


def fuzzy_entropy(x, m: int = 2, r: float | None = None) -> float:
    """Graded template matching on mean-removed windows.

    Similarity between windows is the Gaussian exp(-d^2/(2r^2)) of their
    Chebyshev distance; the same N-m leading windows are compared at
    lengths m and m+1 so the pair counts cancel in
    ln(phi(m)) - ln(phi(m+1)). r defaults to 0.2 * sample SD.
    """
    a = _as_signal(x, m + 2)
    if r is None:
        r = 0.2 * float(a.std(ddof=1))
    _check_template_args(a, m, r)
    count = a.size - m
    sim_m = _gaussian_similarity_sum(_centered_windows(a, m, count), r)
    sim_m1 = _gaussian_similarity_sum(_centered_windows(a, m + 1, count), r)
    return math.log(sim_m) - math.log(sim_m1)


def distribution_entropy(x, m: int = 2, n_bins: int = 256) -> float:
    """Normalized entropy of the template-distance histogram, in [0, 1].

    Chebyshev distances between all ordered pairs of distinct mean-removed
    windows (same window construction as fuzzy_entropy) are binned into
    n_bins equal-width bins over [0, max distance]; entropy is normalized
    by ln(n_bins). A constant signal puts every distance in one bin -> 0.
    """
    a = _as_signal(x, m + 2)
    if m < 1:
        raise ValueError("m must be >= 1")
    if n_bins < 2:
        raise ValueError("n_bins must be >= 2")
    windows = _centered_windows(a, m, a.size - m)
    n = windows.shape[0]
    iu, ju = np.triu_indices(n, k=1)
    d = np.abs(windows[iu] - windows[ju]).max(axis=1)
    dmax = float(d.max())
    if dmax == 0.0:
        return 0.0
    counts, _ = np.histogram(d, bins=n_bins, range=(0.0, dmax))
    # unordered pairs: ordered-pair histogram is exactly 2x, same frequencies
    return _entropy(counts / d.size) / math.log(n_bins)


def svd_entropy(x, m: int = 3, delay: int = 1) -> float:
    """Entropy of normalized singular values of the delay-embedding matrix.

    Rows are [x[i], x[i+delay], ..., x[i+(m-1)delay]]. Singular values are
    normalized to sum to 1; zero singular values contribute nothing. An
    all-zero signal returns 0.
    """
    a = _as_signal(x, 1)
    if m < 1 or delay < 1:
        raise ValueError("m and delay must be >= 1")
    if a.size < m * delay:
        raise ValueError(f"need N >= m * delay = {m * delay}, got {a.size}")
    rows = a.size - (m - 1) * delay
    idx = np.arange(rows)[:, None] + np.arange(m)[None, :] * delay
    sigma = np.linalg.svd(a[idx], compute_uv=False)
    total = sigma.sum()
    if total == 0.0:
        return 0.0
    return _entropy(sigma / total)


def _log_spaced_sizes(lo: int, hi: int, num: int = 12) -> np.ndarray:
    if hi < lo:
        raise ValueError(f"invalid size range [{lo}, {hi}]")
    return np.unique(np.round(np.geomspace(lo, hi, num)).astype(int))


def hurst_exponent(x) -> float:
    """Rescaled-range slope over log-spaced window sizes 8..N/2.

    Each window size splits the signal into non-overlapping windows; per
    window, R is the range of the cumulative mean-removed partial sums and
    S the population SD. ln(mean R/S) is regressed on ln(size) with an
    intercept (a forced zero intercept would make the estimate depend on
    units). Zero-variance windows are skipped; if every window at every
    size is constant the statistic is undefined.
    """
    a = _as_signal(x, 32)
    sizes = _log_spaced_sizes(8, a.size // 2)
    log_size, log_rs = [], []
    for w in sizes:
        n_seg = a.size // w
        segs = a[: n_seg * w].reshape(n_seg, w)
        sd = segs.std(axis=1)
        keep = sd > 0
        if not keep.any():
            continue
        z = np.cumsum(segs[keep] - segs[keep].mean(axis=1, keepdims=True), axis=1)
        rs = (z.max(axis=1) - z.min(axis=1)) / sd[keep]
        log_size.append(math.log(w))
        log_rs.append(math.log(rs.mean()))
    if len(log_size) < 2:
        raise ValueError("Hurst exponent undefined: all windows constant")
    return float(np.polyfit(log_size, log_rs, 1)[0])


def higuchi_fd(x, k_max: int = 8) -> float:
    """Curve-length fractal dimension from decimated path lengths.

    For each step tau = 1..k_max and each phase, the mean absolute increment
    of the decimated series is rescaled to the full record length; the
    dimension is minus the slope of ln(mean length) vs ln(tau).
    """
    a = _as_signal(x, 3)
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    if a.size <= k_max:
        raise ValueError(f"need N > k_max, got N={a.size}, k_max={k_max}")
    n = a.size
    log_tau, log_len = [], []
    for tau in range(1, k_max + 1):
        lengths = []
        for m0 in range(tau):
            n_inc = (n - 1 - m0) // tau
            if n_inc < 1:
                continue
            path = np.abs(np.diff(a[m0 : m0 + n_inc * tau + 1 : tau])).sum()
            lengths.append(path * (n - 1) / (n_inc * tau * tau))
        mean_len = float(np.mean(lengths))
        if mean_len <= 0.0:
            # flat at this decimation; a log fit cannot use it
            continue
        log_tau.append(math.log(tau))
        log_len.append(math.log(mean_len))
    if len(log_tau) < 2:
        raise ValueError("Higuchi dimension undefined: flat signal")
    return float(-np.polyfit(log_tau, log_len, 1)[0])


def _boxes_crossed(t: np.ndarray, y: np.ndarray, k: int) -> int:
    """Count eps x eps boxes (eps = 2^-k) crossed by the unit-square polyline."""
    n_cols = 1 << k
    eps = 1.0 / n_cols
    cols = np.minimum((t / eps).astype(np.int64), n_cols - 1)
    # include interpolated values at column boundaries in both neighbors
    tb = np.arange(1, n_cols) * eps
    yb = np.interp(tb, t, y)
    all_cols = np.concatenate([cols, np.arange(1, n_cols), np.arange(n_cols - 1)])
    all_y = np.concatenate([y, yb, yb])
    ymin = np.full(n_cols, np.inf)
    ymax = np.full(n_cols, -np.inf)
    np.minimum.at(ymin, all_cols, all_y)
    np.maximum.at(ymax, all_cols, all_y)
    occupied = ymax >= ymin
    row_lo = np.minimum(np.floor(ymin[occupied] / eps), n_cols - 1)
    row_hi = np.minimum(np.floor(ymax[occupied] / eps), n_cols - 1)
    return int((row_hi - row_lo + 1).sum())


def box_counting_fd(x) -> float:
    """Box-counting dimension of the signal polyline in the unit square.

    Dyadic box sizes 2^-1 .. 2^-(log2(N)-1); the limit is replaced by the
    log-log regression slope over those scales. A constant signal is a
    horizontal line: dimension 1 by convention.
    """
    a = _as_signal(x, 16)
    lo, hi = float(a.min()), float(a.max())
    if lo == hi:
        return 1.0
    t = np.linspace(0.0, 1.0, a.size)
    y = (a - lo) / (hi - lo)
    k_top = int(math.floor(math.log2(a.size))) - 1
    ks = np.arange(1, k_top + 1)
    counts = [_boxes_crossed(t, y, int(k)) for k in ks]
    # ln N(eps) vs ln(1/eps) = k ln 2
    return float(np.polyfit(ks * math.log(2.0), np.log(counts), 1)[0])


def _code_histogram(codes: np.ndarray, m: int) -> np.ndarray:
    return np.bincount(codes, minlength=1 << m) / codes.size


def lbp_codes(x, m: int = 6) -> np.ndarray:
    """Normalized histogram of local binary patterns (2^m bins).

    Each position compares m neighbors against the window center (the
    center itself is skipped by shifting the upper half one sample right);
    bit j is set when the neighbor is >= the center.
    """
    a = _as_signal(x, m + 2)
    if m < 2 or m % 2:
        raise ValueError("m must be a positive even integer")
    n_pos = a.size - m
    half = m // 2
    center = a[half : half + n_pos]
    codes = np.zeros(n_pos, dtype=np.int64)
    for j in range(m):
        src = a[j : j + n_pos] if j < half else a[j + 1 : j + 1 + n_pos]
        codes |= ((src - center) >= 0).astype(np.int64) << j
    return _code_histogram(codes, m)


def lndp_codes(x, m: int = 6) -> np.ndarray:
    """Normalized histogram of neighbor-difference sign patterns.

    Bit j encodes the sign of x[i+j] - x[i+j+1]; monotone increasing input
    maps every position to code 0, decreasing to 2^m - 1.
    """
    a = _as_signal(x, m + 2)
    if m < 1:
        raise ValueError("m must be >= 1")
    n_pos = a.size - m
    codes = np.zeros(n_pos, dtype=np.int64)
    for j in range(m):
        codes |= ((a[j : j + n_pos] - a[j + 1 : j + 1 + n_pos]) >= 0).astype(
            np.int64
        ) << j
    return _code_histogram(codes, m)


def lgp_codes(x, m: int = 6) -> np.ndarray:
    """Normalized histogram of gradient patterns against the mean gradient.

    Bit j is set when |neighbor - center| meets or exceeds the position's
    average absolute deviation from its first sample (sum of m+1 terms
    divided by m, the k = 0 term being zero).
    """
    a = _as_signal(x, m + 2)
    if m < 2 or m % 2:
        raise ValueError("m must be a positive even integer")
    n_pos = a.size - m
    half = m // 2
    center = a[half : half + n_pos]
    first = a[:n_pos]
    grad = np.zeros(n_pos)
    for k in range(m + 1):
        grad += np.abs(a[k : k + n_pos] - first)
    grad /= m
    codes = np.zeros(n_pos, dtype=np.int64)
    for j in range(m):
        src = a[j : j + n_pos] if j < half else a[j + 1 : j + 1 + n_pos]
        codes |= ((np.abs(src - center) - grad) >= 0).astype(np.int64) << j
    return _code_histogram(codes, m)


def hjorth(x) -> tuple[float, float, float]:
    """(activity, mobility, complexity).

    Activity is the population variance; mobility the SD ratio of the first
    difference to the signal; complexity the mobility ratio of the first
    difference to the signal. Requires a nonconstant signal. A constant
    derivative (straight ramp) has zero mobility; its complexity ratio is
    0/0 and is defined as 0 here.
    """
    a = _as_signal(x, 3)
    activity = float(a.var())
    if activity == 0.0:
        raise ValueError("Hjorth parameters undefined for a constant signal")
    d1 = np.diff(a)
    sd1 = float(d1.std())
    if sd1 == 0.0:
        return activity, 0.0, 0.0
    sd2 = float(np.diff(d1).std())
    mobility = sd1 / math.sqrt(activity)
    return activity, mobility, (sd2 / sd1) / mobility


def dfa(x) -> float:
    """Detrended fluctuation slope over log-spaced scales 4..N/4.

    The cumulative mean-removed profile is split into non-overlapping
    segments per scale, each segment is detrended by its least-squares
    line, and RMS residuals (over the included samples) are regressed
    against scale on log-log axes.
    """
    a = _as_signal(x, 64)
    profile = np.cumsum(a - a.mean())
    log_n, log_f = [], []
    for n in _log_spaced_sizes(4, a.size // 4):
        n_seg = profile.size // n
        segs = profile[: n_seg * n].reshape(n_seg, n)
        t = np.arange(n, dtype=np.float64)
        coef = np.polyfit(t, segs.T, 1)
        resid = segs - (np.outer(coef[0], t) + coef[1][:, None])
        f = math.sqrt(float((resid * resid).mean()))
        if f > 0.0:
            log_n.append(math.log(n))
            log_f.append(math.log(f))
    if len(log_n) < 2:
        raise ValueError("DFA undefined: zero fluctuation at all scales")
    return float(np.polyfit(log_n, log_f, 1)[0])


def zero_crossings(x) -> int:
    """Count of adjacent sample pairs with strictly opposite signs."""
    a = _as_signal(x, 2)
    return int((a[:-1] * a[1:] < 0).sum())


def local_extrema(x) -> int:
    """Count of interior samples where the slope strictly changes sign."""
    a = _as_signal(x, 3)
    d = np.diff(a)
    return int((d[:-1] * d[1:] < 0).sum())
