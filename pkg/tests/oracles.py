"""Naive reference implementations used only by the test suite.

Everything here is written as plain double loops over Python floats,
independently of the library's vectorized code, so agreement is meaningful.
Conventions mirror the documented library contracts: natural log, Chebyshev
distance, inclusive tolerance (d <= r).
"""

import math


def chebyshev(u, v):
    return max(abs(a - b) for a, b in zip(u, v))


def naive_apen(x, m, r):
    n = len(x)

    def phi(length):
        templates = [x[i : i + length] for i in range(n - length + 1)]
        t = len(templates)
        total = 0.0
        for u in templates:
            c = sum(1 for v in templates if chebyshev(u, v) <= r)
            total += math.log(c / t)
        return total / t

    return phi(m) - phi(m + 1)


def naive_sampen(x, m, r):
    n = len(x)

    def matches(length):
        templates = [x[i : i + length] for i in range(n - length + 1)]
        count = 0
        for i, u in enumerate(templates):
            for j, v in enumerate(templates):
                if i != j and chebyshev(u, v) <= r:
                    count += 1
        return count

    a, b = matches(m), matches(m + 1)
    if b == 0:
        raise ValueError("no (m+1)-matches")
    return math.log(a) - math.log(b)


def _centered(x, length, count):
    out = []
    for i in range(count):
        w = x[i : i + length]
        mu = sum(w) / length
        out.append([v - mu for v in w])
    return out


def naive_fuzzen(x, m, r):
    n = len(x)
    count = n - m

    def phi(length):
        windows = _centered(x, length, count)
        total = 0.0
        for i, u in enumerate(windows):
            for j, v in enumerate(windows):
                if i != j:
                    d = chebyshev(u, v)
                    total += math.exp(-(d * d) / (2.0 * r * r))
        return total / (count * (count - 1))

    return math.log(phi(m)) - math.log(phi(m + 1))


def naive_disten(x, m, n_bins):
    n = len(x)
    windows = _centered(x, m, n - m)
    dists = []
    for i, u in enumerate(windows):
        for j, v in enumerate(windows):
            if i != j:
                dists.append(chebyshev(u, v))
    dmax = max(dists)
    if dmax == 0.0:
        return 0.0
    counts = [0] * n_bins
    for d in dists:
        b = min(int(d / dmax * n_bins), n_bins - 1)
        counts[b] += 1
    h = 0.0
    for c in counts:
        if c:
            p = c / len(dists)
            h -= p * math.log(p)
    return h / math.log(n_bins)


def _pattern(window):
    # ascending rank order, equal values keep original order
    return tuple(sorted(range(len(window)), key=lambda j: (window[j], j)))


def naive_pe(x, m):
    n = len(x)
    counts = {}
    for i in range(n - m + 1):
        p = _pattern(x[i : i + m])
        counts[p] = counts.get(p, 0) + 1
    total = sum(counts.values())
    h = 0.0
    for c in counts.values():
        p = c / total
        h -= p * math.log(p)
    return h


def naive_wpe(x, m):
    n = len(x)
    weights = {}
    total = 0.0
    for i in range(n - m + 1):
        w = x[i : i + m]
        mu = sum(w) / m
        var = sum((v - mu) ** 2 for v in w) / m
        p = _pattern(w)
        weights[p] = weights.get(p, 0.0) + var
        total += var
    if total == 0.0:
        return 0.0
    h = 0.0
    for wsum in weights.values():
        p = wsum / total
        if p > 0.0:
            h -= p * math.log(p)
    return h
