"""Multi-level discrete wavelet transform, STFT, and sub-band features.

The DWT is a Mallat filter-bank cascade over Daubechies orthonormal
filters.  Each level runs the analysis pair as a circular convolution,
so the coefficient energy of every level equals the energy of its
input exactly and the full decomposition partitions the signal energy
across D1..DL plus A_L.  Odd-length inputs are padded with one repeat
of their final sample before filtering; the pad is deterministic, so
reconstruction stays exact at every length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from eegfx.signals import Epoch
from eegfx.time_features import energy, line_length, stat_summary

__all__ = [
    "WaveletDecomposition",
    "Spectrogram",
    "dwt",
    "idwt",
    "subband_features",
    "stft_spectrogram",
    "WAVELETS",
]

_SQRT3 = math.sqrt(3.0)
_SQRT2 = math.sqrt(2.0)

# Daubechies scaling filters keyed by tap count.
WAVELETS: Mapping[str, tuple[float, ...]] = {
    "d4": (
        (1.0 + _SQRT3) / (4.0 * _SQRT2),
        (3.0 + _SQRT3) / (4.0 * _SQRT2),
        (3.0 - _SQRT3) / (4.0 * _SQRT2),
        (1.0 - _SQRT3) / (4.0 * _SQRT2),
    ),
    "d8": (
        0.23037781330885523,
        0.7148465705525415,
        0.6308807679295904,
        -0.02798376941698385,
        -0.18703481171888114,
        0.030841381835986965,
        0.032883011666982945,
        -0.010597401784997278,
    ),
}


def _filter_bank(wavelet_id: str) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    key = wavelet_id.lower()
    if key not in WAVELETS:
        raise ValueError(f"unknown wavelet {wavelet_id!r}, choose from {sorted(WAVELETS)}")
    rec_lo = np.array(WAVELETS[key], dtype=np.float64)
    taps = rec_lo.size
    rec_hi = (-1.0) ** np.arange(taps) * rec_lo[::-1]
    return rec_lo[::-1], rec_hi[::-1], rec_lo, rec_hi


@dataclass(frozen=True)
class WaveletDecomposition:
    """Coefficients of a multi-level DWT.

    ``details`` holds D1 (finest) through DL; ``approx`` is A_L.
    ``length`` records the analyzed sample count so the inverse can
    crop pad samples away.
    """

    details: tuple[np.ndarray, ...]
    approx: np.ndarray
    levels: int
    wavelet_id: str
    length: int

    def __post_init__(self) -> None:
        details = tuple(np.asarray(d, dtype=np.float64) for d in self.details)
        approx = np.asarray(self.approx, dtype=np.float64)
        if self.levels < 1 or len(details) != self.levels:
            raise ValueError("need one detail sequence per level, levels >= 1")
        if approx.size != details[-1].size:
            raise ValueError("approx and deepest detail must have equal length")
        for shallow, deep in zip(details, details[1:]):
            if abs(deep.size - shallow.size / 2) > 1:
                raise ValueError("detail lengths must halve level to level")
        for arr in (*details, approx):
            if arr.ndim != 1 or not np.all(np.isfinite(arr)):
                raise ValueError("coefficients must be finite 1-D vectors")
            arr.flags.writeable = False
        object.__setattr__(self, "details", details)
        object.__setattr__(self, "approx", approx)

    @property
    def band_names(self) -> tuple[str, ...]:
        return tuple(f"D{k}" for k in range(1, self.levels + 1)) + (f"A{self.levels}",)

    def band(self, name: str) -> np.ndarray:
        for label, coeffs in zip(self.band_names, (*self.details, self.approx)):
            if label == name:
                return coeffs
        raise KeyError(f"no band {name!r} in {self.band_names}")


def _analyze(a: np.ndarray, dec_lo: np.ndarray, dec_hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if a.size % 2:
        a = np.concatenate([a, a[-1:]])
    taps = dec_lo.size
    ext = a[np.arange(-(taps - 1), a.size) % a.size]
    lo = np.convolve(ext, dec_lo)[taps - 1 : taps - 1 + a.size]
    hi = np.convolve(ext, dec_hi)[taps - 1 : taps - 1 + a.size]
    return lo[1::2], hi[1::2]


def _synthesize(
    a: np.ndarray,
    d: np.ndarray,
    rec_lo: np.ndarray,
    rec_hi: np.ndarray,
    n_out: int,
) -> np.ndarray:
    m = a.size
    up = np.zeros(2 * m)
    up[0::2] = a
    rec = np.convolve(up, rec_lo)
    up[0::2] = d
    rec = rec + np.convolve(up, rec_hi)
    out = rec[: 2 * m].copy()
    tail = rec[2 * m :]
    # fold the convolution tail back circularly, then undo the analysis shift
    np.add.at(out, np.arange(tail.size) % (2 * m), tail)
    out = np.roll(out, -(rec_lo.size - 2))
    return out[:n_out]


def _samples_of(signal) -> np.ndarray:
    if isinstance(signal, Epoch):
        return signal.samples
    a = np.asarray(signal, dtype=np.float64)
    if a.ndim != 1 or a.size < 2:
        raise ValueError("need a 1-D signal of length >= 2")
    if not np.all(np.isfinite(a)):
        raise ValueError("signal must be finite")
    return a


def dwt(signal, wavelet: str = "d4", levels: int = 5) -> WaveletDecomposition:
    """Decompose an epoch (or bare sample vector) into ``levels`` bands.

    Requires at least 2**levels samples so the deepest band is nonempty.
    """
    x = _samples_of(signal)
    dec_lo, dec_hi, _, _ = _filter_bank(wavelet)
    if levels < 1:
        raise ValueError(f"levels must be >= 1, got {levels}")
    if x.size < 2**levels:
        raise ValueError(f"{x.size} samples too short for a {levels}-level decomposition")
    details = []
    a = x
    for _ in range(levels):
        a, d = _analyze(a, dec_lo, dec_hi)
        details.append(d)
    return WaveletDecomposition(
        details=tuple(details),
        approx=a,
        levels=levels,
        wavelet_id=wavelet.lower(),
        length=x.size,
    )


def idwt(decomp: WaveletDecomposition) -> np.ndarray:
    """Reconstruct the analyzed signal from its decomposition."""
    _, _, rec_lo, rec_hi = _filter_bank(decomp.wavelet_id)
    lengths = [decomp.length]
    for _ in range(decomp.levels - 1):
        lengths.append((lengths[-1] + 1) // 2)
    a = decomp.approx
    for d, n_out in zip(reversed(decomp.details), reversed(lengths)):
        if a.size != d.size:
            raise ValueError("approx/detail length mismatch in decomposition")
        a = _synthesize(a, d, rec_lo, rec_hi, n_out)
    return a


def _default_band_features(coeffs: np.ndarray) -> dict[str, float]:
    stats = stat_summary(coeffs)
    return {
        "Mean": stats.mean,
        "AbsMean": stat_summary(np.abs(coeffs)).mean,
        "Variance": stats.variance,
        "Skewness": stats.skewness,
        "Kurtosis": stats.kurtosis,
        "Min": stats.min,
        "Max": stats.max,
        "Energy": energy(coeffs),
        "LineLength": line_length(coeffs),
    }


def subband_features(
    decomp: WaveletDecomposition,
    features: Mapping[str, Callable[[np.ndarray], float]] | None = None,
) -> dict[str, float]:
    """Per-band features, keyed ``<Feature><Band>`` (for example EnergyD1).

    The default set is mean, absolute mean, variance, skewness,
    kurtosis, min, max, energy, and line length, each delegated to the
    time-domain implementation applied to the band's coefficient
    sequence.  Pass ``features`` to delegate any other callable the
    same way (for instance an entropy).
    """
    out: dict[str, float] = {}
    for band_name, coeffs in zip(decomp.band_names, (*decomp.details, decomp.approx)):
        if coeffs.size < 2:
            raise ValueError(f"band {band_name} has {coeffs.size} coefficient(s), need >= 2")
        if features is None:
            values = _default_band_features(coeffs)
        else:
            values = {name: float(fn(coeffs)) for name, fn in features.items()}
        for feature_name, value in values.items():
            out[f"{feature_name}{band_name}"] = value
    return out


@dataclass(frozen=True)
class Spectrogram:
    """Short-time Fourier magnitudes on a time x frequency grid."""

    times: np.ndarray
    freqs: np.ndarray
    magnitude: np.ndarray

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=np.float64)
        freqs = np.asarray(self.freqs, dtype=np.float64)
        mag = np.asarray(self.magnitude, dtype=np.float64)
        if mag.shape != (times.size, freqs.size):
            raise ValueError("magnitude must be times x freqs")
        if np.any(mag < 0) or not np.all(np.isfinite(mag)):
            raise ValueError("magnitude must be finite and nonnegative")
        for arr in (times, freqs, mag):
            arr.flags.writeable = False
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "freqs", freqs)
        object.__setattr__(self, "magnitude", mag)


def stft_spectrogram(epoch: Epoch, win_len: int = 256, hop: int = 128) -> Spectrogram:
    """Hamming-windowed one-sided STFT magnitude.

    Frames lie fully inside the epoch; each time stamp is the center of
    its frame, offset by the epoch start.
    """
    x = epoch.samples
    if not 2 <= win_len <= x.size:
        raise ValueError(f"window of {win_len} does not fit {x.size} samples")
    if hop < 1:
        raise ValueError(f"hop must be >= 1, got {hop}")
    starts = np.arange(0, x.size - win_len + 1, hop)
    frames = sliding_window_view(x, win_len)[starts] * np.hamming(win_len)
    magnitude = np.abs(np.fft.rfft(frames, axis=1))
    times = epoch.start_time + (starts + win_len / 2.0) / epoch.fs
    freqs = np.fft.rfftfreq(win_len, d=1.0 / epoch.fs)
    return Spectrogram(times=times, freqs=freqs, magnitude=magnitude)
