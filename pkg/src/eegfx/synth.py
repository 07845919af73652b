"""Synthetic EEG-like records with planted seizure intervals.

Background is band-limited Gaussian noise at a fixed RMS amplitude.
During a seizure interval an independent rhythmic burst, band-limited
to the seizure band, is added with RMS ``sqrt(k^2 - 1)`` times the
background so the summed signal has RMS exactly ``k`` times background.
At ``k = 1`` the burst vanishes and seizure samples are drawn from the
same law as the rest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .annotations import merge_intervals
from .signals import DEFAULT_MONTAGE, Record

__all__ = ["SynthSpec", "synth_record"]


@dataclass(frozen=True)
class SynthSpec:
    """Recipe for one synthetic record.

    ``seizure_gain`` is the target RMS ratio between seizure and
    background epochs, >= 1.
    """

    duration_s: float = 600.0
    fs: float = 256.0
    channels: tuple[str, ...] = DEFAULT_MONTAGE.all_channels
    background_rms: float = 30.0
    background_band: tuple[float, float] = (0.5, 30.0)
    seizure_intervals: tuple[tuple[float, float], ...] = field(default_factory=tuple)
    seizure_gain: float = 4.0
    seizure_band: tuple[float, float] = (3.0, 8.0)
    seed: int = 0
    name: str = "synth"

    def __post_init__(self) -> None:
        object.__setattr__(self, "channels", tuple(self.channels))
        object.__setattr__(
            self, "seizure_intervals", merge_intervals(self.seizure_intervals)
        )
        if not self.duration_s > 0:
            raise ValueError(f"duration must be positive, got {self.duration_s}")
        if not self.fs > 0:
            raise ValueError(f"fs must be positive, got {self.fs}")
        if not self.channels:
            raise ValueError("at least one channel required")
        if len(set(self.channels)) != len(self.channels):
            raise ValueError("duplicate channel labels")
        if not self.background_rms > 0:
            raise ValueError(f"background RMS must be positive, got {self.background_rms}")
        if self.seizure_gain < 1.0:
            raise ValueError(
                f"seizure gain must be >= 1, got {self.seizure_gain}"
            )
        for band, what in (
            (self.background_band, "background"),
            (self.seizure_band, "seizure"),
        ):
            lo, hi = band
            if not 0 <= lo < hi <= self.fs / 2:
                raise ValueError(
                    f"{what} band [{lo}, {hi}] must sit inside (0, {self.fs / 2}] Hz"
                )
        for start, end in self.seizure_intervals:
            if start < 0 or end > self.duration_s:
                raise ValueError(
                    f"seizure interval [{start}, {end}) outside "
                    f"the {self.duration_s} s record"
                )
        self.n_samples  # whole-sample duration check

    @property
    def n_samples(self) -> int:
        n = self.duration_s * self.fs
        if abs(n - round(n)) > 1e-9:
            raise ValueError(
                f"duration {self.duration_s} s at {self.fs} Hz is not "
                "a whole number of samples"
            )
        return int(round(n))


def _band_noise(rng: np.random.Generator, n: int, fs: float,
                band: tuple[float, float], rms: float) -> np.ndarray:
    """Unit-variance white noise filtered to a band, rescaled to rms."""
    spectrum = np.fft.rfft(rng.standard_normal(n))
    freqs = np.fft.rfftfreq(n, d=1.0 / fs)
    spectrum[(freqs < band[0]) | (freqs > band[1])] = 0.0
    out = np.fft.irfft(spectrum, n)
    scale = math.sqrt(float(np.mean(out * out)))
    if scale == 0.0:
        raise ValueError(f"band [{band[0]}, {band[1]}] Hz keeps no spectrum bins")
    return out * (rms / scale)


def synth_record(spec: SynthSpec) -> Record:
    """Generate the record described by ``spec``, deterministically."""
    n = spec.n_samples
    rng = np.random.default_rng(spec.seed)
    burst_rms = spec.background_rms * math.sqrt(spec.seizure_gain**2 - 1.0)

    mask = np.zeros(n, dtype=bool)
    for start, end in spec.seizure_intervals:
        mask[int(round(start * spec.fs)) : int(round(end * spec.fs))] = True

    data = np.empty((len(spec.channels), n))
    for row in range(len(spec.channels)):
        background = _band_noise(
            rng, n, spec.fs, spec.background_band, spec.background_rms
        )
        # Draw the burst stream even when it is zeroed out, so changing
        # the gain or intervals never reshuffles the background noise.
        burst = _band_noise(rng, n, spec.fs, spec.seizure_band, 1.0)
        data[row] = background + np.where(mask, burst_rms * burst, 0.0)

    return Record(
        channels=spec.channels,
        data=data,
        fs=spec.fs,
        annotations=spec.seizure_intervals,
        name=spec.name,
    )
