"""Synthetic record generator: determinism, amplitude model, band limits."""

import numpy as np
import pytest

from eegfx.signals import EpochLabel, label_epoch, segment
from eegfx.synth import SynthSpec, synth_record


def _rms(x):
    return float(np.sqrt(np.mean(np.square(x))))


def _spec(**kw):
    base = dict(duration_s=60.0, fs=128.0, channels=("A", "B"), seed=9)
    base.update(kw)
    return SynthSpec(**base)


class TestDeterminism:
    def test_same_spec_same_samples(self):
        a = synth_record(_spec(seizure_intervals=((10, 20),)))
        b = synth_record(_spec(seizure_intervals=((10, 20),)))
        assert np.array_equal(a.data, b.data)

    def test_seed_changes_samples(self):
        a = synth_record(_spec())
        b = synth_record(_spec(seed=10))
        assert not np.array_equal(a.data, b.data)

    def test_gain_one_matches_background_exactly(self):
        # At unit gain the burst term is zero, so a record with seizure
        # intervals is sample-identical to one without.
        plain = synth_record(_spec())
        marked = synth_record(_spec(seizure_intervals=((10, 20),), seizure_gain=1.0))
        assert np.array_equal(plain.data, marked.data)

    def test_channels_are_independent(self):
        record = synth_record(_spec())
        assert abs(np.corrcoef(record.data)[0, 1]) < 0.1


class TestAmplitudeModel:
    def test_background_rms_is_exact(self):
        record = synth_record(_spec(background_rms=30.0))
        for row in record.data:
            assert _rms(row) == pytest.approx(30.0, abs=1e-9)

    def test_seizure_rms_ratio_tracks_gain(self):
        spec = _spec(
            duration_s=300.0, seizure_intervals=((60, 180),), seizure_gain=4.0
        )
        record = synth_record(spec)
        inside = record.data[:, 60 * 128 : 180 * 128]
        outside = np.concatenate(
            [record.data[:, : 60 * 128], record.data[:, 180 * 128 :]], axis=1
        )
        ratio = _rms(inside) / _rms(outside)
        assert 3.5 < ratio < 4.5

    def test_background_is_band_limited(self):
        spec = _spec(background_band=(0.5, 30.0))
        record = synth_record(spec)
        freqs = np.fft.rfftfreq(record.n_samples, d=1.0 / record.fs)
        spectrum = np.abs(np.fft.rfft(record.data[0]))
        stop = (freqs < 0.5) | (freqs > 30.0)
        assert spectrum[stop].max() < 1e-9 * spectrum.max()

    def test_burst_adds_power_only_in_seizure_band(self):
        marked = synth_record(_spec(seizure_intervals=((20, 40),), seizure_gain=4.0))
        plain = synth_record(_spec())
        burst = marked.data[0] - plain.data[0]
        assert np.all(burst[: 20 * 128] == 0)
        assert np.all(burst[40 * 128 :] == 0)
        # The burst itself lives in 3-8 Hz before windowing by the mask.
        freqs = np.fft.rfftfreq(marked.n_samples, d=1.0 / marked.fs)
        spectrum = np.abs(np.fft.rfft(marked.data[0] - plain.data[0]))
        inside = spectrum[(freqs >= 2.0) & (freqs <= 9.0)].sum()
        assert inside > 0.9 * spectrum.sum()


class TestRecordAssembly:
    def test_annotations_and_name_carried(self):
        record = synth_record(
            _spec(seizure_intervals=((30, 40), (10, 20)), name="demo")
        )
        assert record.annotations == ((10.0, 20.0), (30.0, 40.0))
        assert record.name == "demo"
        assert record.channels == ("A", "B")
        assert record.fs == 128.0

    def test_no_intervals_labels_all_normal(self):
        record = synth_record(_spec())
        epochs = segment(record, width_s=4.0, stride_s=1.0)["A"]
        labels = {label_epoch(e, record.annotations) for e in epochs}
        assert labels == {EpochLabel.NORMAL}

    def test_majority_covered_epochs_label_seizure(self):
        record = synth_record(_spec(seizure_intervals=((10, 20),)))
        epochs = segment(record, width_s=4.0, stride_s=1.0)["A"]
        seizure_starts = [
            e.start_time
            for e in epochs
            if label_epoch(e, record.annotations) is EpochLabel.SEIZURE
        ]
        # Epochs [s, s+4) with more than 2 s inside [10, 20).
        assert seizure_starts == [9.0, 10.0, 11.0, 12.0, 13.0, 14.0, 15.0, 16.0, 17.0]


class TestValidation:
    def test_gain_below_one(self):
        with pytest.raises(ValueError, match="gain"):
            _spec(seizure_gain=0.5)

    def test_band_beyond_nyquist(self):
        with pytest.raises(ValueError, match="band"):
            _spec(seizure_band=(3.0, 70.0))

    def test_interval_outside_record(self):
        with pytest.raises(ValueError, match="outside"):
            _spec(seizure_intervals=((50, 70),))

    def test_fractional_sample_count(self):
        with pytest.raises(ValueError, match="whole number of samples"):
            _spec(duration_s=0.333, fs=100.0)

    def test_duplicate_channels(self):
        with pytest.raises(ValueError, match="duplicate"):
            _spec(channels=("A", "A"))

    def test_overlapping_intervals_merge(self):
        spec = _spec(seizure_intervals=((10, 30), (20, 40)))
        assert spec.seizure_intervals == ((10.0, 40.0),)
