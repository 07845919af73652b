"""Annotation file parsing, normalization, and the CHB-MIT converter."""

import numpy as np
import pytest

from eegfx.annotations import (
    merge_intervals,
    parse_chbmit_summary,
    read_annotations,
    write_annotations,
)


class TestMergeIntervals:
    def test_sorts(self):
        assert merge_intervals([(30, 40), (10, 20)]) == ((10, 20), (30, 40))

    def test_merges_overlap(self):
        assert merge_intervals([(10, 50), (40, 60)]) == ((10, 60),)

    def test_merges_touching(self):
        assert merge_intervals([(10, 20), (20, 30)]) == ((10, 30),)

    def test_contained_interval_disappears(self):
        assert merge_intervals([(10, 60), (20, 30)]) == ((10, 60),)

    def test_empty(self):
        assert merge_intervals([]) == ()

    def test_rejects_empty_interval(self):
        with pytest.raises(ValueError, match="empty annotation"):
            merge_intervals([(50, 10)])


class TestReadAnnotations:
    def test_single_pair(self, tmp_path):
        f = tmp_path / "a.ann"
        f.write_text("10 50\n")
        assert read_annotations(f) == ((10.0, 50.0),)

    def test_merges_and_sorts(self, tmp_path):
        f = tmp_path / "a.ann"
        f.write_text("40 60\n10 50\n")
        assert read_annotations(f) == ((10.0, 60.0),)

    def test_skips_blanks_and_comments(self, tmp_path):
        f = tmp_path / "a.ann"
        f.write_text("# seizures\n\n10 50  # ictal\n\n")
        assert read_annotations(f) == ((10.0, 50.0),)

    def test_reversed_interval_names_line(self, tmp_path):
        f = tmp_path / "a.ann"
        f.write_text("10 50\n50 10\n")
        with pytest.raises(ValueError, match=r"a\.ann:2"):
            read_annotations(f)

    def test_wrong_column_count_names_line(self, tmp_path):
        f = tmp_path / "a.ann"
        f.write_text("10 50\n10 20 30\n")
        with pytest.raises(ValueError, match=r"a\.ann:2.*start_s end_s"):
            read_annotations(f)

    def test_non_numeric_names_line(self, tmp_path):
        f = tmp_path / "a.ann"
        f.write_text("ten fifty\n")
        with pytest.raises(ValueError, match=r"a\.ann:1"):
            read_annotations(f)

    def test_empty_file(self, tmp_path):
        f = tmp_path / "a.ann"
        f.write_text("")
        assert read_annotations(f) == ()


class TestWriteAnnotations:
    def test_round_trip(self, tmp_path):
        f = tmp_path / "a.ann"
        intervals = ((10.5, 50.25), (100.0, 120.0))
        write_annotations(intervals, f)
        assert read_annotations(f) == intervals

    def test_output_is_normalized(self, tmp_path):
        f = tmp_path / "a.ann"
        write_annotations([(40, 60), (10, 50)], f)
        assert f.read_text() == "10.0 60.0\n"

    def test_round_trip_random_intervals(self, tmp_path):
        rng = np.random.default_rng(4)
        for trial in range(20):
            starts = np.sort(rng.uniform(0, 3600, size=5))
            intervals = [(s, s + rng.uniform(0.5, 300)) for s in starts]
            f = tmp_path / f"t{trial}.ann"
            write_annotations(intervals, f)
            assert read_annotations(f) == merge_intervals(intervals)


_SUMMARY = """\
Data Sampling Rate: 256 Hz

File Name: chb01_01.edf
File Start Time: 11:42:54
File End Time: 12:42:54
Number of Seizures in File: 0

File Name: chb01_03.edf
File Start Time: 13:43:04
File End Time: 14:43:04
Number of Seizures in File: 1
Seizure Start Time: 2996 seconds
Seizure End Time: 3036 seconds

File Name: chb01_15.edf
Number of Seizures in File: 2
Seizure 1 Start Time: 1732 seconds
Seizure 1 End Time: 1772 seconds
Seizure 2 Start Time: 3160 seconds
Seizure 2 End Time: 3195 seconds
"""


class TestChbmitSummary:
    def test_parses_all_records(self):
        out = parse_chbmit_summary(_SUMMARY)
        assert out == {
            "chb01_01.edf": (),
            "chb01_03.edf": ((2996.0, 3036.0),),
            "chb01_15.edf": ((1732.0, 1772.0), (3160.0, 3195.0)),
        }

    def test_start_without_end_errors(self):
        text = "File Name: x.edf\nSeizure Start Time: 10 seconds\n"
        with pytest.raises(ValueError, match="start without an end"):
            parse_chbmit_summary(text)

    def test_end_without_start_errors(self):
        text = "File Name: x.edf\nSeizure End Time: 10 seconds\n"
        with pytest.raises(ValueError, match="without a matching start"):
            parse_chbmit_summary(text)

    def test_times_before_any_file_error(self):
        with pytest.raises(ValueError, match="before any"):
            parse_chbmit_summary("Seizure Start Time: 10 seconds\n")
