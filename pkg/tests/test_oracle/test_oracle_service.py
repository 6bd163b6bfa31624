import json

import numpy as np
import pytest

from app.models.oracle import NccReport
from app.oracle.service import FrameOracle, decide, evaluate_pair, evaluate_pair_timed, label_dataset
from app.rf.io import read_labels
from app.simulation.dataset import MANIFEST_NAME, DatasetGenerator

LABEL_DIMS = (256, 32)


@pytest.fixture(scope="module")
def labeled_source(tmp_path_factory):
    """Ten small synthetic pairs with their manifest."""
    out = tmp_path_factory.mktemp("pairs")
    DatasetGenerator(dims=LABEL_DIMS).synth_dataset(10, 0.5, seed=21, out_dir=out)
    return out


class TestDecide:
    """Test suite for the threshold rule."""

    @pytest.mark.parametrize(
        "min_ncc,disp,expected",
        [(0.95, 1.2, 1), (0.89, 2.0, 0), (0.99, 0.3, 0), (0.9, 0.5, 0)],
    )
    def test_examples(self, min_ncc, disp, expected):
        assert decide(min_ncc, disp) == expected

    def test_boundary_grid(self):
        decisions = {
            (n, d): decide(n, d) for n in (0.89, 0.90, 0.91) for d in (0.4, 0.5, 0.6)
        }
        assert [key for key, value in decisions.items() if value == 1] == [(0.91, 0.6)]

    def test_monotone(self):
        grid = np.linspace(0.0, 1.0, 21)
        for disp in (0.2, 0.6, 3.0):
            values = [decide(n, disp) for n in grid]
            assert values == sorted(values)
        for n in (0.5, 0.95):
            values = [decide(n, d) for d in np.linspace(0.0, 2.0, 21)]
            assert values == sorted(values)

    def test_custom_thresholds(self):
        assert decide(0.93, 1.0, ncc_threshold=0.95) == 0
        assert decide(0.93, 1.0, ncc_threshold=0.95, disp_threshold=0.1) == 0
        assert decide(0.96, 0.3, disp_threshold=0.2) == 1


class TestEvaluatePair:
    """Test suite for single-pair oracle evaluation."""

    def test_identical_frames(self, noise_frame):
        report = evaluate_pair(noise_frame, noise_frame)
        np.testing.assert_allclose(report.window_nccs, 1.0, atol=1e-12)
        assert report.mean_abs_disp_samples == 0.0
        assert report.decision == 0

    def test_compressed_pair_is_suitable(self, compressed_pair):
        a, b, _, _ = compressed_pair
        report = evaluate_pair(a, b)
        assert report.min_ncc > 0.9
        assert report.mean_abs_disp_samples > 0.5
        assert report.decision == 1

    def test_decorrelated_pair_is_rejected(self, decorrelated_pair):
        a, b, _, _ = decorrelated_pair
        report = evaluate_pair(a, b)
        assert report.min_ncc < 0.9
        assert report.decision == 0

    def test_min_is_minimum_of_windows(self, decorrelated_pair):
        a, b, _, _ = decorrelated_pair
        report = evaluate_pair(a, b)
        assert len(report.window_nccs) == 9
        assert report.min_ncc == min(report.window_nccs)

    def test_gain_invariance(self, compressed_pair, make_frame):
        a, b, _, _ = compressed_pair
        scaled_a = make_frame(a.samples * 3.0)
        scaled_b = make_frame(b.samples * 3.0)
        assert evaluate_pair(scaled_a, scaled_b).decision == evaluate_pair(a, b).decision

    def test_constant_windows_score_zero(self, make_frame):
        frame = make_frame(np.zeros((128, 32), dtype=np.float32))
        report = evaluate_pair(frame, frame)
        assert report.window_nccs == [0.0] * 9
        assert report.degenerate_windows == list(range(9))
        assert report.decision == 0

    def test_timed_breakdown(self, noise_frame):
        report, timing = evaluate_pair_timed(noise_frame, noise_frame)
        assert report.decision == 0
        assert timing.displacement_ms > 0.0
        assert timing.total_ms == pytest.approx(
            timing.displacement_ms + timing.warp_ms + timing.ncc_ms + timing.decision_ms
        )

    def test_thresholds_come_from_the_oracle(self, compressed_pair):
        a, b, _, _ = compressed_pair
        strict = FrameOracle(ncc_threshold=0.9999).evaluate_pair(a, b)
        assert strict.decision == 0


class TestLabelDataset:
    """Test suite for dataset labeling."""

    def test_one_row_per_pair(self, labeled_source, tmp_path):
        out = tmp_path / "labels.csv"
        result = label_dataset(labeled_source / MANIFEST_NAME, None, out)

        assert len(result.records) == 10
        assert result.skipped == []
        assert [r.pair_id for r in read_labels(out)] == [f"pair{i:05d}" for i in range(10)]
        assert all(r.label in (0, 1) for r in result.records)
        assert result.positives == sum(r.label for r in result.records)

    def test_rerun_is_byte_identical(self, labeled_source, tmp_path):
        oracle = FrameOracle()
        oracle.label_dataset(labeled_source / MANIFEST_NAME, tmp_path / "one.csv")
        oracle.label_dataset(labeled_source / MANIFEST_NAME, tmp_path / "two.csv", workers=3)
        assert (tmp_path / "one.csv").read_bytes() == (tmp_path / "two.csv").read_bytes()

    def test_missing_frame_is_skipped(self, labeled_source, tmp_path):
        source = tmp_path / "copy"
        source.mkdir()
        for path in labeled_source.iterdir():
            (source / path.name).write_bytes(path.read_bytes())
        (source / "pair00004_b.rf").unlink()

        result = FrameOracle().label_dataset(source / MANIFEST_NAME, tmp_path / "labels.csv")

        assert len(result.records) == 9
        assert [s.pair_id for s in result.skipped] == ["pair00004"]
        assert result.skipped[0].missing == ["pair00004_b.rf"]
        assert "pair00004" not in [r.pair_id for r in read_labels(tmp_path / "labels.csv")]

    def test_stricter_threshold_never_adds_positives(self, labeled_source, tmp_path):
        default = FrameOracle().label_dataset(labeled_source / MANIFEST_NAME, tmp_path / "a.csv")
        strict = FrameOracle(ncc_threshold=0.95).label_dataset(labeled_source / MANIFEST_NAME, tmp_path / "b.csv")
        assert strict.positives <= default.positives

    def test_pair_reports(self, labeled_source, tmp_path):
        FrameOracle().label_dataset(
            labeled_source / MANIFEST_NAME, tmp_path / "labels.csv", report_dir=tmp_path / "reports"
        )
        report = json.loads((tmp_path / "reports" / "pair00000.json").read_text())
        assert report["pair_id"] == "pair00000"
        assert NccReport(**{k: v for k, v in report.items() if k != "pair_id"}).min_ncc == report["min_ncc"]

    def test_audit_and_performance_events(self, labeled_source, tmp_path, mocker):
        audit = mocker.patch("app.oracle.service.audit_log")
        perf = mocker.patch("app.oracle.service.performance_log")

        FrameOracle().label_dataset(labeled_source / MANIFEST_NAME, tmp_path / "labels.csv")

        actions = [c.args[0] for c in audit.call_args_list]
        assert actions.count("pair_labeled") == 10
        assert actions[-1] == "dataset_labeled"
        assert perf.call_count == 10
