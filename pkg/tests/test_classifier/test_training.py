import numpy as np
import pandas as pd
import pytest

from app.classifier.training import (
    REPORT_COLUMNS,
    Trainer,
    check_trainable,
    evaluate_loss,
    load_labeled_pairs,
    save_train_report,
    split_indices,
    train,
)
from app.errors import PreconditionError, SingleClassDatasetError, TrainingError
from app.models.classifier import TrainConfig
from app.models.rf import PairRecord
from app.rf.io import store_frame, write_labels

FAST = TrainConfig(min_pairs=10, max_epochs=3, batch_size=4, lr=1e-2, seed=3)


def _record(idx: int, label: int, base: str = "") -> PairRecord:
    return PairRecord(
        pair_id=f"pair{idx:05d}",
        frame_a_ref=f"{base}pair{idx:05d}_a.rf",
        frame_b_ref=f"{base}pair{idx:05d}_b.rf",
        label=label,
        min_ncc=0.95 if label else 0.5,
        mean_abs_disp_samples=1.0,
    )


@pytest.fixture
def tensors():
    """Separable toy inputs: positives carry a positive offset on channel 1."""
    rng = np.random.default_rng(0)
    labels = np.array([i % 2 for i in range(20)], dtype=np.int64)
    inputs = rng.standard_normal((20, 2, 32, 16)).astype(np.float32)
    inputs[labels == 1, 1] += 2.0
    return inputs, labels


@pytest.fixture
def labeled_dir(tmp_path, make_frame):
    """Twelve 128x16 pairs on disk with an alternating labels CSV."""
    rng = np.random.default_rng(1)
    records = []
    for idx in range(12):
        record = _record(idx, idx % 2)
        for name in (record.frame_a_ref, record.frame_b_ref):
            store_frame(make_frame(rng.standard_normal((128, 16)).astype(np.float32)), tmp_path / name)
        records.append(record)
    write_labels(records, tmp_path / "labels.csv")
    return tmp_path


class TestPreconditions:
    """Test suite for checks that run before any training."""

    def test_single_class(self):
        with pytest.raises(SingleClassDatasetError, match="single-class dataset"):
            check_trainable([1] * 60, TrainConfig())

    def test_too_few_pairs(self):
        with pytest.raises(PreconditionError, match="at least 50"):
            check_trainable([0, 1] * 10, TrainConfig())

    def test_single_class_fails_before_frames_load(self, tmp_path):
        records = [_record(i, 1, base=f"{tmp_path}/missing/") for i in range(60)]
        with pytest.raises(SingleClassDatasetError):
            train(records, cfg=FAST)


class TestSplit:
    def test_sizes_and_disjointness(self):
        train_idx, val_idx = split_indices(20, 0.2, seed=0)
        assert (len(train_idx), len(val_idx)) == (16, 4)
        assert sorted(np.concatenate([train_idx, val_idx]).tolist()) == list(range(20))

    def test_seeded(self):
        first, second = split_indices(30, 0.2, 5), split_indices(30, 0.2, 5)
        np.testing.assert_array_equal(first[1], second[1])

    def test_both_sides_non_empty(self):
        train_idx, val_idx = split_indices(2, 0.9, 0)
        assert len(train_idx) == 1 and len(val_idx) == 1


class TestTrainer:
    """Test suite for the training loop."""

    def test_seeded_runs_are_identical(self, tiny_arch, tensors):
        first, report_a = Trainer(tiny_arch, FAST).fit(*tensors)
        second, report_b = Trainer(tiny_arch, FAST).fit(*tensors)

        assert report_a == report_b
        for a, b in zip(first.state_arrays(), second.state_arrays()):
            np.testing.assert_array_equal(a, b)

    def test_report_shape(self, tiny_arch, tensors):
        _, report = Trainer(tiny_arch, FAST).fit(*tensors)
        assert (report.train_size, report.val_size) == (16, 4)
        assert 1 <= len(report.epochs) <= FAST.max_epochs
        assert report.best is not None
        assert report.best.val_loss == min(e.val_loss for e in report.epochs)

    def test_best_snapshot_is_returned(self, tiny_arch, tensors):
        inputs, labels = tensors
        model, report = Trainer(tiny_arch, FAST).fit(inputs, labels)
        _, val_idx = split_indices(len(labels), FAST.val_fraction, FAST.seed)
        val_loss, val_accuracy = evaluate_loss(model, inputs[val_idx], labels[val_idx])
        assert val_loss == pytest.approx(report.best.val_loss, abs=1e-9)
        assert val_accuracy == report.best.val_accuracy

    def test_patience_stops_early(self, tiny_arch, tensors):
        cfg = FAST.model_copy(update={"max_epochs": 40, "early_stop_patience": 1})
        _, report = Trainer(tiny_arch, cfg).fit(*tensors)
        if report.stopped_early:
            assert len(report.epochs) == report.best_epoch + 2
        else:
            assert len(report.epochs) == 40

    def test_never_finite_validation_loss(self, tiny_arch, tensors, mocker):
        mocker.patch("app.classifier.training.evaluate_loss", return_value=(float("nan"), 0.0))
        with pytest.raises(TrainingError, match="never became finite"):
            Trainer(tiny_arch, FAST).fit(*tensors)

    def test_training_error_exit_code(self):
        assert TrainingError.exit_code == 2


class TestTrainFromFiles:
    """Test suite for training from a labels CSV."""

    def test_resolves_frame_paths(self, labeled_dir):
        records = load_labeled_pairs(labeled_dir / "labels.csv", labeled_dir)
        assert len(records) == 12
        assert records[0].frame_a_ref == str(labeled_dir / "pair00000_a.rf")

    def test_train_and_report(self, labeled_dir, tiny_arch, tmp_path):
        records = load_labeled_pairs(labeled_dir / "labels.csv", labeled_dir)
        model, report = train(records, tiny_arch, FAST)
        assert model.input_dims == (2, 32, 16)

        save_train_report(report, tmp_path / "out" / "report.csv")
        table = pd.read_csv(tmp_path / "out" / "report.csv")
        assert list(table.columns) == REPORT_COLUMNS
        assert len(table) == len(report.epochs)
