import numpy as np
import pandas as pd
import pytest

from app.errors import InvalidParameterError
from app.models.simulation import PulseSpec
from app.rf.io import MANIFEST_COLUMNS, load_frame, read_manifest
from app.simulation.dataset import (
    BAD_REGIMES,
    GOOD_REGIME,
    MANIFEST_NAME,
    SEQUENCE_NAME,
    DatasetGenerator,
    draw_motion,
    synth_dataset,
    synth_sequence,
)

SMALL = (128, 16)


def _in_range(value, bounds):
    lo, hi = bounds
    return lo <= value <= hi


class TestDrawMotion:
    """Test suite for regime sampling."""

    def test_good_regime(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            motion = draw_motion(rng, good=True)
            assert _in_range(motion.axial_strain, GOOD_REGIME["strain"])
            assert _in_range(motion.decorrelation_rho, GOOD_REGIME["rho"])

    def test_bad_regime_fails_one_gate(self):
        rng = np.random.default_rng(0)
        kinds = set()
        for _ in range(50):
            motion = draw_motion(rng, good=False)
            static = _in_range(motion.axial_strain, BAD_REGIMES["static"]["strain"])
            decorrelated = _in_range(motion.decorrelation_rho, BAD_REGIMES["decorrelated"]["rho"])
            assert static or decorrelated
            kinds.add("static" if static else "decorrelated")
        assert kinds == {"static", "decorrelated"}


class TestSynthDataset:
    """Test suite for dataset generation."""

    def test_writes_pairs_and_manifest(self, tmp_path):
        rows = DatasetGenerator(dims=SMALL).synth_dataset(10, 0.6, seed=7, out_dir=tmp_path)

        assert len(rows) == 10
        assert [r.pair_id for r in rows] == [f"pair{i:05d}" for i in range(10)]
        assert len(list(tmp_path.glob("pair*_a.rf"))) == 10
        assert len(list(tmp_path.glob("pair*_b.rf"))) == 10
        assert load_frame(tmp_path / rows[0].frame_a).shape == SMALL

        header = (tmp_path / MANIFEST_NAME).read_text().splitlines()[0]
        assert header == ",".join(MANIFEST_COLUMNS)
        assert [r.pair_id for r in read_manifest(tmp_path / MANIFEST_NAME)] == [r.pair_id for r in rows]

    def test_good_fraction(self, tmp_path):
        generator = DatasetGenerator(dims=SMALL)
        good = generator.good_indices(100, 0.6, seed=7)
        assert len(good) == 60

        rows = generator.synth_dataset(10, 0.6, seed=7, out_dir=tmp_path)
        for idx in generator.good_indices(10, 0.6, seed=7):
            assert _in_range(rows[idx].strain, GOOD_REGIME["strain"])
            assert _in_range(rows[idx].rho, GOOD_REGIME["rho"])

    def test_rerun_is_byte_identical(self, tmp_path):
        first, second = tmp_path / "one", tmp_path / "two"
        synth_dataset(10, 0.5, SMALL, PulseSpec(), 3, first)
        synth_dataset(10, 0.5, SMALL, PulseSpec(), 3, second)

        names = sorted(p.name for p in first.iterdir())
        assert names == sorted(p.name for p in second.iterdir())
        for name in names:
            assert (first / name).read_bytes() == (second / name).read_bytes()

    def test_threads_do_not_change_output(self, tmp_path):
        DatasetGenerator(dims=SMALL, workers=1).synth_dataset(10, 0.5, 3, tmp_path / "serial")
        DatasetGenerator(dims=SMALL, workers=3).synth_dataset(10, 0.5, 3, tmp_path / "threaded")
        for path in (tmp_path / "serial").iterdir():
            assert path.read_bytes() == (tmp_path / "threaded" / path.name).read_bytes()

    def test_too_few_pairs(self, tmp_path):
        with pytest.raises(InvalidParameterError):
            DatasetGenerator(dims=SMALL).synth_dataset(9, 0.5, 0, tmp_path)

    @pytest.mark.parametrize("fraction", [0.0, 1.0, 1.5])
    def test_invalid_fraction(self, tmp_path, fraction):
        with pytest.raises(InvalidParameterError):
            DatasetGenerator(dims=SMALL).synth_dataset(10, fraction, 0, tmp_path)


class TestSynthSequence:
    """Test suite for sequence generation."""

    def test_reference_and_offsets(self):
        frames, rows = synth_sequence(PulseSpec(), SMALL, 5, 2, [1], seed=4)

        assert [f.frame_id for f in frames] == [0, 1, 2, 3, 4]
        assert [r.index for r in rows] == [0, 1, 2, 3, 4]
        assert rows[2].strain == 0.0 and rows[2].rho == 1.0
        assert _in_range(rows[3].strain, GOOD_REGIME["strain"])
        assert _in_range(rows[3].rho, GOOD_REGIME["rho"])

    def test_seeded(self):
        first, _ = synth_sequence(PulseSpec(), SMALL, 3, 0, [], seed=9)
        second, _ = synth_sequence(PulseSpec(), SMALL, 3, 0, [], seed=9)
        assert all(x == y for x, y in zip(first, second))

    def test_write_sequence(self, tmp_path):
        generator = DatasetGenerator(dims=SMALL)
        frames, rows = generator.synth_sequence(4, 1, [2], seed=0)
        generator.write_sequence(frames, rows, tmp_path)

        assert sorted(p.name for p in tmp_path.glob("frame*.rf")) == [
            "frame00000.rf",
            "frame00001.rf",
            "frame00002.rf",
            "frame00003.rf",
        ]
        table = pd.read_csv(tmp_path / SEQUENCE_NAME)
        assert list(table.columns) == ["index", "strain", "rho", "expected_label"]
        assert len(table) == 4

    @pytest.mark.parametrize("length,reference", [(0, 0), (5, 5), (5, -1)])
    def test_invalid_reference(self, length, reference):
        with pytest.raises(InvalidParameterError):
            synth_sequence(PulseSpec(), SMALL, length, reference, [], seed=0)
