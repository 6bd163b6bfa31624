import numpy as np
import pytest

from app.errors import DataFormatError, InvalidParameterError
from app.models.classifier import Prediction
from app.models.oracle import NccReport
from app.models.selection import CandidateScore
from app.selection.selector import (
    FrameSequence,
    compare_with_skip,
    score_candidates,
    select_best,
    select_frame,
    skip_partner,
)


def _score(index: int, p_good: float, reference: int = 5) -> CandidateScore:
    return CandidateScore(candidate_index=index, p_good=p_good, distance=abs(index - reference))


def _report(decision: int) -> NccReport:
    value = 0.95 if decision else 0.5
    return NccReport(
        window_nccs=[value] * 9, min_ncc=value, mean_abs_disp_samples=1.0, decision=decision
    )


@pytest.fixture
def sequence(make_frame):
    """Thirty random 128x16 frames held in memory."""
    rng = np.random.default_rng(8)
    return FrameSequence.from_frames(
        [make_frame(rng.standard_normal((128, 16)).astype(np.float32), frame_id=i) for i in range(30)]
    )


class TestFrameSequence:
    """Test suite for sequence access."""

    def test_from_directory_ignores_other_files(self, frame_dir):
        directory = frame_dir(4)
        (directory / "notes.txt").write_text("not a frame")
        (directory / "frame_bad.rf").write_bytes(b"")
        frames = FrameSequence.from_directory(directory)

        assert len(frames) == 4
        assert frames[2].frame_id == 2

    def test_missing_directory(self, tmp_path):
        with pytest.raises(DataFormatError, match="not found"):
            FrameSequence.from_directory(tmp_path / "absent")

    def test_gaps_are_not_members(self, frame_dir):
        directory = frame_dir(5)
        (directory / "frame00002.rf").unlink()
        frames = FrameSequence.from_directory(directory)
        assert len(frames) == 5
        assert 2 not in frames
        with pytest.raises(KeyError):
            frames[2]

    def test_from_files(self, frame_dir):
        directory = frame_dir(3)
        frames = FrameSequence.from_files(sorted(directory.glob("*.rf")))
        assert [frames[i].frame_id for i in range(3)] == [0, 1, 2]


class TestScoreCandidates:
    """Test suite for classifier scoring of neighbours."""

    @pytest.mark.parametrize("reference,window,expected", [(15, 8, 16), (0, 8, 8), (29, 3, 3)])
    def test_candidate_counts(self, tiny_model, sequence, reference, window, expected):
        scores = score_candidates(tiny_model, sequence, reference, window)
        assert len(scores) == expected
        assert reference not in [s.candidate_index for s in scores]
        assert all(1 <= s.distance <= window for s in scores)

    def test_single_frame_sequence_abstains(self, tiny_model, make_frame):
        frame = make_frame(np.random.default_rng(0).standard_normal((128, 16)).astype(np.float32))
        result = select_frame(tiny_model, FrameSequence.from_frames([frame]), 0, 8)
        assert result.scores == []
        assert result.abstained is True
        assert result.best_index is None

    def test_reference_out_of_range(self, tiny_model, sequence):
        with pytest.raises(InvalidParameterError, match="outside the sequence"):
            score_candidates(tiny_model, sequence, 30, 8)

    def test_window_must_be_positive(self, tiny_model, sequence):
        with pytest.raises(InvalidParameterError):
            score_candidates(tiny_model, sequence, 5, 0)

    def test_deterministic(self, tiny_model, sequence):
        assert score_candidates(tiny_model, sequence, 10, 4) == score_candidates(tiny_model, sequence, 10, 4)


class TestSelectBest:
    """Test suite for the selection rule."""

    def test_argmax(self):
        result = select_best([_score(3, 0.7), _score(6, 0.9), _score(8, 0.2)], 5, 3)
        assert result.best_index == 6
        assert result.abstained is False

    def test_tie_prefers_closer_then_lower_index(self):
        assert select_best([_score(7, 0.8), _score(3, 0.8)]).best_index == 3
        assert select_best([_score(1, 0.8), _score(6, 0.8)]).best_index == 6

    def test_order_invariant(self):
        scores = [_score(2, 0.6), _score(4, 0.75), _score(9, 0.75), _score(6, 0.1)]
        assert select_best(scores).best_index == select_best(list(reversed(scores))).best_index == 4

    def test_scores_listed_by_index(self):
        result = select_best([_score(9, 0.6), _score(2, 0.7)])
        assert [s.candidate_index for s in result.scores] == [2, 9]

    @pytest.mark.parametrize("p_good", [0.5, 0.2])
    def test_abstains_at_or_below_half(self, p_good):
        result = select_best([_score(4, p_good), _score(6, p_good / 2)])
        assert result.abstained is True
        assert result.best_index is None

    def test_json_document(self):
        document = select_best([_score(4, 0.9)], 5, 8).to_json_dict()
        assert document["best"] == 4
        assert document["reference"] == 5
        assert document["scores"][0] == {"candidate_index": 4, "p_good": 0.9, "distance": 1}


class TestSkipBaseline:
    """Test suite for the fixed skip-k comparison."""

    @pytest.mark.parametrize(
        "reference,skip,length,expected",
        [(0, 1, 10, 2), (4, 2, 10, 7), (8, 1, 10, None), (3, 0, 10, 4)],
    )
    def test_skip_partner(self, reference, skip, length, expected):
        assert skip_partner(reference, skip, length) == expected

    def test_negative_skip(self):
        with pytest.raises(InvalidParameterError):
            skip_partner(0, -1, 10)

    def test_compare_with_skip(self, mocker, sequence, tiny_model):
        def fake_predict(model, inputs):
            probs = np.linspace(0.1, 0.9, inputs.shape[0])
            return [Prediction(p_good=p, p_bad=1.0 - p, decision=int(p > 0.5)) for p in probs]

        mocker.patch("app.selection.selector.predict_tensor", side_effect=fake_predict)
        oracle_cls = mocker.patch("app.selection.selector.FrameOracle")
        oracle_cls.return_value.evaluate_pair.side_effect = [_report(1), _report(0), _report(0)]

        comparison = compare_with_skip(tiny_model, sequence, 10, window=2)

        assert comparison.selection.best_index == 12
        assert comparison.selected_report.decision == 1
        assert comparison.skip_partners == {1: 12, 2: 13}
        assert [comparison.skip_reports[k].decision for k in (1, 2)] == [0, 0]
        assert oracle_cls.return_value.evaluate_pair.call_count == 3

    def test_compare_at_sequence_end(self, mocker, sequence, tiny_model):
        mocker.patch(
            "app.selection.selector.predict_tensor",
            side_effect=lambda model, inputs: [
                Prediction(p_good=0.2, p_bad=0.8, decision=0) for _ in range(inputs.shape[0])
            ],
        )
        oracle_cls = mocker.patch("app.selection.selector.FrameOracle")

        comparison = compare_with_skip(tiny_model, sequence, 29, window=2)

        assert comparison.selection.abstained is True
        assert comparison.selected_report is None
        assert comparison.skip_partners == {1: None, 2: None}
        oracle_cls.return_value.evaluate_pair.assert_not_called()
