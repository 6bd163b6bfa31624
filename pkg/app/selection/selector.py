"""
Companion-frame selection around a reference frame.

Every existing frame within +/- window of the reference is scored by the
classifier; the best-scoring candidate wins if it clears 0.5, otherwise the
selector abstains.
"""

import re
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Union

import numpy as np

from ..classifier.network import architecture_of
from ..classifier.preprocess import preprocess_frame
from ..classifier.service import predict_tensor
from ..errors import DataFormatError, InvalidParameterError
from ..logging import get_logger
from ..logging.audit import audit_log
from ..logging.performance import timed
from ..models.motion import BlockMatchConfig
from ..models.rf import RfFrame
from ..models.selection import CandidateScore, SelectionComparison, SelectionResult
from ..nn.model import Model
from ..oracle.service import FrameOracle
from ..rf.io import load_frame

logger = get_logger(__name__)

DEFAULT_WINDOW = 8
DEFAULT_SKIPS = (1, 2)
FRAME_PATTERN = re.compile(r"^frame(\d+)\.rf$")


class FrameSequence:
    """Index -> frame accessor over a directory, a file list, or frames in memory."""

    def __init__(self, sources: Dict[int, Union[Path, RfFrame]]):
        self._sources = dict(sources)
        self._length = max(self._sources) + 1 if self._sources else 0
        self._loaded: Dict[int, RfFrame] = {}

    @classmethod
    def from_directory(cls, directory: Union[str, Path]) -> "FrameSequence":
        root = Path(directory)
        if not root.is_dir():
            raise DataFormatError(f"sequence directory not found: {root}")
        sources: Dict[int, Union[Path, RfFrame]] = {}
        for path in sorted(root.iterdir()):
            match = FRAME_PATTERN.match(path.name)
            if match:
                sources[int(match.group(1))] = path
        return cls(sources)

    @classmethod
    def from_files(cls, paths: Iterable[Union[str, Path]]) -> "FrameSequence":
        return cls({i: Path(p) for i, p in enumerate(paths)})

    @classmethod
    def from_frames(cls, frames: Sequence[RfFrame]) -> "FrameSequence":
        return cls(dict(enumerate(frames)))

    def __len__(self) -> int:
        return self._length

    def __contains__(self, index: int) -> bool:
        return index in self._sources

    def __getitem__(self, index: int) -> RfFrame:
        if index not in self._sources:
            raise KeyError(index)
        if index not in self._loaded:
            source = self._sources[index]
            self._loaded[index] = source if isinstance(source, RfFrame) else load_frame(source)
        return self._loaded[index]


def candidate_indices(frames: FrameSequence, reference_index: int, window: int) -> List[int]:
    lo, hi = reference_index - window, reference_index + window
    return [i for i in range(lo, hi + 1) if i != reference_index and i >= 0 and i in frames]


def score_candidates(
    model: Model,
    frames: FrameSequence,
    reference_index: int,
    window: int = DEFAULT_WINDOW,
) -> List[CandidateScore]:
    """One classifier score per existing neighbour, ascending by index."""
    if window < 1:
        raise InvalidParameterError(f"window must be at least 1, got {window}")
    if reference_index not in frames:
        raise InvalidParameterError(
            f"reference index {reference_index} is outside the sequence of {len(frames)} frames"
        )

    indices = candidate_indices(frames, reference_index, window)
    if not indices:
        return []

    arch = architecture_of(model)
    reference = frames[reference_index]
    ref_channel = preprocess_frame(reference, arch.model_h, arch.model_w)
    inputs = []
    for idx in indices:
        candidate = frames[idx]
        if candidate.shape != reference.shape:
            raise DataFormatError(
                f"frame {idx} has shape {candidate.shape}, reference has {reference.shape}"
            )
        inputs.append(np.stack([ref_channel, preprocess_frame(candidate, arch.model_h, arch.model_w)]))

    predictions = predict_tensor(model, np.stack(inputs))
    return [
        CandidateScore(candidate_index=idx, p_good=p.p_good, distance=abs(idx - reference_index))
        for idx, p in zip(indices, predictions)
    ]


def select_best(
    scores: Sequence[CandidateScore],
    reference_index: Optional[int] = None,
    window: Optional[int] = None,
) -> SelectionResult:
    """Highest p_good wins above 0.5; ties go to the closer, then the lower, index."""
    ordered = sorted(scores, key=lambda s: s.candidate_index)
    best = min(ordered, key=lambda s: (-s.p_good, s.distance, s.candidate_index), default=None)
    if best is None or best.p_good <= 0.5:
        return SelectionResult(reference=reference_index, window=window, scores=ordered, abstained=True)
    return SelectionResult(
        reference=reference_index,
        window=window,
        best_index=best.candidate_index,
        scores=ordered,
        abstained=False,
    )


def select_frame(
    model: Model,
    frames: FrameSequence,
    reference_index: int,
    window: int = DEFAULT_WINDOW,
) -> SelectionResult:
    with timed("select_frame", reference=reference_index, window=window):
        scores = score_candidates(model, frames, reference_index, window)
    result = select_best(scores, reference_index, window)
    audit_log(
        "frame_selected" if not result.abstained else "selection_abstained",
        details={
            "reference": reference_index,
            "best": result.best_index,
            "candidates": len(result.scores),
        },
    )
    return result


def skip_partner(reference_index: int, skip: int, sequence_length: int) -> Optional[int]:
    """Partner of the fixed skip-k pairing (skip 1 pairs i with i + 2)."""
    if skip < 0:
        raise InvalidParameterError("skip must be non-negative")
    partner = reference_index + skip + 1
    return partner if partner < sequence_length else None


def compare_with_skip(
    model: Model,
    frames: FrameSequence,
    reference_index: int,
    window: int = DEFAULT_WINDOW,
    skips: Sequence[int] = DEFAULT_SKIPS,
    match_cfg: Optional[BlockMatchConfig] = None,
) -> SelectionComparison:
    """Oracle reports for the selected pair and for each fixed skip-k pair."""
    oracle = FrameOracle(match_cfg)
    selection = select_frame(model, frames, reference_index, window)
    reference = frames[reference_index]

    selected_report = None
    if selection.best_index is not None:
        selected_report = oracle.evaluate_pair(reference, frames[selection.best_index])

    partners: Dict[int, Optional[int]] = {}
    reports = {}
    for skip in skips:
        partner = skip_partner(reference_index, skip, len(frames))
        if partner is not None and partner not in frames:
            partner = None
        partners[skip] = partner
        reports[skip] = None if partner is None else oracle.evaluate_pair(reference, frames[partner])
        logger.info(
            "Skip baseline evaluated",
            skip=skip,
            partner=partner,
            decision=None if reports[skip] is None else reports[skip].decision,
        )

    return SelectionComparison(
        selection=selection,
        selected_report=selected_report,
        skip_reports=reports,
        skip_partners=partners,
    )
