from .selector import (
    FrameSequence,
    score_candidates,
    select_best,
    select_frame,
    skip_partner,
    compare_with_skip,
)

__all__ = [
    "FrameSequence",
    "score_candidates",
    "select_best",
    "select_frame",
    "skip_partner",
    "compare_with_skip",
]
