from .service import FrameOracle, decide, evaluate_pair, evaluate_pair_timed, label_dataset

__all__ = ["FrameOracle", "decide", "evaluate_pair", "evaluate_pair_timed", "label_dataset"]
