from .network import build_model, architecture_of
from .preprocess import preprocess_pair, preprocess_frame
from .training import Trainer, train, load_labeled_pairs, save_train_report
from .service import predict, predict_tensor, evaluate, compute_metrics

__all__ = [
    "build_model",
    "architecture_of",
    "preprocess_pair",
    "preprocess_frame",
    "Trainer",
    "train",
    "load_labeled_pairs",
    "save_train_report",
    "predict",
    "predict_tensor",
    "evaluate",
    "compute_metrics",
]
