"""
Minibatch Adam training of the frame-pair classifier on oracle labels.

The split is a seeded shuffle: the first part trains, the tail validates.
The returned model is the snapshot with the lowest validation loss.
"""

from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ..errors import PreconditionError, SingleClassDatasetError, TrainingError
from ..logging import get_logger
from ..logging.performance import Stopwatch, performance_log
from ..models.classifier import ArchitectureSpec, EpochStats, TrainConfig, TrainReport
from ..models.rf import PairRecord
from ..nn.functional import softmax_cross_entropy
from ..nn.model import Model
from ..nn.optim import AdamState, adam_step
from ..rf.io import CSV_FLOAT_FORMAT, load_frame, read_labels
from .network import build_model
from .preprocess import preprocess_pair

logger = get_logger(__name__)

EVAL_CHUNK = 64
REPORT_COLUMNS = ["epoch", "train_loss", "val_loss", "val_accuracy"]


def load_labeled_pairs(labels_csv: Union[str, Path], data_dir: Union[str, Path]) -> List[PairRecord]:
    """Label rows with frame references resolved under `data_dir`."""
    base = Path(data_dir)
    records = read_labels(labels_csv)
    return [
        r.model_copy(
            update={
                "frame_a_ref": str(base / r.frame_a_ref),
                "frame_b_ref": str(base / r.frame_b_ref),
            }
        )
        for r in records
    ]


def check_trainable(labels: Sequence[int], cfg: TrainConfig) -> None:
    if len(set(int(v) for v in labels)) < 2:
        raise SingleClassDatasetError()
    if len(labels) < cfg.min_pairs:
        raise PreconditionError(
            f"training needs at least {cfg.min_pairs} labeled pairs, got {len(labels)}"
        )


def build_tensors(records: Sequence[PairRecord], arch: ArchitectureSpec) -> Tuple[np.ndarray, np.ndarray]:
    inputs = np.concatenate(
        [preprocess_pair(load_frame(r.frame_a_ref), load_frame(r.frame_b_ref), arch) for r in records],
        axis=0,
    )
    labels = np.array([r.label for r in records], dtype=np.int64)
    return inputs, labels


def split_indices(count: int, val_fraction: float, seed: int) -> Tuple[np.ndarray, np.ndarray]:
    order = np.random.default_rng(seed).permutation(count)
    n_val = min(count - 1, max(1, int(round(count * val_fraction))))
    return order[: count - n_val], order[count - n_val:]


def evaluate_loss(model: Model, inputs: np.ndarray, labels: np.ndarray) -> Tuple[float, float]:
    """Mean cross entropy and accuracy in inference mode."""
    total_loss = 0.0
    correct = 0
    for start in range(0, len(labels), EVAL_CHUNK):
        x = inputs[start:start + EVAL_CHUNK]
        y = labels[start:start + EVAL_CHUNK]
        logits, _ = model.forward(x, train=False)
        loss, probs, _ = softmax_cross_entropy(logits.astype(np.float64), y)
        total_loss += loss * len(y)
        correct += int(np.sum(np.argmax(probs, axis=1) == y))
    return total_loss / len(labels), correct / len(labels)


class Trainer:
    """Owns one model for the duration of a training run."""

    def __init__(self, arch: Optional[ArchitectureSpec] = None, cfg: Optional[TrainConfig] = None):
        self.arch = arch or ArchitectureSpec()
        self.cfg = cfg or TrainConfig()

    def fit(self, inputs: np.ndarray, labels: np.ndarray) -> Tuple[Model, TrainReport]:
        cfg = self.cfg
        check_trainable(labels.tolist(), cfg)

        train_idx, val_idx = split_indices(len(labels), cfg.val_fraction, cfg.seed)
        x_val, y_val = inputs[val_idx], labels[val_idx]
        model = build_model(self.arch, seed=cfg.seed)
        params = model.parameters()
        state = AdamState(params, lr=cfg.lr)
        rng = np.random.default_rng(cfg.seed + 1)

        report = TrainReport(train_size=len(train_idx), val_size=len(val_idx))
        best_loss = np.inf
        best_state: List[np.ndarray] = []
        stale = 0
        logger.info(
            "Starting training",
            train_size=len(train_idx),
            val_size=len(val_idx),
            lr=cfg.lr,
            batch_size=cfg.batch_size,
            max_epochs=cfg.max_epochs,
        )

        for epoch in range(cfg.max_epochs):
            watch = Stopwatch()
            with watch.measure():
                order = rng.permutation(train_idx)
                loss_sum = 0.0
                for start in range(0, len(order), cfg.batch_size):
                    batch = order[start:start + cfg.batch_size]
                    logits, caches = model.forward(inputs[batch], train=True)
                    loss, _, grad = softmax_cross_entropy(logits, labels[batch])
                    grads = model.backward(caches, grad.astype(logits.dtype))
                    adam_step(params, grads, state)
                    loss_sum += loss * len(batch)
                train_loss = loss_sum / len(order)
                val_loss, val_accuracy = evaluate_loss(model, x_val, y_val)

            report.epochs.append(
                EpochStats(
                    epoch=epoch,
                    train_loss=train_loss,
                    val_loss=val_loss,
                    val_accuracy=val_accuracy,
                )
            )
            logger.info(
                "Epoch finished",
                epoch=epoch,
                train_loss=round(train_loss, 5),
                val_loss=round(val_loss, 5),
                val_accuracy=round(val_accuracy, 4),
            )
            performance_log("train_epoch", watch.elapsed_ms, True, {"epoch": epoch})

            if val_loss < best_loss:
                best_loss = val_loss
                best_state = [arr.copy() for arr in model.state_arrays()]
                report.best_epoch = epoch
                stale = 0
            else:
                stale += 1
                if stale >= cfg.early_stop_patience:
                    report.stopped_early = True
                    logger.info("Early stopping", epoch=epoch, best_epoch=report.best_epoch)
                    break

        if not best_state:
            logger.warning("No epoch improved validation loss", epochs=len(report.epochs))
            raise TrainingError(
                f"validation loss never became finite over {len(report.epochs)} epochs"
            )
        for arr, saved in zip(model.state_arrays(), best_state):
            arr[...] = saved
        return model, report


def train(
    records: Sequence[PairRecord],
    arch: Optional[ArchitectureSpec] = None,
    cfg: Optional[TrainConfig] = None,
) -> Tuple[Model, TrainReport]:
    """Train from label records whose frame refs are loadable paths."""
    trainer = Trainer(arch, cfg)
    check_trainable([r.label for r in records], trainer.cfg)
    inputs, labels = build_tensors(records, trainer.arch)
    return trainer.fit(inputs, labels)


def save_train_report(report: TrainReport, path: Union[str, Path]) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    df = pd.DataFrame([e.model_dump() for e in report.epochs], columns=REPORT_COLUMNS)
    df.to_csv(target, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
