from typing import List, Sequence

import numpy as np
from sklearn.metrics import accuracy_score, confusion_matrix, precision_recall_fscore_support

from ..errors import InvalidParameterError
from ..models.classifier import Metrics, Prediction
from ..models.rf import PairRecord, RfFrame
from ..nn.functional import softmax
from ..nn.model import Model
from ..rf.io import load_frame
from .network import GOOD_CLASS, architecture_of
from .preprocess import preprocess_pair

PREDICT_CHUNK = 32


def to_prediction(probs: np.ndarray) -> Prediction:
    p_good = float(probs[GOOD_CLASS])
    return Prediction(p_good=p_good, p_bad=float(probs[1 - GOOD_CLASS]), decision=int(p_good > 0.5))


def predict_tensor(model: Model, inputs: np.ndarray) -> List[Prediction]:
    """Inference-mode predictions for a preprocessed (n, 2, h, w) batch."""
    predictions = []
    for start in range(0, inputs.shape[0], PREDICT_CHUNK):
        logits, _ = model.forward(inputs[start:start + PREDICT_CHUNK], train=False)
        probs = softmax(logits.astype(np.float64))
        predictions.extend(to_prediction(row) for row in probs)
    return predictions


def predict(model: Model, a: RfFrame, b: RfFrame) -> Prediction:
    return predict_tensor(model, preprocess_pair(a, b, architecture_of(model)))[0]


def compute_metrics(decisions: Sequence[int], labels: Sequence[int]) -> Metrics:
    """Binary metrics with label 1 (suitable) as the positive class."""
    if len(decisions) == 0:
        raise InvalidParameterError("cannot evaluate an empty set")
    if len(decisions) != len(labels):
        raise InvalidParameterError("decisions and labels differ in length")

    y_true = np.asarray(labels, dtype=int)
    y_pred = np.asarray(decisions, dtype=int)
    tn, fp, fn, tp = confusion_matrix(y_true, y_pred, labels=[0, 1]).ravel()
    precision, recall, f1, _ = precision_recall_fscore_support(
        y_true, y_pred, labels=[1], average=None, zero_division=0
    )
    return Metrics(
        accuracy=float(accuracy_score(y_true, y_pred)),
        precision=float(precision[0]),
        recall=float(recall[0]),
        f1=float(f1[0]),
        tp=int(tp),
        fp=int(fp),
        fn=int(fn),
        tn=int(tn),
        f1_defined=bool(tp + fp + fn > 0),
    )


def evaluate(model: Model, records: Sequence[PairRecord]) -> Metrics:
    """Metrics of the model's decisions against the records' oracle labels."""
    if not records:
        raise InvalidParameterError("cannot evaluate an empty set")
    arch = architecture_of(model)
    decisions: List[int] = []
    for start in range(0, len(records), PREDICT_CHUNK):
        chunk = records[start:start + PREDICT_CHUNK]
        inputs = np.concatenate(
            [preprocess_pair(load_frame(r.frame_a_ref), load_frame(r.frame_b_ref), arch) for r in chunk],
            axis=0,
        )
        decisions.extend(p.decision for p in predict_tensor(model, inputs))
    return compute_metrics(decisions, [r.label for r in records])
