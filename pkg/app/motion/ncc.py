from typing import Tuple

import numpy as np

from ..errors import InvalidParameterError, ZeroVarianceError


def ncc(w1: np.ndarray, w2: np.ndarray) -> float:
    """Zero-normalized cross correlation of two equally shaped windows, in [-1, 1]."""
    a = np.asarray(w1, dtype=np.float64)
    b = np.asarray(w2, dtype=np.float64)
    if a.shape != b.shape:
        raise InvalidParameterError(f"window shapes differ: {a.shape} vs {b.shape}")
    if a.size < 2:
        raise InvalidParameterError("NCC needs at least 2 samples")

    da = a - a.mean()
    db = b - b.mean()
    saa = float(np.sum(da * da))
    sbb = float(np.sum(db * db))
    if saa == 0.0 or sbb == 0.0:
        raise ZeroVarianceError("zero variance window")
    value = float(np.sum(da * db)) / np.sqrt(saa * sbb)
    return float(np.clip(value, -1.0, 1.0))


def ncc_or_zero(w1: np.ndarray, w2: np.ndarray) -> Tuple[float, bool]:
    """NCC with constant windows scored 0; the flag marks that case."""
    try:
        return ncc(w1, w2), False
    except ZeroVarianceError:
        return 0.0, True
