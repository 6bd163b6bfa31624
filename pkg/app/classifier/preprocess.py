from typing import Sequence, Tuple

import numpy as np

from ..errors import DataFormatError, InvalidParameterError
from ..models.classifier import ArchitectureSpec
from ..models.rf import RfFrame
from ..rf.processing import downsample_axial, standardize

AXIAL_DOWNSAMPLE = 2


def area_matrix(src: int, dst: int) -> np.ndarray:
    """(dst, src) matrix averaging source cells over each destination cell."""
    edges = np.arange(dst + 1) * (src / dst)
    lo, hi = edges[:-1, None], edges[1:, None]
    cells = np.arange(src)[None, :]
    overlap = np.clip(np.minimum(hi, cells + 1) - np.maximum(lo, cells), 0.0, None)
    return overlap / (src / dst)


def resize_area(samples: np.ndarray, out_h: int, out_w: int) -> np.ndarray:
    h, w = samples.shape
    if h < out_h or w < out_w:
        raise DataFormatError(f"frame {h}x{w} is below the model input {out_h}x{out_w}")
    if (h, w) == (out_h, out_w):
        return samples
    return area_matrix(h, out_h) @ samples @ area_matrix(w, out_w).T


def preprocess_frame(frame: RfFrame, model_h: int, model_w: int) -> np.ndarray:
    """Axial factor-2 downsample, standardize, area-resize to the model input."""
    try:
        reduced = downsample_axial(frame, AXIAL_DOWNSAMPLE)
    except InvalidParameterError as e:
        raise DataFormatError(f"frame cannot be preprocessed: {e}") from e
    return resize_area(standardize(reduced.samples), model_h, model_w).astype(np.float32)


def preprocess_pair(a: RfFrame, b: RfFrame, spec: ArchitectureSpec) -> np.ndarray:
    """(1, 2, model_h, model_w) tensor; frame a on channel 0, frame b on channel 1."""
    if a.shape != b.shape:
        raise DataFormatError(f"frame shapes differ: {a.shape} vs {b.shape}")
    channels = [preprocess_frame(f, spec.model_h, spec.model_w) for f in (a, b)]
    return np.stack(channels)[None, ...]


def preprocess_pairs(
    pairs: Sequence[Tuple[RfFrame, RfFrame]], spec: ArchitectureSpec
) -> np.ndarray:
    if not pairs:
        return np.zeros((0, 2, spec.model_h, spec.model_w), dtype=np.float32)
    return np.concatenate([preprocess_pair(a, b, spec) for a, b in pairs], axis=0)
