from typing import List

import numpy as np

from ..errors import InvalidParameterError, ZeroVarianceError
from ..models.rf import MIN_AXIAL_LEN, RfFrame, Window, WindowGrid

MIN_WINDOW_ROWS = 16
MIN_WINDOW_COLS = 4


def downsample_axial(frame: RfFrame, factor: int) -> RfFrame:
    """Block-average `factor` consecutive axial samples; fs drops by `factor`."""
    if not isinstance(factor, (int, np.integer)) or factor < 1:
        raise InvalidParameterError(f"downsampling factor must be a positive integer, got {factor}")
    if factor == 1:
        return frame

    out_len = frame.axial_len // factor
    if out_len < MIN_AXIAL_LEN:
        raise InvalidParameterError(
            f"downsampling {frame.axial_len} rows by {factor} leaves {out_len} (< {MIN_AXIAL_LEN})"
        )
    fs_out = frame.fs_hz / factor
    if fs_out <= 2.0 * frame.f0_hz:
        raise InvalidParameterError(
            f"downsampling by {factor} drops fs to {fs_out:g} Hz, below Nyquist for f0={frame.f0_hz:g} Hz"
        )

    trimmed = frame.samples[: out_len * factor].astype(np.float64)
    blocks = trimmed.reshape(out_len, factor, frame.lateral_len).mean(axis=1)
    return frame.replace(samples=blocks.astype(np.float32), fs_hz=fs_out)


def standardize(samples: np.ndarray) -> np.ndarray:
    """Zero-mean, unit-std copy in float64."""
    values = np.asarray(samples, dtype=np.float64)
    mean = values.mean()
    std = values.std()
    if not np.isfinite(std) or std == 0.0:
        raise ZeroVarianceError("zero variance")
    return (values - mean) / std


def normalize_frame(frame: RfFrame) -> RfFrame:
    return frame.replace(samples=standardize(frame.samples).astype(np.float32))


def _split(length: int) -> List[int]:
    base = length // 3
    return [base, base, length - 2 * base]


def partition_windows(
    axial_len: int,
    lateral_len: int,
    margin_axial: int = 0,
    margin_lateral: int = 0,
) -> WindowGrid:
    """
    Tile the post-margin interior with a 3x3 grid of windows.

    Rows and columns are split into equal thirds; any remainder goes to the
    last window in that direction.
    """
    if margin_axial < 0 or margin_lateral < 0:
        raise InvalidParameterError("window margins must be non-negative")

    rows = axial_len - 2 * margin_axial
    cols = lateral_len - 2 * margin_lateral
    if rows // 3 < MIN_WINDOW_ROWS or cols // 3 < MIN_WINDOW_COLS:
        raise InvalidParameterError(
            f"interior too small: {rows}x{cols} does not admit 3x3 windows "
            f"of at least {MIN_WINDOW_ROWS}x{MIN_WINDOW_COLS}"
        )

    row_sizes = _split(rows)
    col_sizes = _split(cols)
    windows = []
    row0 = margin_axial
    for r in row_sizes:
        col0 = margin_lateral
        for c in col_sizes:
            windows.append(Window(row0=row0, col0=col0, rows=r, cols=c))
            col0 += c
        row0 += r
    return WindowGrid(windows=windows)
