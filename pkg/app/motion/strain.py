from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd
from numpy.lib.stride_tricks import sliding_window_view
from PIL import Image
from scipy.signal import savgol_coeffs

from ..errors import InvalidParameterError
from ..models.motion import DisplacementField, StrainImage

DEFAULT_LS_WINDOW = 63


def compute_strain(disp: DisplacementField, window_len: int = DEFAULT_LS_WINDOW) -> StrainImage:
    """
    Axial strain as the least-squares slope of axial displacement per column.

    Only fully covered windows are kept, so the image has window_len - 1
    fewer rows than the displacement field.
    """
    axial_len = disp.shape[0]
    if window_len < 3 or window_len % 2 == 0 or window_len > axial_len // 4:
        raise InvalidParameterError(
            f"least-squares window must be odd, >= 3 and <= {axial_len // 4}; got {window_len}"
        )

    slope = savgol_coeffs(window_len, 1, deriv=1, use="dot")
    windows = sliding_window_view(disp.axial, window_len, axis=0)
    return StrainImage(values=windows @ slope, window_len=window_len)


def strain_to_uint8(strain: StrainImage) -> np.ndarray:
    """Min-max scale to 0..255; a flat image maps to 0."""
    values = strain.values
    lo, hi = float(values.min()), float(values.max())
    if hi <= lo:
        return np.zeros(values.shape, dtype=np.uint8)
    scaled = np.rint((values - lo) / (hi - lo) * 255.0)
    return scaled.astype(np.uint8)


def save_strain_pgm(strain: StrainImage, path: Union[str, Path]) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(strain_to_uint8(strain)).save(target, format="PPM")


def save_strain_csv(strain: StrainImage, path: Union[str, Path]) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(strain.values).to_csv(
        target, header=False, index=False, float_format="%.8e", lineterminator="\n"
    )
