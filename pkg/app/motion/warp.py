from typing import Tuple

import numpy as np
from scipy import ndimage

from ..errors import InvalidParameterError
from ..models.motion import DisplacementField
from ..models.rf import RfFrame


def warp_frame(b: RfFrame, disp: DisplacementField) -> Tuple[RfFrame, np.ndarray]:
    """
    Resample b at (z + axial, x + lateral) with bilinear interpolation.

    Returns the warped frame and a mask that is False where the sample
    position fell outside b; those samples are set to 0.
    """
    if disp.shape != b.shape:
        raise InvalidParameterError(
            f"displacement shape {disp.shape} does not match frame shape {b.shape}"
        )
    axial_len, lateral_len = b.shape
    z, x = np.meshgrid(
        np.arange(axial_len, dtype=np.float64),
        np.arange(lateral_len, dtype=np.float64),
        indexing="ij",
    )
    zz = z + disp.axial
    xx = x + disp.lateral
    inside = (zz >= 0.0) & (zz <= axial_len - 1) & (xx >= 0.0) & (xx <= lateral_len - 1)

    warped = ndimage.map_coordinates(
        b.samples.astype(np.float64), [zz, xx], order=1, mode="nearest"
    )
    warped[~inside] = 0.0
    return b.replace(samples=warped.astype(np.float32)), inside
