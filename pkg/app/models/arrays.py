"""Helpers for carrying numpy arrays inside pydantic models."""

from typing import Any

import numpy as np


def frozen_array(value: Any, dtype: Any, ndim: int, name: str) -> np.ndarray:
    """Copy `value` into a read-only, C-contiguous array of the given dtype."""
    arr = np.array(value, dtype=dtype, order="C", copy=True)
    if arr.ndim != ndim:
        raise ValueError(f"{name} must be {ndim}-D, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


def require_finite(arr: np.ndarray, name: str) -> np.ndarray:
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr
