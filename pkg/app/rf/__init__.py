from .io import (
    load_frame,
    store_frame,
    read_labels,
    write_labels,
    read_manifest,
    write_manifest,
)
from .processing import downsample_axial, normalize_frame, partition_windows, standardize

__all__ = [
    "load_frame",
    "store_frame",
    "read_labels",
    "write_labels",
    "read_manifest",
    "write_manifest",
    "downsample_axial",
    "normalize_frame",
    "partition_windows",
    "standardize",
]
