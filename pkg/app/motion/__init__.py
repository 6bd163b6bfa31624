from .ncc import ncc, ncc_or_zero
from .block_match import estimate_displacement
from .warp import warp_frame
from .strain import compute_strain, save_strain_csv, save_strain_pgm

__all__ = [
    "ncc",
    "ncc_or_zero",
    "estimate_displacement",
    "warp_frame",
    "compute_strain",
    "save_strain_csv",
    "save_strain_pgm",
]
