from argparse import Namespace
from pathlib import Path

import numpy as np

from ..dependencies import Settings
from ..models.motion import BlockMatchConfig
from ..motion.block_match import estimate_displacement
from ..motion.strain import compute_strain, save_strain_csv, save_strain_pgm
from ..rf.io import load_frame
from .common import emit, positive_int


def register(subparsers) -> None:
    parser = subparsers.add_parser("strain", help="Estimate an axial strain image for a frame pair")
    parser.add_argument("--a", required=True, type=Path)
    parser.add_argument("--b", required=True, type=Path)
    parser.add_argument("--out", required=True, type=Path, help="8-bit PGM image")
    parser.add_argument("--csv", type=Path, default=None, help="Raw strain values")
    parser.add_argument("--ls-window", type=positive_int, default=None,
                        help="Least-squares window in samples (odd, default 63)")
    parser.set_defaults(handler=run)


def run(args: Namespace, settings: Settings) -> int:
    a, b = load_frame(args.a), load_frame(args.b)
    disp = estimate_displacement(a, b, BlockMatchConfig())
    strain = compute_strain(disp, args.ls_window or settings.ls_window)

    save_strain_pgm(strain, args.out)
    if args.csv is not None:
        save_strain_csv(strain, args.csv)

    rows, cols = strain.values.shape
    emit(f"rows={rows} cols={cols} median_strain={float(np.median(strain.values)):.6f}")
    return 0
