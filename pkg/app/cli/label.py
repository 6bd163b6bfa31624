import sys
from argparse import Namespace
from pathlib import Path

from ..dependencies import Settings
from ..errors import MissingFramesError
from ..logging import get_logger
from ..oracle.service import FrameOracle
from ..simulation.dataset import MANIFEST_NAME
from .common import emit, positive_int

logger = get_logger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("label", help="Label frame pairs with the NCC oracle")
    parser.add_argument("--in", dest="in_dir", required=True, type=Path, help="Dataset directory with manifest.csv")
    parser.add_argument("--out", required=True, type=Path, help="Labels CSV")
    parser.add_argument("--ncc-threshold", type=float, default=None)
    parser.add_argument("--disp-threshold", type=float, default=None)
    parser.add_argument("--workers", type=positive_int, default=None)
    parser.add_argument("--report-dir", type=Path, default=None, help="Per-pair JSON reports")
    parser.set_defaults(handler=run)


def run(args: Namespace, settings: Settings) -> int:
    oracle = FrameOracle(
        ncc_threshold=settings.ncc_threshold if args.ncc_threshold is None else args.ncc_threshold,
        disp_threshold=settings.disp_threshold if args.disp_threshold is None else args.disp_threshold,
    )
    result = oracle.label_dataset(
        args.in_dir / MANIFEST_NAME,
        args.out,
        workers=args.workers or settings.workers,
        progress=settings.progress,
        report_dir=args.report_dir,
    )
    emit(f"pairs={len(result.records)} good={result.positives} skipped={len(result.skipped)}")

    if result.skipped:
        for skipped in result.skipped:
            print(
                f"skipped {skipped.pair_id}: {skipped.reason} ({', '.join(skipped.missing)})",
                file=sys.stderr,
            )
        error = MissingFramesError(
            f"{len(result.skipped)} pair(s) skipped", [s.pair_id for s in result.skipped]
        )
        logger.error("Labeling incomplete", skipped=error.missing)
        return error.exit_code
    return 0
