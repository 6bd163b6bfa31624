from argparse import Namespace
from pathlib import Path

from ..dependencies import Settings
from ..errors import InvalidParameterError
from ..logging import get_logger
from ..models.rf import MIN_AXIAL_LEN, MIN_LATERAL_LEN
from ..models.simulation import PulseSpec
from ..simulation.dataset import DatasetGenerator
from ..simulation.generator import DEFAULT_DENSITY
from .common import emit, open_fraction, positive_int, resolve_seed

logger = get_logger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("simulate", help="Generate synthetic RF pairs or a frame sequence")
    parser.add_argument("--out", required=True, type=Path, help="Output directory")
    parser.add_argument("--pairs", type=positive_int, help="Number of frame pairs")
    parser.add_argument("--good-fraction", type=open_fraction, default=0.5)
    parser.add_argument("--axial", type=positive_int, default=512, help="Samples per scan line")
    parser.add_argument("--lateral", type=positive_int, default=64, help="Scan lines")
    parser.add_argument("--density", type=float, default=DEFAULT_DENSITY, help="Scatterers per resolution cell")
    parser.add_argument("--seed", type=int, default=None, help="Defaults to ELASTO_SEED")
    parser.add_argument("--workers", type=positive_int, default=None)
    parser.add_argument("--sequence-length", type=positive_int, default=None,
                        help="Write frame{idx}.rf sequence files instead of pairs")
    parser.add_argument("--reference", type=int, default=None, help="Sequence reference index")
    parser.add_argument("--good-offset", type=int, action="append", default=[],
                        help="Offset from the reference drawn from the good regime (repeatable)")
    parser.set_defaults(handler=run)


def run(args: Namespace, settings: Settings) -> int:
    seed = resolve_seed(args.seed, settings)
    if args.axial < MIN_AXIAL_LEN or args.lateral < MIN_LATERAL_LEN:
        raise InvalidParameterError(
            f"frames must be at least {MIN_AXIAL_LEN}x{MIN_LATERAL_LEN}, got {args.axial}x{args.lateral}"
        )
    if args.density <= 0:
        raise InvalidParameterError("--density must be positive")

    generator = DatasetGenerator(
        dims=(args.axial, args.lateral),
        pulse=PulseSpec(),
        density=args.density,
        workers=args.workers or settings.workers,
    )

    if args.sequence_length is not None:
        reference = args.sequence_length // 2 if args.reference is None else args.reference
        frames, rows = generator.synth_sequence(args.sequence_length, reference, args.good_offset, seed)
        generator.write_sequence(frames, rows, args.out)
        good = sum(r.expected_label for r in rows)
        emit(f"frames={len(frames)} reference={reference} good={good} seed={seed}")
        return 0

    if args.pairs is None:
        raise InvalidParameterError("--pairs is required unless --sequence-length is given")
    rows = generator.synth_dataset(args.pairs, args.good_fraction, seed, args.out)
    good = len(generator.good_indices(args.pairs, args.good_fraction, seed))
    logger.info("Dataset written", out=str(args.out), pairs=len(rows), good=good)
    emit(f"pairs={len(rows)} good={good} seed={seed}")
    return 0
