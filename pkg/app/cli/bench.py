"""
Timing of classifier inference against the full oracle on one pair.

Classifier time is itemized into preprocessing and the forward pass; the
oracle is itemized by step.
"""

from argparse import Namespace
from pathlib import Path
from typing import Dict, List

import numpy as np

from ..classifier.network import architecture_of
from ..classifier.preprocess import preprocess_pair
from ..classifier.service import predict_tensor
from ..dependencies import Settings, get_model
from ..errors import InvalidParameterError
from ..logging.performance import Stopwatch, performance_log
from ..oracle.service import FrameOracle
from ..rf.io import load_frame
from .common import emit, emit_json, positive_int

MIN_REPEAT = 3


def register(subparsers) -> None:
    parser = subparsers.add_parser("bench", help="Compare classifier and oracle wall time")
    parser.add_argument("--model", required=True, type=Path)
    parser.add_argument("--a", required=True, type=Path)
    parser.add_argument("--b", required=True, type=Path)
    parser.add_argument("--repeat", type=positive_int, default=5, help="Runs per measurement (>= 3)")
    parser.add_argument("--json", action="store_true")
    parser.set_defaults(handler=run)


def _median(values: List[float]) -> float:
    return float(np.median(values))


def run(args: Namespace, settings: Settings) -> int:
    if args.repeat < MIN_REPEAT:
        raise InvalidParameterError(f"--repeat must be at least {MIN_REPEAT} to report a median")

    model = get_model(args.model)
    arch = architecture_of(model)
    a, b = load_frame(args.a), load_frame(args.b)
    oracle = FrameOracle()

    timings: Dict[str, List[float]] = {
        key: []
        for key in ("preprocess_ms", "forward_ms", "classify_ms", "oracle_ms",
                    "displacement_ms", "warp_ms", "ncc_ms", "decision_ms")
    }
    for _ in range(args.repeat):
        prep, fwd = Stopwatch(), Stopwatch()
        with prep.measure():
            inputs = preprocess_pair(a, b, arch)
        with fwd.measure():
            predict_tensor(model, inputs)
        timings["preprocess_ms"].append(prep.elapsed_ms)
        timings["forward_ms"].append(fwd.elapsed_ms)
        timings["classify_ms"].append(prep.elapsed_ms + fwd.elapsed_ms)

        _, step_times = oracle.evaluate_pair_timed(a, b)
        timings["oracle_ms"].append(step_times.total_ms)
        for key in ("displacement_ms", "warp_ms", "ncc_ms", "decision_ms"):
            timings[key].append(getattr(step_times, key))

    medians = {key: _median(values) for key, values in timings.items()}
    speedup = medians["oracle_ms"] / medians["classify_ms"] if medians["classify_ms"] > 0 else float("inf")
    performance_log("bench", medians["oracle_ms"] + medians["classify_ms"], True,
                    {"repeat": args.repeat, "speedup": round(speedup, 2), "shape": list(a.shape)})

    if args.json:
        emit_json({"repeat": args.repeat, "shape": list(a.shape), **medians, "speedup": speedup})
        return 0

    emit(
        f"classify_ms={medians['classify_ms']:.3f} "
        f"(preprocess_ms={medians['preprocess_ms']:.3f} forward_ms={medians['forward_ms']:.3f})"
    )
    emit(
        f"oracle_ms={medians['oracle_ms']:.3f} "
        f"(displacement_ms={medians['displacement_ms']:.3f} warp_ms={medians['warp_ms']:.3f} "
        f"ncc_ms={medians['ncc_ms']:.3f} decision_ms={medians['decision_ms']:.3f})"
    )
    emit(f"speedup={speedup:.1f}")
    return 0
