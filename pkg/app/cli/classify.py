from argparse import Namespace
from pathlib import Path

from ..classifier.service import predict
from ..dependencies import Settings, get_model
from ..rf.io import load_frame
from .common import emit, emit_json


def register(subparsers) -> None:
    parser = subparsers.add_parser("classify", help="Score one frame pair with a trained model")
    parser.add_argument("--model", required=True, type=Path)
    parser.add_argument("--a", required=True, type=Path, help="First (pre-compression) frame")
    parser.add_argument("--b", required=True, type=Path, help="Second frame")
    parser.add_argument("--json", action="store_true", help="Print one JSON document")
    parser.set_defaults(handler=run)


def run(args: Namespace, settings: Settings) -> int:
    model = get_model(args.model)
    prediction = predict(model, load_frame(args.a), load_frame(args.b))
    if args.json:
        emit_json(prediction.model_dump())
    else:
        emit(
            f"p_good={prediction.p_good:.6f} p_bad={prediction.p_bad:.6f} "
            f"decision={prediction.decision}"
        )
    return 0
