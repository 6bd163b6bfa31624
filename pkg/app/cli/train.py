from argparse import Namespace
from pathlib import Path

from ..classifier.training import load_labeled_pairs, save_train_report, train
from ..dependencies import Settings
from ..errors import InvalidParameterError
from ..models.classifier import ArchitectureSpec, TrainConfig
from ..nn.serialization import save_model
from .common import emit, positive_int, resolve_seed


def register(subparsers) -> None:
    parser = subparsers.add_parser("train", help="Train the frame-pair classifier")
    parser.add_argument("--data", required=True, type=Path, help="Directory holding the frames")
    parser.add_argument("--labels", required=True, type=Path, help="Labels CSV from `label`")
    parser.add_argument("--model", required=True, type=Path, help="Output .elsm model")
    parser.add_argument("--report", type=Path, default=None,
                        help="Training report CSV (default: <model>.report.csv)")
    parser.add_argument("--lr", type=float, default=1e-3)
    parser.add_argument("--epochs", type=positive_int, default=30)
    parser.add_argument("--batch-size", type=positive_int, default=16)
    parser.add_argument("--seed", type=int, default=None, help="Defaults to ELASTO_SEED")
    parser.add_argument("--bn-before-relu", action="store_true",
                        help="Use conv -> BN -> ReLU instead of conv -> ReLU -> BN")
    parser.set_defaults(handler=run)


def run(args: Namespace, settings: Settings) -> int:
    if args.lr < 0:
        raise InvalidParameterError("--lr must not be negative")
    if args.batch_size < 2:
        raise InvalidParameterError("--batch-size must be at least 2 for batch normalization")
    cfg = TrainConfig(
        lr=args.lr,
        max_epochs=args.epochs,
        batch_size=args.batch_size,
        seed=resolve_seed(args.seed, settings),
    )
    arch = ArchitectureSpec(bn_before_relu=args.bn_before_relu)
    records = load_labeled_pairs(args.labels, args.data)
    model, report = train(records, arch, cfg)

    save_model(model, args.model)
    report_path = args.report or args.model.with_suffix(".report.csv")
    save_train_report(report, report_path)

    best = report.best
    accuracy = f"{best.val_accuracy:.4f}" if best else "nan"
    emit(
        f"epochs={len(report.epochs)} best_epoch={report.best_epoch} "
        f"best_val_accuracy={accuracy}"
    )
    return 0
