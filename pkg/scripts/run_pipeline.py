#!/usr/bin/env python3
"""
Run the whole frame-selection pipeline on a fresh synthetic dataset.

simulate -> label -> train -> select, writing everything under one work
directory, then print a short summary.
"""

import argparse
import sys
from pathlib import Path

import pandas as pd

# Add the project root to the path
project_root = Path(__file__).parent.parent
sys.path.append(str(project_root))

from app.main import main as elasto  # noqa: E402


def run_step(title: str, argv: list) -> None:
    print(f"\n▶️  {title}")
    code = elasto(argv)
    if code not in (0, 4):
        raise RuntimeError(f"`elasto {argv[0]}` exited with {code}")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--work", type=Path, default=project_root / "pipeline_run")
    parser.add_argument("--pairs", type=int, default=60)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--epochs", type=int, default=10)
    args = parser.parse_args()

    data = args.work / "data"
    sequence = args.work / "sequence"
    labels = args.work / "labels.csv"
    model = args.work / "model.elsm"

    print("🩻 Elastography Frame Selection Pipeline")
    print("=" * 50)

    try:
        run_step("Generating synthetic pairs", [
            "simulate", "--out", str(data), "--pairs", str(args.pairs), "--seed", str(args.seed),
        ])
        run_step("Labeling pairs with the NCC oracle", ["label", "--in", str(data), "--out", str(labels)])
        run_step("Training the classifier", [
            "train", "--data", str(data), "--labels", str(labels), "--model", str(model),
            "--epochs", str(args.epochs), "--seed", str(args.seed),
        ])
        run_step("Generating a 17-frame sequence", [
            "simulate", "--out", str(sequence), "--sequence-length", "17", "--reference", "8",
            "--good-offset", "3", "--good-offset", "-5", "--seed", str(args.seed),
        ])
        run_step("Selecting a companion for frame 8", [
            "select", "--model", str(model), "--seq", str(sequence), "--index", "8", "--compare-skips",
        ])

        table = pd.read_csv(labels)
        report = pd.read_csv(model.with_suffix(".report.csv"))

        print("\n✅ Pipeline completed successfully!")
        print("📋 Summary:")
        print(f"   - Pairs: {len(table)} ({int(table['label'].sum())} suitable)")
        print(f"   - Epochs run: {len(report)}")
        print(f"   - Best validation accuracy: {report['val_accuracy'].max():.3f}")
        print(f"📁 Outputs in {args.work}")

    except Exception as e:
        print(f"❌ Error during pipeline run: {e}")
        return 1

    return 0


if __name__ == "__main__":
    sys.exit(main())
