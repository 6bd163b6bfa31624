from argparse import Namespace
from pathlib import Path
from typing import Any, Dict, Optional

from ..dependencies import Settings, get_model
from ..models.oracle import NccReport
from ..selection.selector import FrameSequence, compare_with_skip, select_frame
from .common import emit_json, non_negative_int, positive_int

ABSTAIN_EXIT_CODE = 4


def register(subparsers) -> None:
    parser = subparsers.add_parser("select", help="Pick the best companion frame around a reference")
    parser.add_argument("--model", required=True, type=Path)
    parser.add_argument("--seq", required=True, type=Path, help="Directory of frame{idx:05}.rf files")
    parser.add_argument("--index", required=True, type=non_negative_int, help="Reference frame index")
    parser.add_argument("--window", type=positive_int, default=None, help="Half-width (default 8)")
    parser.add_argument("--json", action="store_true", help="Single-line JSON output")
    parser.add_argument("--compare-skips", action="store_true",
                        help="Also score the selected and skip-1/skip-2 pairs with the oracle")
    parser.set_defaults(handler=run)


def _report_summary(partner: Optional[int], report: Optional[NccReport]) -> Dict[str, Any]:
    if report is None:
        return {"partner": partner, "available": False}
    return {
        "partner": partner,
        "available": True,
        "min_ncc": report.min_ncc,
        "mean_abs_disp": report.mean_abs_disp_samples,
        "decision": report.decision,
    }


def run(args: Namespace, settings: Settings) -> int:
    model = get_model(args.model)
    frames = FrameSequence.from_directory(args.seq)
    window = args.window or settings.window

    if args.compare_skips:
        comparison = compare_with_skip(model, frames, args.index, window)
        result = comparison.selection
        document = result.to_json_dict()
        document["baselines"] = {
            "selected": _report_summary(result.best_index, comparison.selected_report),
            **{
                f"skip{skip}": _report_summary(comparison.skip_partners[skip], report)
                for skip, report in comparison.skip_reports.items()
            },
        }
    else:
        result = select_frame(model, frames, args.index, window)
        document = result.to_json_dict()

    emit_json(document, pretty=not args.json)
    return ABSTAIN_EXIT_CODE if result.abstained else 0
