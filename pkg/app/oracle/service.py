"""
Frame-pair quality oracle.

Displacement is estimated by block matching, frame b is warped back onto
frame a, and NCC is measured on a 3x3 grid of windows. A pair is suitable
when its worst window stays correlated and it shows real axial motion.
"""

import json
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np
from tqdm import tqdm

from ..errors import FrameFormatError
from ..logging import get_logger
from ..logging.audit import audit_log
from ..logging.performance import Stopwatch, performance_log
from ..models.motion import BlockMatchConfig
from ..models.oracle import LabelingResult, NccReport, OracleTiming, SkippedPair
from ..models.rf import ManifestRow, PairRecord, PairSource, RfFrame
from ..motion.block_match import estimate_displacement
from ..motion.ncc import ncc_or_zero
from ..motion.warp import warp_frame
from ..rf.io import load_frame, read_manifest, write_labels
from ..rf.processing import partition_windows

logger = get_logger(__name__)

NCC_THRESHOLD = 0.9
DISP_THRESHOLD = 0.5


def decide(
    min_ncc: float,
    mean_abs_disp_samples: float,
    ncc_threshold: float = NCC_THRESHOLD,
    disp_threshold: float = DISP_THRESHOLD,
) -> int:
    """1 iff both gates pass with strict inequality."""
    return int(min_ncc > ncc_threshold and mean_abs_disp_samples > disp_threshold)


class FrameOracle:
    """Labels frame pairs; one instance is safe to share across worker threads."""

    def __init__(
        self,
        match_cfg: Optional[BlockMatchConfig] = None,
        ncc_threshold: float = NCC_THRESHOLD,
        disp_threshold: float = DISP_THRESHOLD,
    ):
        self.match_cfg = match_cfg or BlockMatchConfig()
        self.ncc_threshold = ncc_threshold
        self.disp_threshold = disp_threshold

    def evaluate_pair(self, a: RfFrame, b: RfFrame) -> NccReport:
        report, _ = self.evaluate_pair_timed(a, b)
        return report

    def evaluate_pair_timed(self, a: RfFrame, b: RfFrame) -> Tuple[NccReport, OracleTiming]:
        cfg = self.match_cfg
        displacement_watch, warp_watch, ncc_watch, decision_watch = (
            Stopwatch(),
            Stopwatch(),
            Stopwatch(),
            Stopwatch(),
        )

        with displacement_watch.measure():
            disp = estimate_displacement(a, b, cfg)

        with warp_watch.measure():
            warped, inside = warp_frame(b, disp)

        with ncc_watch.measure():
            region = disp.valid_mask & inside
            grid = partition_windows(a.axial_len, a.lateral_len, *cfg.margins)
            a64 = a.samples.astype(np.float64)
            w64 = warped.samples.astype(np.float64)
            window_nccs: List[float] = []
            degenerate: List[int] = []
            for i, window in enumerate(grid.windows):
                mask = region[window.slices]
                value, flat = 0.0, True
                if mask.sum() >= 2:
                    value, flat = ncc_or_zero(a64[window.slices][mask], w64[window.slices][mask])
                window_nccs.append(value)
                if flat:
                    degenerate.append(i)

        with decision_watch.measure():
            min_ncc = min(window_nccs)
            mean_abs_disp = disp.mean_abs_axial(inside)
            decision = decide(min_ncc, mean_abs_disp, self.ncc_threshold, self.disp_threshold)

        report = NccReport(
            window_nccs=window_nccs,
            min_ncc=min_ncc,
            mean_abs_disp_samples=mean_abs_disp,
            decision=decision,
            degenerate_windows=degenerate,
        )
        timing = OracleTiming(
            displacement_ms=displacement_watch.elapsed_ms,
            warp_ms=warp_watch.elapsed_ms,
            ncc_ms=ncc_watch.elapsed_ms,
            decision_ms=decision_watch.elapsed_ms,
        )
        if degenerate:
            logger.warning("Constant NCC windows scored as 0", windows=degenerate)
        return report, timing

    def _label_row(
        self, row: ManifestRow, data_dir: Path, source: PairSource
    ) -> Tuple[Optional[PairRecord], Optional[SkippedPair], Optional[NccReport]]:
        frames = []
        missing = []
        for name in (row.frame_a, row.frame_b):
            try:
                frames.append(load_frame(data_dir / name))
            except FrameFormatError as e:
                missing.append(name)
                logger.warning("Frame could not be loaded", pair_id=row.pair_id, frame=name, error=str(e))
        if missing:
            return None, SkippedPair(pair_id=row.pair_id, missing=missing, reason="unloadable frames"), None

        start = time.perf_counter()
        report = self.evaluate_pair(frames[0], frames[1])
        elapsed_ms = (time.perf_counter() - start) * 1000.0

        logger.info(
            "Pair labeled",
            pair_id=row.pair_id,
            min_ncc=round(report.min_ncc, 4),
            mean_abs_disp=round(report.mean_abs_disp_samples, 3),
            decision=report.decision,
            wall_ms=round(elapsed_ms, 1),
        )
        performance_log("oracle_evaluate_pair", elapsed_ms, True, {"pair_id": row.pair_id})
        audit_log(
            "pair_labeled",
            pair_id=row.pair_id,
            details={
                "window_nccs": report.window_nccs,
                "ncc_threshold": self.ncc_threshold,
                "disp_threshold": self.disp_threshold,
                "label": report.decision,
            },
        )

        record = PairRecord(
            pair_id=row.pair_id,
            frame_a_ref=row.frame_a,
            frame_b_ref=row.frame_b,
            label=report.decision,
            min_ncc=report.min_ncc,
            mean_abs_disp_samples=report.mean_abs_disp_samples,
            source=source,
        )
        return record, None, report

    def label_dataset(
        self,
        manifest: Union[str, Path],
        out: Union[str, Path],
        workers: int = 1,
        progress: bool = False,
        report_dir: Optional[Union[str, Path]] = None,
        source: PairSource = PairSource.SYNTHETIC,
    ) -> LabelingResult:
        """
        Label every manifest row and write the labels CSV.

        Frames resolve relative to the manifest's directory. Rows with
        unloadable frames are skipped and listed in the result.
        """
        manifest_path = Path(manifest)
        rows = read_manifest(manifest_path)
        data_dir = manifest_path.parent
        logger.info("Labeling dataset", manifest=str(manifest_path), pairs=len(rows), workers=workers)

        bar = tqdm(total=len(rows), desc="labeling", unit="pair", disable=not progress)
        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            outcomes = []
            for outcome in pool.map(lambda r: self._label_row(r, data_dir, source), rows):
                outcomes.append(outcome)
                bar.update(1)
        bar.close()

        result = LabelingResult()
        for record, skipped, report in outcomes:
            if skipped is not None:
                result.skipped.append(skipped)
                continue
            result.records.append(record)
            if report_dir is not None:
                write_pair_report(record.pair_id, report, report_dir)

        write_labels(result.records, out)
        audit_log(
            "dataset_labeled",
            artifact=str(out),
            details={
                "pairs": len(result.records),
                "positives": result.positives,
                "skipped": [s.pair_id for s in result.skipped],
            },
        )
        return result


def write_pair_report(pair_id: str, report: NccReport, report_dir: Union[str, Path]) -> Path:
    target = Path(report_dir) / f"{pair_id}.json"
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(json.dumps({"pair_id": pair_id, **report.model_dump()}, sort_keys=True) + "\n")
    return target


def evaluate_pair(
    a: RfFrame, b: RfFrame, match_cfg: Optional[BlockMatchConfig] = None
) -> NccReport:
    return FrameOracle(match_cfg).evaluate_pair(a, b)


def evaluate_pair_timed(
    a: RfFrame, b: RfFrame, match_cfg: Optional[BlockMatchConfig] = None
) -> Tuple[NccReport, OracleTiming]:
    return FrameOracle(match_cfg).evaluate_pair_timed(a, b)


def label_dataset(
    manifest: Union[str, Path],
    match_cfg: Optional[BlockMatchConfig],
    out: Union[str, Path],
    **kwargs,
) -> LabelingResult:
    return FrameOracle(match_cfg).label_dataset(manifest, out, **kwargs)
