"""
Synthetic dataset and sequence generation.

Pairs are drawn from a "good" regime (moderate compression, little
decorrelation) or a "bad" regime (almost no motion, or strong out-of-plane
decorrelation). The regimes mark the generator's intent only; training labels
come from the oracle.
"""

from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ..errors import InvalidParameterError
from ..logging import get_logger
from ..models.rf import ManifestRow, RfFrame
from ..models.simulation import MotionSpec, PulseSpec, SequenceRow
from ..rf.io import CSV_FLOAT_FORMAT, store_frame, write_manifest
from .generator import (
    DEFAULT_DENSITY,
    analytic_displacement,
    apply_motion,
    expected_label,
    padded_field,
    render_rf,
)
from .generator import synth_pair as render_pair

logger = get_logger(__name__)

MIN_PAIRS = 10

GOOD_REGIME: Dict[str, Tuple[float, float]] = {
    "strain": (0.002, 0.02),
    "rho": (0.97, 1.0),
}

# A bad pair fails one of the two oracle gates.
BAD_REGIMES: Dict[str, Dict[str, Tuple[float, float]]] = {
    "static": {"strain": (0.0, 0.0002), "rho": GOOD_REGIME["rho"]},
    "decorrelated": {"strain": GOOD_REGIME["strain"], "rho": (0.3, 0.85)},
}

MANIFEST_NAME = "manifest.csv"
SEQUENCE_NAME = "sequence.csv"


def draw_motion(rng: np.random.Generator, good: bool) -> MotionSpec:
    if good:
        regime = GOOD_REGIME
    else:
        name = "static" if rng.random() < 0.5 else "decorrelated"
        regime = BAD_REGIMES[name]
    strain = rng.uniform(*regime["strain"])
    rho = rng.uniform(*regime["rho"])
    return MotionSpec(axial_strain=float(strain), decorrelation_rho=float(rho))


def pair_frame_names(idx: int) -> Tuple[str, str]:
    return f"pair{idx:05d}_a.rf", f"pair{idx:05d}_b.rf"


def sequence_frame_name(idx: int) -> str:
    return f"frame{idx:05d}.rf"


class DatasetGenerator:
    """Generate seeded synthetic frame pairs and sequences."""

    def __init__(
        self,
        dims: Tuple[int, int] = (512, 64),
        pulse: Optional[PulseSpec] = None,
        density: float = DEFAULT_DENSITY,
        workers: int = 1,
    ):
        self.dims = dims
        self.pulse = pulse or PulseSpec()
        self.density = density
        self.workers = max(1, workers)

    def good_indices(self, count: int, good_fraction: float, seed: int) -> set:
        n_good = int(round(count * good_fraction))
        order = np.random.default_rng(seed).permutation(count)
        return {int(i) for i in order[:n_good]}

    def _write_pair(self, idx: int, good: bool, seed: int, out_dir: Path) -> ManifestRow:
        pair_seed = seed + idx
        motion = draw_motion(np.random.default_rng(pair_seed), good)
        frame_a, frame_b, _, label = render_pair(
            self.pulse, motion, self.dims, pair_seed, self.density
        )
        name_a, name_b = pair_frame_names(idx)
        store_frame(frame_a, out_dir / name_a)
        store_frame(frame_b, out_dir / name_b)
        return ManifestRow(
            pair_id=f"pair{idx:05d}",
            frame_a=name_a,
            frame_b=name_b,
            strain=motion.axial_strain,
            rho=motion.decorrelation_rho,
            expected_label=label,
        )

    def synth_dataset(
        self, count: int, good_fraction: float, seed: int, out_dir: Path
    ) -> List[ManifestRow]:
        """Write `count` pairs plus manifest.csv; rows come back in pair order."""
        if count < MIN_PAIRS:
            raise InvalidParameterError(f"pair count must be at least {MIN_PAIRS}, got {count}")
        if not 0.0 < good_fraction < 1.0:
            raise InvalidParameterError(f"good fraction must lie in (0, 1), got {good_fraction}")

        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        good = self.good_indices(count, good_fraction, seed)
        logger.info(
            "Generating synthetic dataset",
            pairs=count,
            good=len(good),
            dims=list(self.dims),
            seed=seed,
        )

        jobs = [(idx, idx in good) for idx in range(count)]
        if self.workers == 1:
            rows = [self._write_pair(idx, g, seed, out_dir) for idx, g in jobs]
        else:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                rows = list(pool.map(lambda job: self._write_pair(job[0], job[1], seed, out_dir), jobs))

        write_manifest(rows, out_dir / MANIFEST_NAME)
        return rows

    def synth_sequence(
        self,
        length: int,
        reference_index: int,
        good_offsets: Iterable[int],
        seed: int,
    ) -> Tuple[List[RfFrame], List[SequenceRow]]:
        """
        Frames sharing one base scatterer field.

        Each non-reference frame carries its own motion relative to the
        reference, drawn from the good regime iff its offset is listed.
        """
        if length < 1:
            raise InvalidParameterError("sequence length must be at least 1")
        if not 0 <= reference_index < length:
            raise InvalidParameterError(
                f"reference index {reference_index} outside sequence of {length} frames"
            )

        good = set(good_offsets)
        axial_len, lateral_len = self.dims
        base_seq, *frame_seqs = np.random.SeedSequence(seed).spawn(length + 1)
        base = padded_field(self.dims, self.pulse, self.density, base_seq)

        frames: List[RfFrame] = []
        rows: List[SequenceRow] = []
        for idx in range(length):
            if idx == reference_index:
                frames.append(render_rf(base, self.pulse, axial_len, lateral_len, frame_id=idx))
                rows.append(SequenceRow(index=idx, strain=0.0, rho=1.0, expected_label=0))
                continue
            draw_seq, mix_seq = frame_seqs[idx].spawn(2)
            motion = draw_motion(np.random.default_rng(draw_seq), (idx - reference_index) in good)
            moved = apply_motion(base, motion, mix_seq)
            frames.append(render_rf(moved, self.pulse, axial_len, lateral_len, frame_id=idx))
            rows.append(
                SequenceRow(
                    index=idx,
                    strain=motion.axial_strain,
                    rho=motion.decorrelation_rho,
                    expected_label=expected_label(motion, analytic_displacement(motion, self.dims)),
                )
            )
        return frames, rows

    def write_sequence(
        self, frames: Sequence[RfFrame], rows: Sequence[SequenceRow], out_dir: Path
    ) -> None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for frame in frames:
            store_frame(frame, out_dir / sequence_frame_name(frame.frame_id))
        df = pd.DataFrame([r.model_dump() for r in rows], columns=list(SequenceRow.model_fields))
        df.to_csv(
            out_dir / SEQUENCE_NAME, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n"
        )


def synth_dataset(
    count: int,
    good_fraction: float,
    dims: Tuple[int, int],
    pulse: PulseSpec,
    seed: int,
    out_dir: Path,
    workers: int = 1,
) -> List[ManifestRow]:
    return DatasetGenerator(dims=dims, pulse=pulse, workers=workers).synth_dataset(
        count, good_fraction, seed, out_dir
    )


def synth_sequence(
    pulse: PulseSpec,
    dims: Tuple[int, int],
    length: int,
    reference_index: int,
    good_offsets: Iterable[int],
    seed: int,
) -> Tuple[List[RfFrame], List[SequenceRow]]:
    return DatasetGenerator(dims=dims, pulse=pulse).synth_sequence(
        length, reference_index, good_offsets, seed
    )
