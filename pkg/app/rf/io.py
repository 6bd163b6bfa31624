"""
Readers and writers for `.rf` frames and the pipeline's CSV tables.

`.rf` layout (little-endian): magic "RFF1", u32 axial_len, u32 lateral_len,
f32 fs_hz, f32 f0_hz, u32 frame_id, then axial_len * lateral_len f32 samples
in row-major order with axial rows leading.
"""

import struct
from pathlib import Path
from typing import List, Sequence, Union

import numpy as np
import pandas as pd
from pydantic import ValidationError

from ..errors import DataFormatError, FrameFormatError
from ..models.rf import ManifestRow, PairRecord, PairSource, RfFrame

PathLike = Union[str, Path]

RF_MAGIC = b"RFF1"
RF_HEADER = struct.Struct("<4sIIffI")
SAMPLE_DTYPE = np.dtype("<f4")

LABEL_COLUMNS = ["pair_id", "frame_a", "frame_b", "min_ncc", "mean_abs_disp", "label"]
MANIFEST_COLUMNS = ["pair_id", "frame_a", "frame_b", "strain", "rho", "expected_label"]
CSV_FLOAT_FORMAT = "%.6f"


def encode_frame(frame: RfFrame) -> bytes:
    samples = np.asarray(frame.samples, dtype=SAMPLE_DTYPE)
    if not np.all(np.isfinite(samples)):
        raise FrameFormatError("frame contains non-finite samples")
    header = RF_HEADER.pack(
        RF_MAGIC,
        frame.axial_len,
        frame.lateral_len,
        frame.fs_hz,
        frame.f0_hz,
        frame.frame_id,
    )
    return header + samples.tobytes(order="C")


def decode_frame(payload: bytes, source: str = "<bytes>") -> RfFrame:
    if len(payload) < RF_HEADER.size:
        raise FrameFormatError(f"{source}: file shorter than the .rf header")
    magic, axial_len, lateral_len, fs_hz, f0_hz, frame_id = RF_HEADER.unpack_from(payload)
    if magic != RF_MAGIC:
        raise FrameFormatError(f"{source}: bad magic {magic!r}")

    body = payload[RF_HEADER.size:]
    expected = axial_len * lateral_len * SAMPLE_DTYPE.itemsize
    if len(body) != expected:
        raise FrameFormatError(
            f"{source}: payload size mismatch "
            f"(header declares {axial_len}x{lateral_len}, payload holds "
            f"{len(body) / SAMPLE_DTYPE.itemsize:g} values)"
        )

    samples = np.frombuffer(body, dtype=SAMPLE_DTYPE).reshape(axial_len, lateral_len)
    if not np.all(np.isfinite(samples)):
        raise FrameFormatError(f"{source}: non-finite samples")

    try:
        return RfFrame(samples=samples, fs_hz=fs_hz, f0_hz=f0_hz, frame_id=frame_id)
    except ValidationError as e:
        raise FrameFormatError(f"{source}: invalid frame metadata: {e}") from e


def store_frame(frame: RfFrame, path: PathLike) -> None:
    """Write a frame; the whole file is encoded before anything touches disk."""
    payload = encode_frame(frame)
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_bytes(payload)


def load_frame(path: PathLike) -> RfFrame:
    source = Path(path)
    if not source.is_file():
        raise FrameFormatError(f"frame file not found: {source}")
    return decode_frame(source.read_bytes(), source=str(source))


# --- CSV tables -----------------------------------------------------------


def _read_csv(path: PathLike, columns: Sequence[str], kind: str) -> pd.DataFrame:
    source = Path(path)
    if not source.is_file():
        raise DataFormatError(f"{kind} not found: {source}")
    try:
        df = pd.read_csv(
            source, dtype={"pair_id": str, "frame_a": str, "frame_b": str}
        )
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise DataFormatError(f"{kind} {source} is not valid CSV: {e}") from e
    missing = [c for c in columns if c not in df.columns]
    if missing:
        raise DataFormatError(f"{kind} {source} lacks columns {missing}")
    return df


def _write_csv(df: pd.DataFrame, path: PathLike) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(target, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")


def write_manifest(rows: Sequence[ManifestRow], path: PathLike) -> None:
    df = pd.DataFrame([r.model_dump() for r in rows], columns=MANIFEST_COLUMNS)
    _write_csv(df, path)


def read_manifest(path: PathLike) -> List[ManifestRow]:
    df = _read_csv(path, MANIFEST_COLUMNS, "manifest")
    try:
        return [ManifestRow(**row) for row in df[MANIFEST_COLUMNS].to_dict("records")]
    except ValidationError as e:
        raise DataFormatError(f"manifest {path} has invalid rows: {e}") from e


def write_labels(records: Sequence[PairRecord], path: PathLike) -> None:
    df = pd.DataFrame(
        [
            {
                "pair_id": r.pair_id,
                "frame_a": r.frame_a_ref,
                "frame_b": r.frame_b_ref,
                "min_ncc": r.min_ncc,
                "mean_abs_disp": r.mean_abs_disp_samples,
                "label": r.label,
            }
            for r in records
        ],
        columns=LABEL_COLUMNS,
    )
    _write_csv(df, path)


def read_labels(path: PathLike, source: PairSource = PairSource.SYNTHETIC) -> List[PairRecord]:
    df = _read_csv(path, LABEL_COLUMNS, "labels file")
    records = []
    try:
        for row in df[LABEL_COLUMNS].to_dict("records"):
            records.append(
                PairRecord(
                    pair_id=row["pair_id"],
                    frame_a_ref=row["frame_a"],
                    frame_b_ref=row["frame_b"],
                    label=int(row["label"]),
                    min_ncc=float(row["min_ncc"]),
                    mean_abs_disp_samples=float(row["mean_abs_disp"]),
                    source=source,
                )
            )
    except (ValidationError, ValueError) as e:
        raise DataFormatError(f"labels file {path} has invalid rows: {e}") from e
    return records
