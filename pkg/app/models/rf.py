from enum import Enum
from typing import Any, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .arrays import frozen_array, require_finite

MIN_AXIAL_LEN = 64
MIN_LATERAL_LEN = 16


class RfFrame(BaseModel):
    """One RF acquisition: axial (fast-time) rows by lateral (scan line) columns."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    samples: np.ndarray
    fs_hz: float = Field(gt=0, description="Sampling frequency in Hz")
    f0_hz: float = Field(gt=0, description="Pulse center frequency in Hz")
    frame_id: int = Field(default=0, ge=0)

    @field_validator("samples", mode="before")
    @classmethod
    def _coerce_samples(cls, value: Any) -> np.ndarray:
        arr = frozen_array(value, np.float32, 2, "samples")
        axial_len, lateral_len = arr.shape
        if axial_len < MIN_AXIAL_LEN or lateral_len < MIN_LATERAL_LEN:
            raise ValueError(
                f"frame {axial_len}x{lateral_len} is below the "
                f"{MIN_AXIAL_LEN}x{MIN_LATERAL_LEN} minimum"
            )
        return require_finite(arr, "samples")

    @field_validator("fs_hz", "f0_hz")
    @classmethod
    def _single_precision(cls, value: float) -> float:
        # Metadata is stored as f32 in .rf files; keep it representable.
        return float(np.float32(value))

    @model_validator(mode="after")
    def _check_nyquist(self) -> "RfFrame":
        if self.fs_hz <= 2.0 * self.f0_hz:
            raise ValueError(
                f"fs_hz={self.fs_hz} must exceed twice f0_hz={self.f0_hz}"
            )
        return self

    @property
    def axial_len(self) -> int:
        return int(self.samples.shape[0])

    @property
    def lateral_len(self) -> int:
        return int(self.samples.shape[1])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.axial_len, self.lateral_len

    def replace(self, samples: Optional[np.ndarray] = None, **changes: Any) -> "RfFrame":
        """Return a validated copy with new samples and/or metadata."""
        fields = {
            "samples": self.samples if samples is None else samples,
            "fs_hz": self.fs_hz,
            "f0_hz": self.f0_hz,
            "frame_id": self.frame_id,
        }
        fields.update(changes)
        return RfFrame(**fields)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RfFrame):
            return NotImplemented
        return (
            self.fs_hz == other.fs_hz
            and self.f0_hz == other.f0_hz
            and self.frame_id == other.frame_id
            and self.samples.shape == other.samples.shape
            and bool(np.array_equal(self.samples, other.samples))
        )

    __hash__ = None  # type: ignore[assignment]


class PairSource(str, Enum):
    SYNTHETIC = "synthetic"
    EXTERNAL = "external"


class PairRecord(BaseModel):
    """A labeled frame pair: one row of the training/evaluation table."""

    pair_id: str
    frame_a_ref: str
    frame_b_ref: str
    label: Literal[0, 1]
    min_ncc: float = Field(ge=-1.0, le=1.0)
    mean_abs_disp_samples: float = Field(ge=0.0, description="RF samples")
    source: PairSource = PairSource.SYNTHETIC

    @model_validator(mode="after")
    def _distinct_frames(self) -> "PairRecord":
        if self.frame_a_ref == self.frame_b_ref:
            raise ValueError("frame_a_ref and frame_b_ref must differ")
        return self


class ManifestRow(BaseModel):
    """A generated pair before labeling; `expected_label` is the generator's intent."""

    pair_id: str
    frame_a: str
    frame_b: str
    strain: float
    rho: float = Field(ge=0.0, le=1.0)
    expected_label: Literal[0, 1]


class Window(BaseModel):
    model_config = ConfigDict(frozen=True)

    row0: int = Field(ge=0)
    col0: int = Field(ge=0)
    rows: int = Field(gt=0)
    cols: int = Field(gt=0)

    @property
    def slices(self) -> Tuple[slice, slice]:
        return (
            slice(self.row0, self.row0 + self.rows),
            slice(self.col0, self.col0 + self.cols),
        )


class WindowGrid(BaseModel):
    """3x3 tiling of a frame interior, row-major."""

    model_config = ConfigDict(frozen=True)

    windows: List[Window] = Field(min_length=9, max_length=9)
