import math
from typing import Any, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .arrays import frozen_array, require_finite

# Gaussian full width at half maximum in units of sigma.
FWHM_PER_SIGMA = 2.0 * math.sqrt(2.0 * math.log(2.0))


class PulseSpec(BaseModel):
    """Gaussian-modulated cosine pulse and lateral point-spread function."""

    model_config = ConfigDict(frozen=True)

    f0_hz: float = Field(default=8.5e6, gt=0)
    fs_hz: float = Field(default=40e6, gt=0)
    fractional_bandwidth: float = Field(default=0.6, gt=0.0, le=1.0)
    lateral_sigma_lines: float = Field(default=1.0, gt=0.0)

    @model_validator(mode="after")
    def _check_nyquist(self) -> "PulseSpec":
        if self.fs_hz <= 2.0 * self.f0_hz:
            raise ValueError("fs_hz must exceed twice f0_hz")
        return self

    @property
    def axial_sigma_samples(self) -> float:
        """Envelope sigma in samples, from the -6 dB fractional bandwidth."""
        sigma_f = self.fractional_bandwidth * self.f0_hz / FWHM_PER_SIGMA
        return self.fs_hz / (2.0 * math.pi * sigma_f)

    @property
    def normalized_frequency(self) -> float:
        return self.f0_hz / self.fs_hz

    @property
    def resolution_cell(self) -> float:
        """Area of one resolution cell in sample x line units (FWHM x FWHM)."""
        return (FWHM_PER_SIGMA * self.axial_sigma_samples) * (
            FWHM_PER_SIGMA * self.lateral_sigma_lines
        )


class InclusionSpec(BaseModel):
    """Elliptical region whose local strain is scaled by `strain_ratio`."""

    model_config = ConfigDict(frozen=True)

    center_axial: float
    center_lateral: float
    radius: float = Field(gt=0, description="Axial semi-axis in samples")
    strain_ratio: float = Field(gt=0.0, le=1.0)
    lateral_radius: Optional[float] = Field(
        default=None, gt=0, description="Lateral semi-axis in lines; defaults to radius"
    )

    @property
    def lateral_extent(self) -> float:
        return self.radius if self.lateral_radius is None else self.lateral_radius

    def half_chord(self, lateral: np.ndarray) -> np.ndarray:
        """Axial half-length of the inclusion along each scan-line position."""
        u = (np.asarray(lateral, dtype=np.float64) - self.center_lateral) / self.lateral_extent
        return self.radius * np.sqrt(np.clip(1.0 - u * u, 0.0, None))

    def depth_overlap(self, axial: np.ndarray, lateral: np.ndarray) -> np.ndarray:
        """Length of [0, axial] that lies inside the inclusion, per point."""
        h = self.half_chord(lateral)
        top = self.center_axial - h
        return np.clip(np.asarray(axial, dtype=np.float64) - top, 0.0, 2.0 * h)


class MotionSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    axial_strain: float = Field(
        default=0.0, gt=-0.1, lt=0.1, description="Uniform strain, positive = compression"
    )
    lateral_shift_lines: float = 0.0
    decorrelation_rho: float = Field(default=1.0, ge=0.0, le=1.0)
    inclusion: Optional[InclusionSpec] = None


class ScattererField(BaseModel):
    """Point scatterers in continuous (axial sample, lateral line) coordinates."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    positions: np.ndarray
    amplitudes: np.ndarray
    density_per_cell: float = Field(gt=0)
    extent: Tuple[int, int]

    @field_validator("positions", mode="before")
    @classmethod
    def _coerce_positions(cls, value: Any) -> np.ndarray:
        arr = frozen_array(value, np.float64, 2, "positions")
        if arr.shape[1] != 2:
            raise ValueError("positions must have shape (n, 2)")
        return require_finite(arr, "positions")

    @field_validator("amplitudes", mode="before")
    @classmethod
    def _coerce_amplitudes(cls, value: Any) -> np.ndarray:
        return require_finite(frozen_array(value, np.float64, 1, "amplitudes"), "amplitudes")

    @model_validator(mode="after")
    def _check_lengths(self) -> "ScattererField":
        if self.positions.shape[0] != self.amplitudes.shape[0]:
            raise ValueError("positions and amplitudes differ in length")
        return self

    @property
    def count(self) -> int:
        return int(self.amplitudes.shape[0])


class SequenceRow(BaseModel):
    """One frame of a synthetic sequence, with its motion relative to the reference."""

    index: int = Field(ge=0)
    strain: float
    rho: float = Field(ge=0.0, le=1.0)
    expected_label: Literal[0, 1]
