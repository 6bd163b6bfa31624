from typing import Any, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .arrays import frozen_array, require_finite


class BlockMatchConfig(BaseModel):
    """Grid block matching parameters (sizes and strides in samples / lines)."""

    model_config = ConfigDict(frozen=True)

    block_axial: int = Field(default=32, ge=8)
    block_lateral: int = Field(default=8, ge=2)
    search_axial: int = Field(default=24, ge=1)
    search_lateral: int = Field(default=3, ge=1)
    step_axial: int = Field(default=16, ge=1)
    step_lateral: int = Field(default=4, ge=1)

    @property
    def margins(self) -> Tuple[int, int]:
        """Half-block margins excluded from window statistics."""
        return self.block_axial // 2, self.block_lateral // 2


class DisplacementField(BaseModel):
    """Per-sample motion of frame a's content as found in frame b.

    Sign convention: b(z + axial, x + lateral) ~ a(z, x), so content that moves
    deeper (away from the transducer) has positive axial displacement.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    axial: np.ndarray
    lateral: np.ndarray
    valid_mask: np.ndarray

    @field_validator("axial", "lateral", mode="before")
    @classmethod
    def _coerce_component(cls, value: Any) -> np.ndarray:
        return require_finite(frozen_array(value, np.float64, 2, "displacement"), "displacement")

    @field_validator("valid_mask", mode="before")
    @classmethod
    def _coerce_mask(cls, value: Any) -> np.ndarray:
        return frozen_array(value, bool, 2, "valid_mask")

    @model_validator(mode="after")
    def _check_shapes(self) -> "DisplacementField":
        if not (self.axial.shape == self.lateral.shape == self.valid_mask.shape):
            raise ValueError("displacement components and mask must share a shape")
        return self

    @property
    def shape(self) -> Tuple[int, int]:
        return self.axial.shape  # type: ignore[return-value]

    @classmethod
    def zeros(cls, shape: Tuple[int, int]) -> "DisplacementField":
        return cls(
            axial=np.zeros(shape),
            lateral=np.zeros(shape),
            valid_mask=np.ones(shape, dtype=bool),
        )

    def negated(self) -> "DisplacementField":
        return DisplacementField(
            axial=-self.axial, lateral=-self.lateral, valid_mask=self.valid_mask
        )

    def mean_abs_axial(self, mask: "np.ndarray | None" = None) -> float:
        region = self.valid_mask if mask is None else (self.valid_mask & mask)
        if not region.any():
            return 0.0
        return float(np.mean(np.abs(self.axial[region])))


class StrainImage(BaseModel):
    """Axial strain, shorter than its displacement field by window_len - 1 rows."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    values: np.ndarray
    window_len: int = Field(ge=3)

    @field_validator("values", mode="before")
    @classmethod
    def _coerce_values(cls, value: Any) -> np.ndarray:
        return require_finite(frozen_array(value, np.float64, 2, "strain"), "strain")

    @property
    def row_offset(self) -> int:
        """Displacement row corresponding to strain row 0."""
        return (self.window_len - 1) // 2
