from typing import List, Literal

from pydantic import BaseModel, Field, model_validator

from .rf import PairRecord


class NccReport(BaseModel):
    """Evidence behind one oracle decision."""

    window_nccs: List[float] = Field(
        min_length=9, max_length=9, description="Row-major over the 3x3 window grid"
    )
    min_ncc: float
    mean_abs_disp_samples: float = Field(ge=0.0)
    decision: Literal[0, 1]
    degenerate_windows: List[int] = Field(
        default_factory=list, description="Windows with zero variance, scored as 0"
    )

    @model_validator(mode="after")
    def _check_min(self) -> "NccReport":
        if self.min_ncc != min(self.window_nccs):
            raise ValueError("min_ncc must equal the minimum window NCC")
        if any(v < -1.0 or v > 1.0 for v in self.window_nccs):
            raise ValueError("window NCCs must lie in [-1, 1]")
        return self


class OracleTiming(BaseModel):
    """Wall time of each oracle step, milliseconds."""

    displacement_ms: float = 0.0
    warp_ms: float = 0.0
    ncc_ms: float = 0.0
    decision_ms: float = 0.0

    @property
    def total_ms(self) -> float:
        return self.displacement_ms + self.warp_ms + self.ncc_ms + self.decision_ms


class SkippedPair(BaseModel):
    pair_id: str
    missing: List[str] = Field(default_factory=list)
    reason: str


class LabelingResult(BaseModel):
    """Labels in manifest order plus the pairs that could not be evaluated."""

    records: List[PairRecord] = Field(default_factory=list)
    skipped: List[SkippedPair] = Field(default_factory=list)

    @property
    def positives(self) -> int:
        return sum(r.label for r in self.records)
