from typing import Dict, List, Optional

from pydantic import BaseModel, Field, model_validator

from .oracle import NccReport


class CandidateScore(BaseModel):
    candidate_index: int = Field(ge=0)
    p_good: float = Field(ge=0.0, le=1.0)
    distance: int = Field(ge=1, description="|candidate_index - reference_index|")


class SelectionResult(BaseModel):
    reference: Optional[int] = None
    window: Optional[int] = None
    best_index: Optional[int] = None
    scores: List[CandidateScore] = Field(default_factory=list)
    abstained: bool

    @model_validator(mode="after")
    def _check_abstention(self) -> "SelectionResult":
        if self.abstained != (self.best_index is None):
            raise ValueError("abstained must be set exactly when best_index is absent")
        return self

    def to_json_dict(self) -> Dict[str, object]:
        return {
            "reference": self.reference,
            "window": self.window,
            "scores": [s.model_dump() for s in self.scores],
            "best": self.best_index,
            "abstained": self.abstained,
        }


class SelectionComparison(BaseModel):
    """Oracle evidence for the selected pair against fixed skip-k pairing."""

    selection: SelectionResult
    selected_report: Optional[NccReport] = None
    skip_reports: Dict[int, Optional[NccReport]] = Field(default_factory=dict)
    skip_partners: Dict[int, Optional[int]] = Field(default_factory=dict)
