from .rf import RfFrame, PairRecord, ManifestRow, WindowGrid
from .simulation import PulseSpec, MotionSpec, ScattererField
from .motion import DisplacementField, StrainImage, BlockMatchConfig
from .oracle import NccReport
from .classifier import ArchitectureSpec, TrainConfig, Prediction, Metrics
from .selection import CandidateScore, SelectionResult

__all__ = [
    "RfFrame",
    "PairRecord",
    "ManifestRow",
    "WindowGrid",
    "PulseSpec",
    "MotionSpec",
    "ScattererField",
    "DisplacementField",
    "StrainImage",
    "BlockMatchConfig",
    "NccReport",
    "ArchitectureSpec",
    "TrainConfig",
    "Prediction",
    "Metrics",
    "CandidateScore",
    "SelectionResult",
]
