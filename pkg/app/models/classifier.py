from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class ConvStage(BaseModel):
    model_config = ConfigDict(frozen=True)

    out_channels: int = Field(gt=0)
    kernel: int = Field(gt=0)
    stride: int = Field(default=1, gt=0)

    @field_validator("kernel")
    @classmethod
    def _odd_kernel(cls, value: int) -> int:
        if value % 2 == 0:
            raise ValueError("kernel size must be odd")
        return value


def _default_stages() -> List[ConvStage]:
    return [
        ConvStage(out_channels=8, kernel=5, stride=2),
        ConvStage(out_channels=16, kernel=3, stride=2),
        ConvStage(out_channels=32, kernel=3, stride=2),
        ConvStage(out_channels=32, kernel=3, stride=2),
    ]


class ArchitectureSpec(BaseModel):
    """Frame-pair CNN layout: conv stages, global average pool, 2-way dense head."""

    model_config = ConfigDict(frozen=True)

    input_dims: Tuple[int, int, int] = (2, 256, 64)
    stages: List[ConvStage] = Field(default_factory=_default_stages, min_length=1)
    bn_before_relu: bool = Field(
        default=False, description="conv -> BN -> ReLU instead of conv -> ReLU -> BN"
    )
    num_classes: Literal[2] = 2

    @field_validator("input_dims")
    @classmethod
    def _two_channels(cls, value: Tuple[int, int, int]) -> Tuple[int, int, int]:
        if value[0] != 2:
            raise ValueError("the first layer takes exactly 2 channels (frame a, frame b)")
        if value[1] < 1 or value[2] < 1:
            raise ValueError("model input height and width must be positive")
        return value

    @property
    def model_h(self) -> int:
        return self.input_dims[1]

    @property
    def model_w(self) -> int:
        return self.input_dims[2]


class TrainConfig(BaseModel):
    lr: float = Field(default=1e-3, ge=0.0)
    batch_size: int = Field(default=16, ge=2)
    max_epochs: int = Field(default=30, ge=1)
    val_fraction: float = Field(default=0.2, gt=0.0, lt=1.0)
    early_stop_patience: int = Field(default=5, ge=1)
    min_pairs: int = Field(default=50, ge=2)
    seed: int = 0


class Prediction(BaseModel):
    p_good: float = Field(ge=0.0, le=1.0)
    p_bad: float = Field(ge=0.0, le=1.0)
    decision: Literal[0, 1]

    @model_validator(mode="after")
    def _check_consistency(self) -> "Prediction":
        if abs(self.p_good + self.p_bad - 1.0) > 1e-6:
            raise ValueError("p_good + p_bad must equal 1")
        if self.decision != int(self.p_good > 0.5):
            raise ValueError("decision must be 1 iff p_good > 0.5")
        return self


class Metrics(BaseModel):
    accuracy: float = Field(ge=0.0, le=1.0)
    precision: float = Field(ge=0.0, le=1.0)
    recall: float = Field(ge=0.0, le=1.0)
    f1: float = Field(ge=0.0, le=1.0)
    tp: int = Field(ge=0)
    fp: int = Field(ge=0)
    fn: int = Field(ge=0)
    tn: int = Field(ge=0)
    f1_defined: bool = True

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    @property
    def confusion(self) -> Tuple[int, int, int, int]:
        return self.tp, self.fp, self.fn, self.tn


class EpochStats(BaseModel):
    epoch: int = Field(ge=0)
    train_loss: float
    val_loss: float
    val_accuracy: float = Field(ge=0.0, le=1.0)


class TrainReport(BaseModel):
    epochs: List[EpochStats] = Field(default_factory=list)
    best_epoch: Optional[int] = None
    stopped_early: bool = False
    train_size: int = 0
    val_size: int = 0

    @property
    def best(self) -> Optional[EpochStats]:
        if self.best_epoch is None:
            return None
        return next(e for e in self.epochs if e.epoch == self.best_epoch)
