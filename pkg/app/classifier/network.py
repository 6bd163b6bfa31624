from typing import Any, List

import numpy as np

from ..models.classifier import ArchitectureSpec
from ..nn.layers import (
    BatchNormLayer,
    ConvLayer,
    DenseLayer,
    FlattenLayer,
    GlobalAvgPoolLayer,
    Layer,
    ReLULayer,
)
from ..nn.model import Model

GOOD_CLASS = 1


def build_model(arch: ArchitectureSpec, seed: int = 0, dtype: Any = np.float32) -> Model:
    """Conv stages (conv, ReLU, batch norm), global average pool, dense 2-way head."""
    rng = np.random.default_rng(seed)
    layers: List[Layer] = []
    in_channels = arch.input_dims[0]
    for stage in arch.stages:
        layers.append(
            ConvLayer(in_channels, stage.out_channels, stage.kernel, stage.stride, rng=rng, dtype=dtype)
        )
        if arch.bn_before_relu:
            layers += [BatchNormLayer(stage.out_channels, dtype=dtype), ReLULayer()]
        else:
            layers += [ReLULayer(), BatchNormLayer(stage.out_channels, dtype=dtype)]
        in_channels = stage.out_channels

    layers += [
        GlobalAvgPoolLayer(),
        FlattenLayer(),
        DenseLayer(in_channels, arch.num_classes, rng=rng, dtype=dtype),
    ]
    return Model(layers, arch=arch.model_dump(mode="json"))


def architecture_of(model: Model) -> ArchitectureSpec:
    """The architecture a model was built from; the default one for bare models."""
    if model.arch is None:
        return ArchitectureSpec()
    return ArchitectureSpec(**model.arch)
