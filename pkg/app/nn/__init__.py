from .functional import (
    conv2d_forward,
    conv2d_backward,
    batchnorm_forward,
    batchnorm_backward,
    relu_forward,
    relu_backward,
    global_avg_pool_forward,
    global_avg_pool_backward,
    dense_forward,
    dense_backward,
    softmax,
    softmax_cross_entropy,
)
from .layers import (
    ConvLayer,
    BatchNormLayer,
    ReLULayer,
    GlobalAvgPoolLayer,
    FlattenLayer,
    DenseLayer,
)
from .optim import AdamState, adam_step
from .model import Model
from .serialization import save_model, load_model

__all__ = [
    "conv2d_forward",
    "conv2d_backward",
    "batchnorm_forward",
    "batchnorm_backward",
    "relu_forward",
    "relu_backward",
    "global_avg_pool_forward",
    "global_avg_pool_backward",
    "dense_forward",
    "dense_backward",
    "softmax",
    "softmax_cross_entropy",
    "ConvLayer",
    "BatchNormLayer",
    "ReLULayer",
    "GlobalAvgPoolLayer",
    "FlattenLayer",
    "DenseLayer",
    "AdamState",
    "adam_step",
    "Model",
    "save_model",
    "load_model",
]
