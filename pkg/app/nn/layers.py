"""
Layer objects wrapping the functional kernels.

Every layer exposes `forward(x, train) -> (out, cache)` and
`backward(cache, grad) -> (grad_in, param_grads)`; `param_grads` lines up
with `params()`. `buffers()` holds non-trainable state that is saved with
the model (batch-norm running statistics).
"""

from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..errors import InvalidParameterError
from . import functional as F


class Layer:
    kind: str = ""

    def forward(self, x: np.ndarray, train: bool = False) -> Tuple[np.ndarray, Any]:
        raise NotImplementedError

    def backward(self, cache: Any, grad_out: np.ndarray) -> Tuple[np.ndarray, List[np.ndarray]]:
        raise NotImplementedError

    def params(self) -> List[np.ndarray]:
        return []

    def buffers(self) -> List[np.ndarray]:
        return []

    def config(self) -> Dict[str, Any]:
        return {"kind": self.kind}

    def astype(self, dtype: Any) -> None:
        pass


class ConvLayer(Layer):
    kind = "conv"

    def __init__(
        self,
        in_channels: int,
        out_channels: int,
        kernel: int,
        stride: int = 1,
        padding: Optional[int] = None,
        rng: Optional[np.random.Generator] = None,
        dtype: Any = np.float32,
    ):
        if kernel % 2 == 0:
            raise InvalidParameterError("conv kernel size must be odd")
        if stride < 1:
            raise InvalidParameterError("conv stride must be positive")
        self.stride = stride
        self.padding = kernel // 2 if padding is None else padding
        if self.padding < 0:
            raise InvalidParameterError("conv padding must be non-negative")

        fan_in = in_channels * kernel * kernel
        rng = rng or np.random.default_rng(0)
        self.weights = (
            rng.standard_normal((out_channels, in_channels, kernel, kernel)) * np.sqrt(2.0 / fan_in)
        ).astype(dtype)
        self.bias = np.zeros(out_channels, dtype=dtype)

    def forward(self, x, train=False):
        return F.conv2d_forward(x, self.weights, self.bias, self.stride, self.padding)

    def backward(self, cache, grad_out):
        grad_x, grad_w, grad_b = F.conv2d_backward(cache, grad_out)
        return grad_x, [grad_w, grad_b]

    def params(self):
        return [self.weights, self.bias]

    def config(self):
        out_ch, in_ch, kernel, _ = self.weights.shape
        return {
            "kind": self.kind,
            "in_channels": in_ch,
            "out_channels": out_ch,
            "kernel": kernel,
            "stride": self.stride,
            "padding": self.padding,
        }

    def astype(self, dtype):
        self.weights = self.weights.astype(dtype)
        self.bias = self.bias.astype(dtype)


class BatchNormLayer(Layer):
    kind = "batchnorm"

    def __init__(self, channels: int, momentum: float = 0.9, eps: float = 1e-5, dtype: Any = np.float32):
        if not 0.0 < momentum < 1.0:
            raise InvalidParameterError("batch-norm momentum must lie in (0, 1)")
        if eps <= 0.0:
            raise InvalidParameterError("batch-norm epsilon must be positive")
        self.momentum = momentum
        self.eps = eps
        self.gamma = np.ones(channels, dtype=dtype)
        self.beta = np.zeros(channels, dtype=dtype)
        self.running_mean = np.zeros(channels, dtype=dtype)
        self.running_var = np.ones(channels, dtype=dtype)

    def forward(self, x, train=False):
        return F.batchnorm_forward(
            x, self.gamma, self.beta, self.running_mean, self.running_var, train, self.momentum, self.eps
        )

    def backward(self, cache, grad_out):
        grad_x, grad_gamma, grad_beta = F.batchnorm_backward(cache, grad_out)
        return grad_x, [grad_gamma, grad_beta]

    def params(self):
        return [self.gamma, self.beta]

    def buffers(self):
        return [self.running_mean, self.running_var]

    def config(self):
        return {
            "kind": self.kind,
            "channels": int(self.gamma.shape[0]),
            "momentum": self.momentum,
            "eps": self.eps,
        }

    def astype(self, dtype):
        self.gamma = self.gamma.astype(dtype)
        self.beta = self.beta.astype(dtype)
        self.running_mean = self.running_mean.astype(dtype)
        self.running_var = self.running_var.astype(dtype)


class ReLULayer(Layer):
    kind = "relu"

    def forward(self, x, train=False):
        return F.relu_forward(x), x

    def backward(self, cache, grad_out):
        return F.relu_backward(cache, grad_out), []


class GlobalAvgPoolLayer(Layer):
    kind = "global_avg_pool"

    def forward(self, x, train=False):
        return F.global_avg_pool_forward(x), x.shape

    def backward(self, cache, grad_out):
        return F.global_avg_pool_backward(cache, grad_out), []


class FlattenLayer(Layer):
    kind = "flatten"

    def forward(self, x, train=False):
        return x.reshape(x.shape[0], -1), x.shape

    def backward(self, cache, grad_out):
        return grad_out.reshape(cache), []


class DenseLayer(Layer):
    kind = "dense"

    def __init__(
        self,
        in_features: int,
        out_features: int,
        rng: Optional[np.random.Generator] = None,
        dtype: Any = np.float32,
    ):
        rng = rng or np.random.default_rng(0)
        self.weights = (
            rng.standard_normal((out_features, in_features)) * np.sqrt(2.0 / in_features)
        ).astype(dtype)
        self.bias = np.zeros(out_features, dtype=dtype)

    def forward(self, x, train=False):
        return F.dense_forward(x, self.weights, self.bias), x

    def backward(self, cache, grad_out):
        grad_x, grad_w, grad_b = F.dense_backward(cache, self.weights, grad_out)
        return grad_x, [grad_w, grad_b]

    def params(self):
        return [self.weights, self.bias]

    def config(self):
        out_features, in_features = self.weights.shape
        return {"kind": self.kind, "in_features": in_features, "out_features": out_features}

    def astype(self, dtype):
        self.weights = self.weights.astype(dtype)
        self.bias = self.bias.astype(dtype)


def layer_from_config(config: Dict[str, Any]) -> Layer:
    """Build a layer with placeholder parameters from its header entry."""
    kind = config.get("kind")
    if kind == ConvLayer.kind:
        return ConvLayer(
            config["in_channels"],
            config["out_channels"],
            config["kernel"],
            stride=config["stride"],
            padding=config["padding"],
        )
    if kind == BatchNormLayer.kind:
        return BatchNormLayer(config["channels"], momentum=config["momentum"], eps=config["eps"])
    if kind == DenseLayer.kind:
        return DenseLayer(config["in_features"], config["out_features"])
    simple = {cls.kind: cls for cls in (ReLULayer, GlobalAvgPoolLayer, FlattenLayer)}
    if kind in simple:
        return simple[kind]()
    raise InvalidParameterError(f"unknown layer kind {kind!r}")
