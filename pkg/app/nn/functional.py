"""
Forward/backward kernels on NCHW arrays.

Convolution is cross-correlation (no kernel flip) computed through a
strided window view; every backward returns exact gradients of its forward.
"""

from typing import Any, Dict, Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ..errors import InvalidParameterError

Cache = Dict[str, Any]


def conv_output_size(size: int, kernel: int, stride: int, padding: int) -> int:
    return (size + 2 * padding - kernel) // stride + 1


def conv2d_forward(
    x: np.ndarray, weights: np.ndarray, bias: np.ndarray, stride: int = 1, padding: int = 0
) -> Tuple[np.ndarray, Cache]:
    if x.ndim != 4:
        raise InvalidParameterError(f"conv input must be NCHW, got shape {x.shape}")
    n, c, h, w = x.shape
    out_ch, in_ch, kh, kw = weights.shape
    if c != in_ch:
        raise InvalidParameterError(f"conv expects {in_ch} input channels, got {c}")
    ho = conv_output_size(h, kh, stride, padding)
    wo = conv_output_size(w, kw, stride, padding)
    if ho < 1 or wo < 1:
        raise InvalidParameterError(
            f"conv output would be {ho}x{wo} for input {h}x{w}, kernel {kh}x{kw}"
        )

    xp = np.pad(x, ((0, 0), (0, 0), (padding, padding), (padding, padding)))
    cols = sliding_window_view(xp, (kh, kw), axis=(2, 3))[:, :, ::stride, ::stride][:, :, :ho, :wo]
    out = np.tensordot(cols, weights, axes=([1, 4, 5], [1, 2, 3]))  # (n, ho, wo, out_ch)
    out = out.transpose(0, 3, 1, 2) + bias.reshape(1, out_ch, 1, 1)
    cache = {"cols": cols, "x_shape": x.shape, "weights": weights, "stride": stride, "padding": padding}
    return np.ascontiguousarray(out), cache


def conv2d_backward(cache: Cache, grad_out: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    cols, weights = cache["cols"], cache["weights"]
    stride, padding = cache["stride"], cache["padding"]
    n, c, h, w = cache["x_shape"]
    _, _, kh, kw = weights.shape
    _, _, ho, wo = grad_out.shape
    if grad_out.shape[:2] != (n, weights.shape[0]) or cols.shape[2:4] != (ho, wo):
        raise InvalidParameterError(f"conv grad_out has shape {grad_out.shape}")

    grad_bias = grad_out.sum(axis=(0, 2, 3))
    grad_weights = np.tensordot(grad_out, cols, axes=([0, 2, 3], [0, 2, 3]))

    grad_cols = np.tensordot(grad_out, weights, axes=([1], [0]))  # (n, ho, wo, c, kh, kw)
    grad_xp = np.zeros((n, c, h + 2 * padding, w + 2 * padding), dtype=grad_out.dtype)
    for i in range(kh):
        for j in range(kw):
            grad_xp[:, :, i:i + stride * ho:stride, j:j + stride * wo:stride] += grad_cols[
                :, :, :, :, i, j
            ].transpose(0, 3, 1, 2)
    grad_x = grad_xp[:, :, padding:padding + h, padding:padding + w]
    return np.ascontiguousarray(grad_x), grad_weights, grad_bias


def batchnorm_forward(
    x: np.ndarray,
    gamma: np.ndarray,
    beta: np.ndarray,
    running_mean: np.ndarray,
    running_var: np.ndarray,
    train: bool,
    momentum: float = 0.9,
    eps: float = 1e-5,
) -> Tuple[np.ndarray, Cache]:
    """
    Per-channel normalization over (batch, height, width).

    In train mode the running statistics are updated in place with the batch
    mean and the unbiased batch variance.
    """
    shape = (1, -1, 1, 1)
    if train:
        count = x.shape[0] * x.shape[2] * x.shape[3]
        if count < 2:
            raise InvalidParameterError("batch norm needs at least 2 values per channel in train mode")
        mean = x.mean(axis=(0, 2, 3))
        var = x.var(axis=(0, 2, 3))
        running_mean *= momentum
        running_mean += (1.0 - momentum) * mean
        running_var *= momentum
        running_var += (1.0 - momentum) * var * (count / (count - 1))
    else:
        mean, var = running_mean, running_var

    inv_std = 1.0 / np.sqrt(var + eps)
    x_hat = (x - mean.reshape(shape)) * inv_std.reshape(shape)
    out = gamma.reshape(shape) * x_hat + beta.reshape(shape)
    cache = {"x_hat": x_hat, "inv_std": inv_std, "gamma": gamma, "train": train}
    return out, cache


def batchnorm_backward(cache: Cache, grad_out: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    shape = (1, -1, 1, 1)
    x_hat, inv_std, gamma = cache["x_hat"], cache["inv_std"], cache["gamma"]
    grad_gamma = np.sum(grad_out * x_hat, axis=(0, 2, 3))
    grad_beta = grad_out.sum(axis=(0, 2, 3))
    grad_x_hat = grad_out * gamma.reshape(shape)

    if not cache["train"]:
        return grad_x_hat * inv_std.reshape(shape), grad_gamma, grad_beta

    count = grad_out.shape[0] * grad_out.shape[2] * grad_out.shape[3]
    sum_g = grad_x_hat.sum(axis=(0, 2, 3)).reshape(shape)
    sum_gx = np.sum(grad_x_hat * x_hat, axis=(0, 2, 3)).reshape(shape)
    grad_x = (inv_std.reshape(shape) / count) * (count * grad_x_hat - sum_g - x_hat * sum_gx)
    return grad_x, grad_gamma, grad_beta


def relu_forward(x: np.ndarray) -> np.ndarray:
    return np.maximum(x, 0.0).astype(x.dtype, copy=False)


def relu_backward(x: np.ndarray, grad_out: np.ndarray) -> np.ndarray:
    return np.where(x > 0, grad_out, 0.0).astype(grad_out.dtype, copy=False)


def global_avg_pool_forward(x: np.ndarray) -> np.ndarray:
    """(n, c, h, w) -> (n, c, 1, 1)."""
    return x.mean(axis=(2, 3), keepdims=True)


def global_avg_pool_backward(x_shape: Tuple[int, ...], grad_out: np.ndarray) -> np.ndarray:
    h, w = x_shape[2], x_shape[3]
    return np.broadcast_to(grad_out / (h * w), x_shape).copy()


def dense_forward(x: np.ndarray, weights: np.ndarray, bias: np.ndarray) -> np.ndarray:
    if x.ndim != 2 or x.shape[1] != weights.shape[1]:
        raise InvalidParameterError(
            f"dense expects (batch, {weights.shape[1]}) input, got {x.shape}"
        )
    return x @ weights.T + bias


def dense_backward(
    x: np.ndarray, weights: np.ndarray, grad_out: np.ndarray
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    if grad_out.shape != (x.shape[0], weights.shape[0]):
        raise InvalidParameterError(f"dense grad_out has shape {grad_out.shape}")
    return grad_out @ weights, grad_out.T @ x, grad_out.sum(axis=0)


def log_softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))


def softmax(logits: np.ndarray) -> np.ndarray:
    return np.exp(log_softmax(logits))


def softmax_cross_entropy(
    logits: np.ndarray, labels: np.ndarray
) -> Tuple[float, np.ndarray, np.ndarray]:
    """Mean cross entropy, softmax probabilities and the gradient w.r.t. logits."""
    labels = np.asarray(labels, dtype=np.int64)
    batch = logits.shape[0]
    if labels.shape != (batch,) or np.any((labels < 0) | (labels >= logits.shape[1])):
        raise InvalidParameterError("labels must be one class index per row")

    log_probs = log_softmax(logits)
    probs = np.exp(log_probs)
    loss = float(-log_probs[np.arange(batch), labels].mean())
    onehot = np.zeros_like(probs)
    onehot[np.arange(batch), labels] = 1.0
    return loss, probs, (probs - onehot) / batch
