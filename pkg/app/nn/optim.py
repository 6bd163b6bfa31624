from typing import List, Sequence

import numpy as np

from ..errors import InvalidParameterError


class AdamState:
    """First/second moment estimates for a fixed list of parameter arrays."""

    def __init__(
        self,
        params: Sequence[np.ndarray],
        lr: float = 1e-3,
        beta1: float = 0.9,
        beta2: float = 0.999,
        eps: float = 1e-8,
    ):
        if lr < 0:
            raise InvalidParameterError("learning rate must be non-negative")
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self.m: List[np.ndarray] = [np.zeros_like(p) for p in params]
        self.v: List[np.ndarray] = [np.zeros_like(p) for p in params]


def adam_step(
    params: Sequence[np.ndarray], grads: Sequence[np.ndarray], state: AdamState
) -> Sequence[np.ndarray]:
    """One bias-corrected Adam update, applied to `params` in place."""
    if len(params) != len(grads) or len(params) != len(state.m):
        raise InvalidParameterError("params, grads and optimizer state differ in length")
    for p, g, m in zip(params, grads, state.m):
        if p.shape != g.shape or p.shape != m.shape:
            raise InvalidParameterError(f"shape mismatch: param {p.shape}, grad {g.shape}")

    state.t += 1
    b1, b2 = state.beta1, state.beta2
    correction1 = 1.0 - b1 ** state.t
    correction2 = 1.0 - b2 ** state.t
    for p, g, m, v in zip(params, grads, state.m, state.v):
        m *= b1
        m += (1.0 - b1) * g
        v *= b2
        v += (1.0 - b2) * (g * g)
        m_hat = m / correction1
        v_hat = v / correction2
        p -= (state.lr * m_hat / (np.sqrt(v_hat) + state.eps)).astype(p.dtype, copy=False)
    return params
