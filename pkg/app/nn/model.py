from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import InvalidParameterError
from . import functional as F
from .layers import Layer


class Model:
    """
    Sequential network.

    `arch` carries the architecture descriptor the model was built from, so
    a loaded model knows its expected input dims.
    """

    def __init__(self, layers: Sequence[Layer], arch: Optional[Dict[str, Any]] = None):
        if not layers:
            raise InvalidParameterError("a model needs at least one layer")
        self.layers: List[Layer] = list(layers)
        self.arch = arch

    def forward(self, x: np.ndarray, train: bool = False) -> Tuple[np.ndarray, List[Any]]:
        caches = []
        out = x
        for layer in self.layers:
            out, cache = layer.forward(out, train)
            caches.append(cache)
        return out, caches

    def backward(self, caches: Sequence[Any], grad_out: np.ndarray) -> List[np.ndarray]:
        """Parameter gradients in `parameters()` order."""
        grads_per_layer: List[List[np.ndarray]] = [[] for _ in self.layers]
        grad = grad_out
        for idx in range(len(self.layers) - 1, -1, -1):
            grad, grads_per_layer[idx] = self.layers[idx].backward(caches[idx], grad)
        return [g for layer_grads in grads_per_layer for g in layer_grads]

    def parameters(self) -> List[np.ndarray]:
        return [p for layer in self.layers for p in layer.params()]

    def state_arrays(self) -> List[np.ndarray]:
        """Everything that is serialized, in declaration order."""
        arrays: List[np.ndarray] = []
        for layer in self.layers:
            arrays.extend(layer.params())
            arrays.extend(layer.buffers())
        return arrays

    def astype(self, dtype: Any) -> "Model":
        for layer in self.layers:
            layer.astype(dtype)
        return self

    def predict_proba(self, x: np.ndarray) -> np.ndarray:
        """Softmax probabilities in inference mode; does not touch model state."""
        logits, _ = self.forward(x, train=False)
        return F.softmax(logits)

    @property
    def input_dims(self) -> Optional[Tuple[int, int, int]]:
        if not self.arch or "input_dims" not in self.arch:
            return None
        return tuple(self.arch["input_dims"])  # type: ignore[return-value]
