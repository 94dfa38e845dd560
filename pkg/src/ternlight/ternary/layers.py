"""Trainable layers: full-precision dense, ternary-quantized dense, and the
straight-through estimator that lets gradients reach latent weights.

A ternary layer keeps a full-precision latent weight matrix and a cached
packed ternary form. The cache is refreshed from the latents on demand and
invalidated after every optimizer step, so each forward pass sees weights
re-quantized from the current latents. Biases are never quantized.

Backward convention: layers take the input they saw and the upstream
gradient, and return (grad_input, {param_name: grad}). The ternary layer
propagates grad_input through the dequantized codes and hands the upstream
weight gradient to the latents unchanged (pass-through STE, no clip mask).
"""

from __future__ import annotations

import numpy as np

from .quantize import TernaryMatrix, quantize_absmean

__all__ = ["DenseLayer", "TernaryLinear", "MLP", "Adam", "ste_gradient", "relu"]


def relu(x: np.ndarray) -> np.ndarray:
    return np.maximum(x, 0)


def ste_gradient(upstream: np.ndarray, layer: "TernaryLinear") -> np.ndarray:
    """Gradient w.r.t. latent weights: the upstream gradient, unchanged."""
    upstream = np.asarray(upstream)
    if upstream.shape != layer.weight.shape:
        raise ValueError(
            f"gradient shape {upstream.shape} does not match weights {layer.weight.shape}"
        )
    return upstream


class DenseLayer:
    """y = x @ W.T + b with full-precision weights."""

    kind = "dense"

    def __init__(self, weight: np.ndarray, bias: np.ndarray | None = None):
        self.weight = np.asarray(weight)
        self.bias = None if bias is None else np.asarray(bias)

    @classmethod
    def init(cls, in_dim: int, out_dim: int, rng: np.random.Generator, dtype=np.float32):
        w = rng.normal(0.0, np.sqrt(2.0 / in_dim), size=(out_dim, in_dim))
        return cls(w.astype(dtype), np.zeros(out_dim, dtype=dtype))

    @property
    def in_dim(self) -> int:
        return self.weight.shape[1]

    @property
    def out_dim(self) -> int:
        return self.weight.shape[0]

    def effective_weight(self) -> np.ndarray:
        return self.weight

    def forward(self, x: np.ndarray) -> np.ndarray:
        y = x @ self.weight.T
        if self.bias is not None:
            y = y + self.bias
        return y

    def backward(self, x: np.ndarray, dy: np.ndarray):
        grads = {"weight": dy.T @ x}
        if self.bias is not None:
            grads["bias"] = dy.sum(axis=0)
        return dy @ self.weight, grads

    def params(self) -> dict[str, np.ndarray]:
        out = {"weight": self.weight}
        if self.bias is not None:
            out["bias"] = self.bias
        return out

    def invalidate(self) -> None:
        pass


class TernaryLinear:
    """Dense layer whose weights are ternary-quantized from latent floats."""

    kind = "ternary"

    def __init__(self, weight: np.ndarray, bias: np.ndarray | None = None):
        self.weight = np.asarray(weight)
        self.bias = None if bias is None else np.asarray(bias)
        self._cached: TernaryMatrix | None = None
        self._dequant: np.ndarray | None = None

    @classmethod
    def init(cls, in_dim: int, out_dim: int, rng: np.random.Generator, dtype=np.float32):
        w = rng.normal(0.0, np.sqrt(2.0 / in_dim), size=(out_dim, in_dim))
        return cls(w.astype(dtype), np.zeros(out_dim, dtype=dtype))

    @classmethod
    def from_quantized(cls, tern: TernaryMatrix, bias: np.ndarray | None = None):
        """Inference-only form: the dequantized codes become the latents."""
        layer = cls(tern.dequantize(np.float32), bias)
        layer._cached = tern
        layer._dequant = layer.weight
        return layer

    @property
    def in_dim(self) -> int:
        return self.weight.shape[1]

    @property
    def out_dim(self) -> int:
        return self.weight.shape[0]

    def quantized(self) -> TernaryMatrix:
        if self._cached is None:
            self._cached = quantize_absmean(self.weight)
            self._dequant = self._cached.dequantize(np.float32)
        return self._cached

    def effective_weight(self) -> np.ndarray:
        self.quantized()
        return self._dequant

    def forward(self, x: np.ndarray) -> np.ndarray:
        y = x @ self.effective_weight().T
        if self.bias is not None:
            y = y + self.bias
        return y

    def backward(self, x: np.ndarray, dy: np.ndarray):
        wq = self.effective_weight()
        grads = {"weight": ste_gradient(dy.T @ x, self)}
        if self.bias is not None:
            grads["bias"] = dy.sum(axis=0)
        return dy @ wq, grads

    def params(self) -> dict[str, np.ndarray]:
        out = {"weight": self.weight}
        if self.bias is not None:
            out["bias"] = self.bias
        return out

    def invalidate(self) -> None:
        self._cached = None
        self._dequant = None


class MLP:
    """Layer stack with ReLU between layers and a linear output."""

    def __init__(self, layers: list):
        self.layers = layers

    @property
    def in_dim(self) -> int:
        return self.layers[0].in_dim

    @property
    def out_dim(self) -> int:
        return self.layers[-1].out_dim

    def forward(self, x: np.ndarray) -> np.ndarray:
        h = x
        last = len(self.layers) - 1
        for i, layer in enumerate(self.layers):
            h = layer.forward(h)
            if i != last:
                h = relu(h)
        return h

    def forward_cached(self, x: np.ndarray):
        """Forward pass that records per-layer inputs for backward."""
        inputs = []
        h = x
        last = len(self.layers) - 1
        for i, layer in enumerate(self.layers):
            inputs.append(h)
            h = layer.forward(h)
            if i != last:
                h = relu(h)
        return h, inputs

    def backward(self, inputs: list, outputs_grad: np.ndarray):
        """Returns per-layer gradient dicts, aligned with self.layers."""
        grads: list[dict] = [None] * len(self.layers)
        dy = outputs_grad
        last = len(self.layers) - 1
        for i in range(last, -1, -1):
            if i != last:
                # ReLU applied after layer i during forward; its input is the
                # pre-activation, recovered as the input recorded for layer i+1
                dy = dy * (inputs[i + 1] > 0)
            dx, g = self.layers[i].backward(inputs[i], dy)
            grads[i] = g
            dy = dx
        return grads

    def param_arrays(self) -> list[np.ndarray]:
        out = []
        for layer in self.layers:
            out.extend(layer.params().values())
        return out

    def grad_arrays(self, grads: list[dict]) -> list[np.ndarray]:
        out = []
        for layer, g in zip(self.layers, grads):
            out.extend(g[name] for name in layer.params())
        return out

    def invalidate(self) -> None:
        for layer in self.layers:
            layer.invalidate()

    def copy_params_from(self, other: "MLP") -> None:
        for mine, theirs in zip(self.param_arrays(), other.param_arrays()):
            np.copyto(mine, theirs)
        self.invalidate()

    def clone(self) -> "MLP":
        layers = []
        for layer in self.layers:
            bias = None if layer.bias is None else layer.bias.copy()
            layers.append(type(layer)(layer.weight.copy(), bias))
        return MLP(layers)


class Adam:
    """Adam over a fixed list of parameter arrays, updated in place."""

    def __init__(self, params: list[np.ndarray], lr: float = 1e-3,
                 beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
        self.params = params
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self.m = [np.zeros_like(p) for p in params]
        self.v = [np.zeros_like(p) for p in params]

    def step(self, grads: list[np.ndarray]) -> None:
        self.t += 1
        b1t = 1.0 - self.beta1**self.t
        b2t = 1.0 - self.beta2**self.t
        for p, g, m, v in zip(self.params, grads, self.m, self.v):
            g = g.astype(p.dtype, copy=False)
            m += (1.0 - self.beta1) * (g - m)
            v += (1.0 - self.beta2) * (g * g - v)
            p -= self.lr * (m / b1t) / (np.sqrt(v / b2t) + self.eps)
