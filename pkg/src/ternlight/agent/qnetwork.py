"""Q-network: full-precision input layer and output head around two
ternary-quantized hidden layers, ReLU activations."""

from __future__ import annotations

import numpy as np

from ..ternary import MLP, DenseLayer, TernaryLinear

__all__ = ["build_qnetwork", "HIDDEN_WIDTH"]

HIDDEN_WIDTH = 128


def build_qnetwork(
    state_dim: int,
    n_actions: int,
    rng: np.random.Generator,
    hidden: int = HIDDEN_WIDTH,
) -> MLP:
    return MLP(
        [
            DenseLayer.init(state_dim, hidden, rng),
            TernaryLinear.init(hidden, hidden, rng),
            TernaryLinear.init(hidden, hidden, rng),
            DenseLayer.init(hidden, n_actions, rng),
        ]
    )
