"""Ternary text classifier over hashed bag-of-words features.

Features: word unigrams and bigrams signed-hashed into 1024 buckets (stable
blake2b hashing, so feature vectors are identical across runs and machines).
Model: one ternary hidden layer (1024 -> 128) trained with the
straight-through estimator, full-precision softmax head over intent labels.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from ..ternary import MLP, Adam, DenseLayer, TernaryLinear
from .corpus import CorpusEntry
from .grammar import normalize
from .types import INTENT_LABELS, intent_label

__all__ = [
    "FEATURE_DIM",
    "featurize_text",
    "IntentClassifier",
    "train_intent_classifier",
    "eval_classifier",
]

FEATURE_DIM = 1024
HIDDEN = 128


def _bucket(gram: str) -> tuple[int, float]:
    h = int.from_bytes(hashlib.blake2b(gram.encode(), digest_size=8).digest(), "little")
    return h % FEATURE_DIM, 1.0 if (h >> 32) & 1 else -1.0


def featurize_text(text: str) -> np.ndarray:
    vec = np.zeros(FEATURE_DIM, dtype=np.float32)
    tokens = normalize(text)
    for gram in tokens:
        idx, sign = _bucket(gram)
        vec[idx] += sign
    for a, b in zip(tokens, tokens[1:]):
        idx, sign = _bucket(f"{a} {b}")
        vec[idx] += sign
    return vec


@dataclass
class IntentClassifier:
    net: MLP
    labels: tuple[str, ...]

    def predict(self, texts: list[str]) -> list[str]:
        feats = np.stack([featurize_text(t) for t in texts])
        logits = self.net.forward(feats)
        return [self.labels[i] for i in np.argmax(logits, axis=1)]

    def hidden_codes(self) -> np.ndarray:
        """Decoded ternary codes of the hidden layer, for invariant checks."""
        return self.net.layers[0].quantized().unpack()


def _softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def train_intent_classifier(
    corpus: list[CorpusEntry],
    seed: int = 0,
    epochs: int = 12,
    batch_size: int = 64,
    learning_rate: float = 1e-3,
) -> IntentClassifier:
    labels = INTENT_LABELS
    label_index = {name: i for i, name in enumerate(labels)}
    seen = {intent_label(e.intent) for e in corpus}
    missing = set(labels) - seen
    if missing:
        raise ValueError(f"training corpus lacks examples of {sorted(missing)}")

    feats = np.stack([featurize_text(e.text) for e in corpus])
    targets = np.array([label_index[intent_label(e.intent)] for e in corpus], dtype=np.int64)

    init_rng, shuffle_rng = (
        np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(2)
    )
    net = MLP(
        [
            TernaryLinear.init(FEATURE_DIM, HIDDEN, init_rng),
            DenseLayer.init(HIDDEN, len(labels), init_rng),
        ]
    )
    opt = Adam(net.param_arrays(), lr=learning_rate)

    n = len(corpus)
    for _ in range(epochs):
        order = shuffle_rng.permutation(n)
        for start in range(0, n, batch_size):
            idx = order[start : start + batch_size]
            x, y = feats[idx], targets[idx]
            logits, cache = net.forward_cached(x)
            probs = _softmax(logits)
            dlogits = probs
            dlogits[np.arange(len(idx)), y] -= 1.0
            dlogits /= len(idx)
            grads = net.backward(cache, dlogits.astype(np.float32))
            opt.step(net.grad_arrays(grads))
            net.invalidate()
    return IntentClassifier(net=net, labels=labels)


def eval_classifier(model: IntentClassifier, held_out: list[CorpusEntry]) -> dict:
    """Overall and per-class accuracy on held-out entries."""
    if not held_out:
        raise ValueError("empty evaluation set")
    predictions = model.predict([e.text for e in held_out])
    truth = [intent_label(e.intent) for e in held_out]
    per_class: dict[str, dict] = {}
    correct = 0
    for name in model.labels:
        idx = [i for i, t in enumerate(truth) if t == name]
        if not idx:
            continue
        hits = sum(predictions[i] == truth[i] for i in idx)
        per_class[name] = {"count": len(idx), "accuracy": hits / len(idx)}
    correct = sum(p == t for p, t in zip(predictions, truth))
    return {
        "overall": correct / len(held_out),
        "count": len(held_out),
        "per_class": per_class,
    }
