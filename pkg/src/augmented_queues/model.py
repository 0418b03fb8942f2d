"""Fully-connected softmax classifier trained by mini-batch gradient descent.

All arithmetic is float64. Weights for layer ``l`` have shape ``(fan_in, fan_out)``
and the forward pass computes ``a @ W + b`` row-wise.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ContractError, NumericError

__all__ = ["MlpConfig", "MLP", "softmax", "PROB_FLOOR"]

PROB_FLOOR = 1e-12


def softmax(z):
    z = np.asarray(z, dtype=np.float64)
    e = np.exp(z - z.max(axis=-1, keepdims=True))
    return e / e.sum(axis=-1, keepdims=True)


def _relu(z):
    return np.maximum(z, 0.0)


def _relu_grad(z, a):
    return (z > 0).astype(np.float64)


def _sigmoid(z):
    return 0.5 * (1.0 + np.tanh(0.5 * z))


def _sigmoid_grad(z, a):
    return a * (1.0 - a)


_ACTIVATIONS = {
    "relu": (_relu, _relu_grad, 2.0),
    "sigmoid": (_sigmoid, _sigmoid_grad, 1.0),
}


@dataclass(frozen=True)
class MlpConfig:
    n_inputs: int
    n_classes: int
    hidden: tuple = (64,)
    learning_rate: float = 0.01
    activation: str = "relu"
    seed: int = 0
    batch_size: int | str = 64  # or "full" for one update per pass
    shuffle: bool = True

    def __post_init__(self):
        object.__setattr__(self, "hidden", tuple(int(h) for h in self.hidden))
        if not self.hidden or any(h < 1 for h in self.hidden):
            raise ContractError(f"need at least one positive hidden layer, got {self.hidden}")
        if self.n_inputs < 1 or self.n_classes < 2:
            raise ContractError("need n_inputs >= 1 and n_classes >= 2")
        if not self.learning_rate >= 0:
            raise ContractError(f"learning rate must be >= 0, got {self.learning_rate}")
        if self.activation not in _ACTIVATIONS:
            raise ContractError(f"unknown activation {self.activation!r}")
        if self.batch_size != "full" and int(self.batch_size) < 1:
            raise ContractError(f"bad batch size {self.batch_size!r}")

    @property
    def layer_sizes(self):
        return (self.n_inputs, *self.hidden, self.n_classes)


class MLP:
    def __init__(self, config: MlpConfig):
        self.config = config
        act, act_grad, gain = _ACTIVATIONS[config.activation]
        self._act, self._act_grad = act, act_grad
        rng = np.random.default_rng(config.seed)
        sizes = config.layer_sizes
        self.weights = [
            rng.normal(0.0, np.sqrt(gain / fan_in), size=(fan_in, fan_out))
            for fan_in, fan_out in zip(sizes[:-1], sizes[1:])
        ]
        self.biases = [np.zeros(fan_out) for fan_out in sizes[1:]]

    @property
    def n_classes(self):
        return self.config.n_classes

    def _check_input(self, X):
        X = np.asarray(X, dtype=np.float64)
        squeeze = X.ndim == 1
        X = np.atleast_2d(X)
        if X.ndim != 2 or X.shape[1] != self.config.n_inputs:
            raise ContractError(
                f"input has shape {X.shape}, network expects {self.config.n_inputs} features"
            )
        if not np.all(np.isfinite(X)):
            raise ContractError("input contains non-finite values")
        return X, squeeze

    def _forward(self, X):
        zs, acts = [], [X]
        a = X
        last = len(self.weights) - 1
        for i, (W, b) in enumerate(zip(self.weights, self.biases)):
            z = a @ W + b
            zs.append(z)
            a = softmax(z) if i == last else self._act(z)
            acts.append(a)
        return zs, acts

    def logits(self, X):
        X, squeeze = self._check_input(X)
        a = X
        for W, b in zip(self.weights[:-1], self.biases[:-1]):
            a = self._act(a @ W + b)
        z = a @ self.weights[-1] + self.biases[-1]
        return z[0] if squeeze else z

    def predict_proba(self, X):
        return softmax(self.logits(X))

    def predict(self, X):
        """Most probable class; ties go to the lowest class id."""
        p = self.predict_proba(X)
        return int(np.argmax(p)) if p.ndim == 1 else np.argmax(p, axis=1)

    def cost(self, X, y):
        """Mean cross-entropy over the batch."""
        X, _ = self._check_input(X)
        y = self._check_labels(y, len(X))
        p = self.predict_proba(X)[np.arange(len(y)), y]
        return float(-np.mean(np.log(np.maximum(p, PROB_FLOOR))))

    def _check_labels(self, y, n):
        y = np.asarray(y, dtype=np.int64).reshape(-1)
        if n == 0:
            raise ContractError("empty batch")
        if len(y) != n:
            raise ContractError(f"{n} inputs but {len(y)} labels")
        if np.any((y < 0) | (y >= self.n_classes)):
            raise ContractError("label outside 0..K-1")
        return y

    def gradients(self, X, y):
        """Gradients of the mean cross-entropy as ``(dW list, db list)``."""
        X, _ = self._check_input(X)
        y = self._check_labels(y, len(X))
        zs, acts = self._forward(X)
        delta = acts[-1].copy()
        delta[np.arange(len(y)), y] -= 1.0
        delta /= len(y)
        dWs, dbs = [], []
        for layer in range(len(self.weights) - 1, -1, -1):
            dWs.append(acts[layer].T @ delta)
            dbs.append(delta.sum(axis=0))
            if layer > 0:
                delta = (delta @ self.weights[layer].T) * self._act_grad(
                    zs[layer - 1], acts[layer]
                )
        return dWs[::-1], dbs[::-1]

    def train_step(self, X, y, rng=None):
        """One pass over ``(X, y)``: one gradient update per mini-batch.

        Rows are visited in a permutation drawn from ``rng`` when shuffling is
        enabled and ``rng`` is given, otherwise in their stored order.
        """
        X, _ = self._check_input(X)
        y = self._check_labels(y, len(X))
        n = len(y)
        bs = n if self.config.batch_size == "full" else int(self.config.batch_size)
        order = rng.permutation(n) if (self.config.shuffle and rng is not None) else np.arange(n)
        lr = self.config.learning_rate
        for start in range(0, n, bs):
            idx = order[start : start + bs]
            dWs, dbs = self.gradients(X[idx], y[idx])
            for i, (dW, db) in enumerate(zip(dWs, dbs)):
                if not (np.all(np.isfinite(dW)) and np.all(np.isfinite(db))):
                    raise NumericError(
                        f"non-finite gradient in layer {i} (batch rows {start}..{start + len(idx) - 1})"
                    )
                self.weights[i] -= lr * dW
                self.biases[i] -= lr * db
        return self

    # flat parameter access, used by gradient checks and snapshots

    def get_params(self):
        return np.concatenate([p.ravel() for pair in zip(self.weights, self.biases) for p in pair])

    def set_params(self, flat):
        flat = np.asarray(flat, dtype=np.float64)
        pos = 0
        for i in range(len(self.weights)):
            for group in (self.weights, self.biases):
                size = group[i].size
                group[i] = flat[pos : pos + size].reshape(group[i].shape).copy()
                pos += size
        if pos != flat.size:
            raise ContractError(f"expected {pos} parameters, got {flat.size}")
        return self

    def flat_gradient(self, X, y):
        dWs, dbs = self.gradients(X, y)
        return np.concatenate([g.ravel() for pair in zip(dWs, dbs) for g in pair])

    def save_weights(self, path):
        """Text snapshot: a header line of shapes, then one row-major value per line."""
        shapes = []
        for W, b in zip(self.weights, self.biases):
            shapes += ["x".join(map(str, W.shape)), str(b.size)]
        lines = ["# " + " ".join(shapes)]
        lines += [repr(float(v)) for v in self.get_params()]
        Path(path).write_text("\n".join(lines) + "\n")

    def load_weights(self, path):
        with open(path) as fh:
            header = fh.readline()
            values = np.array([float(v) for v in fh if v.strip()])
        expected = []
        for W, b in zip(self.weights, self.biases):
            expected += ["x".join(map(str, W.shape)), str(b.size)]
        if header[1:].split() != expected:
            raise ContractError(f"snapshot shapes {header.strip()!r} do not match this network")
        return self.set_params(values)
