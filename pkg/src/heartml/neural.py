"""Dense feedforward binary classifier: relu hidden layers, sigmoid output.

The functional core (init_network / forward_pass / bce_loss / backprop /
sgd_train) operates on plain lists of (weight matrix, bias vector) pairs;
DenseNetworkClassifier wraps it in the estimator interface.  Weight
initialization draws from rng stream 0 of the seed, the per-epoch shuffle
from stream 1, so the two are independent but both reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._rng import generator
from ._validation import check_X_y, check_array, check_is_fitted
from .base import BaseEstimator, ClassifierMixin

PROB_CLAMP = 1e-7
DEFAULT_EPOCH_LIST = (10, 25, 50, 100, 200, 350, 500, 1000)

Weights = list[tuple[np.ndarray, np.ndarray]]


_UNIT_EPS = np.finfo(np.float64).eps


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    # keep the output strictly inside (0,1) even for saturating inputs
    return np.clip(out, _UNIT_EPS, 1.0 - _UNIT_EPS)


def init_network(layer_sizes: list[int], seed: int = 0) -> Weights:
    """Glorot-uniform weights (bound sqrt(6/(fan_in+fan_out))), zero biases."""
    if len(layer_sizes) < 2 or any(s < 1 for s in layer_sizes):
        raise ValueError(f"invalid layer sizes {layer_sizes}")
    if layer_sizes[-1] != 1:
        raise ValueError("output layer must have exactly one unit")
    rng = generator(seed, 0)
    weights: Weights = []
    for fan_in, fan_out in zip(layer_sizes[:-1], layer_sizes[1:]):
        bound = np.sqrt(6.0 / (fan_in + fan_out))
        w = rng.uniform(-bound, bound, size=(fan_in, fan_out))
        weights.append((w, np.zeros(fan_out)))
    return weights


def forward_pass(weights: Weights, x: np.ndarray) -> list[np.ndarray]:
    """All layer activations, input first; hidden layers relu, output sigmoid."""
    acts = [x]
    for k, (w, b) in enumerate(weights):
        z = acts[-1] @ w + b
        acts.append(_sigmoid(z) if k == len(weights) - 1 else np.maximum(z, 0.0))
    return acts


def predict_network(weights: Weights, x) -> np.ndarray:
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    if x.shape[1] != weights[0][0].shape[0]:
        raise ValueError(
            f"expected {weights[0][0].shape[0]} features, got {x.shape[1]}"
        )
    return forward_pass(weights, x)[-1][:, 0]


def bce_loss(p, y) -> float:
    """Mean binary cross-entropy; probabilities clamped to [1e-7, 1-1e-7]."""
    p = np.asarray(p, dtype=np.float64).reshape(-1)
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    if p.shape != y.shape:
        raise ValueError(f"length mismatch: {p.shape[0]} vs {y.shape[0]}")
    p = np.clip(p, PROB_CLAMP, 1.0 - PROB_CLAMP)
    return float(-np.mean(y * np.log(p) + (1.0 - y) * np.log(1.0 - p)))


def backprop(weights: Weights, x: np.ndarray, y: np.ndarray) -> Weights:
    """Exact gradients of the mean BCE over the batch.

    The sigmoid + BCE output delta collapses to (p - y) / batch_size.
    """
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    yv = np.asarray(y, dtype=np.float64).reshape(-1, 1)
    if x.shape[0] != yv.shape[0]:
        raise ValueError(f"batch mismatch: {x.shape[0]} rows vs {yv.shape[0]} labels")
    acts = forward_pass(weights, x)
    delta = (acts[-1] - yv) / x.shape[0]
    grads: Weights = [None] * len(weights)
    for k in range(len(weights) - 1, -1, -1):
        grads[k] = (acts[k].T @ delta, delta.sum(axis=0))
        if k > 0:
            delta = (delta @ weights[k][0].T) * (acts[k] > 0.0)
    return grads


@dataclass
class TrainHistory:
    loss: list[float] = field(default_factory=list)  # one entry per epoch
    accuracy: list[float] = field(default_factory=list)
    final_test_accuracy: float | None = None


def sgd_train(
    weights: Weights,
    x,
    y,
    *,
    epochs: int,
    batch_size: int,
    learning_rate: float,
    seed: int = 0,
    shuffle: bool = True,
    x_test=None,
    y_test=None,
) -> tuple[Weights, TrainHistory]:
    """Plain minibatch SGD; the input weights are not mutated.

    Each epoch draws a fresh seeded permutation, walks it in batches of
    ``batch_size`` (last batch may be short), then records full-pass
    training loss and accuracy.
    """
    x = np.asarray(x, dtype=np.float64)
    yv = np.asarray(y, dtype=np.float64).reshape(-1)
    if epochs < 0 or batch_size < 1 or learning_rate < 0:
        raise ValueError("need epochs >= 0, batch_size >= 1, learning_rate >= 0")
    w = [(wk.copy(), bk.copy()) for wk, bk in weights]
    rng = generator(seed, 1)
    n = x.shape[0]
    history = TrainHistory()
    for _ in range(epochs):
        order = rng.permutation(n) if shuffle else np.arange(n)
        for start in range(0, n, batch_size):
            batch = order[start : start + batch_size]
            grads = backprop(w, x[batch], yv[batch])
            w = [
                (wk - learning_rate * gw, bk - learning_rate * gb)
                for (wk, bk), (gw, gb) in zip(w, grads)
            ]
        p = predict_network(w, x)
        history.loss.append(bce_loss(p, yv))
        history.accuracy.append(float(np.mean((p >= 0.5) == (yv == 1))))
    if x_test is not None and y_test is not None:
        pt = predict_network(w, np.asarray(x_test, dtype=np.float64))
        yt = np.asarray(y_test).reshape(-1)
        history.final_test_accuracy = float(np.mean((pt >= 0.5) == (yt == 1)))
    return w, history


def epoch_sweep(
    x_train,
    y_train,
    x_test,
    y_test,
    epoch_list=DEFAULT_EPOCH_LIST,
    *,
    hidden_layer_sizes=(8, 5),
    batch_size: int = 8,
    learning_rate: float = 0.01,
    seed: int = 0,
) -> list[dict]:
    """Retrain from identical initial weights for each epoch count.

    Returns one row per entry, ordered by epochs: epochs, train_accuracy,
    test_accuracy, final_loss.
    """
    if not epoch_list:
        raise ValueError("epoch_list must be non-empty")
    x_train = np.asarray(x_train, dtype=np.float64)
    sizes = [x_train.shape[1], *hidden_layer_sizes, 1]
    rows = []
    for epochs in sorted(int(e) for e in epoch_list):
        w0 = init_network(sizes, seed=seed)
        w, _ = sgd_train(
            w0,
            x_train,
            y_train,
            epochs=epochs,
            batch_size=batch_size,
            learning_rate=learning_rate,
            seed=seed,
        )
        p_train = predict_network(w, x_train)
        p_test = predict_network(w, np.asarray(x_test, dtype=np.float64))
        yt = np.asarray(y_train).reshape(-1)
        ye = np.asarray(y_test).reshape(-1)
        rows.append(
            {
                "epochs": epochs,
                "train_accuracy": float(np.mean((p_train >= 0.5) == (yt == 1))),
                "test_accuracy": float(np.mean((p_test >= 0.5) == (ye == 1))),
                "final_loss": bce_loss(p_train, yt),
            }
        )
    return rows


class DenseNetworkClassifier(BaseEstimator, ClassifierMixin):
    """13-in dense network, hidden sizes (8, 5) by default, sigmoid output.

    Expects min-max scaled inputs; see data.MinMaxScaler.
    """

    def __init__(
        self,
        hidden_layer_sizes=(8, 5),
        epochs: int = 350,
        batch_size: int = 8,
        learning_rate: float = 0.01,
        shuffle: bool = True,
        random_state: int = 0,
    ):
        self.hidden_layer_sizes = tuple(hidden_layer_sizes)
        self.epochs = epochs
        self.batch_size = batch_size
        self.learning_rate = learning_rate
        self.shuffle = shuffle
        self.random_state = random_state
        self.weights_ = None

    def fit(self, x, y):
        x, y = check_X_y(x, y)
        self.n_features_in_ = x.shape[1]
        sizes = [x.shape[1], *self.hidden_layer_sizes, 1]
        w0 = init_network(sizes, seed=self.random_state)
        self.weights_, self.history_ = sgd_train(
            w0,
            x,
            y,
            epochs=self.epochs,
            batch_size=self.batch_size,
            learning_rate=self.learning_rate,
            seed=self.random_state,
            shuffle=self.shuffle,
        )
        return self

    def predict_score(self, x) -> np.ndarray:
        check_is_fitted(self, "weights_")
        x = check_array(x, n_features=self.n_features_in_)
        return predict_network(self.weights_, x)

    def predict(self, x) -> np.ndarray:
        return (self.predict_score(x) >= 0.5).astype(np.int64)
