"""Independent brute-force oracles the fast implementations are checked against."""

import math

import numpy as np


def pairwise_auc(y, scores) -> float:
    """Tie-aware Mann-Whitney statistic over all positive-negative pairs."""
    y = np.asarray(y)
    s = np.asarray(scores, dtype=float)
    pos = s[y == 1]
    neg = s[y == 0]
    wins = 0.0
    for p in pos:
        for n in neg:
            if p > n:
                wins += 1.0
            elif p == n:
                wins += 0.5
    return wins / (len(pos) * len(neg))


def mcc_integer(tp: int, fp: int, tn: int, fn: int) -> float:
    """MCC evaluated from exact integer products."""
    denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn)
    if denom == 0:
        return 0.0
    return (tp * tn - fp * fn) / math.sqrt(denom)


def tally_confusion(y, p):
    tp = sum(1 for a, b in zip(y, p) if a == 1 and b == 1)
    fp = sum(1 for a, b in zip(y, p) if a == 0 and b == 1)
    tn = sum(1 for a, b in zip(y, p) if a == 0 and b == 0)
    fn = sum(1 for a, b in zip(y, p) if a == 1 and b == 0)
    return tp, fp, tn, fn


def best_stump_accuracy(x, y) -> float:
    """Exhaustive search over every (feature, threshold, orientation) stump."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y)
    best = max(np.mean(y == 0), np.mean(y == 1))  # constant predictors
    for j in range(x.shape[1]):
        for t in np.unique(x[:, j]):
            left = x[:, j] <= t
            for lo, hi in ((0, 1), (1, 0)):
                pred = np.where(left, lo, hi)
                best = max(best, float(np.mean(pred == y)))
    return float(best)


def numeric_gradients(loss_fn, weights, h: float = 1e-5):
    """Central finite differences of a scalar loss over (W, b) pair lists."""
    grads = []
    for layer, (w, b) in enumerate(weights):
        gw = np.zeros_like(w)
        gb = np.zeros_like(b)
        for arr, grad in ((w, gw), (b, gb)):
            it = np.nditer(arr, flags=["multi_index"])
            for _ in it:
                idx = it.multi_index
                orig = arr[idx]
                arr[idx] = orig + h
                up = loss_fn(weights)
                arr[idx] = orig - h
                down = loss_fn(weights)
                arr[idx] = orig
                grad[idx] = (up - down) / (2.0 * h)
        grads.append((gw, gb))
    return grads


def is_linearly_separable(x, y_signed) -> bool:
    """Check a candidate max-margin-ish separator found by the perceptron.

    Good enough for toy fixtures: run the perceptron to convergence bound
    and verify zero training errors.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y_signed, dtype=float)
    w = np.zeros(x.shape[1])
    b = 0.0
    for _ in range(10_000):
        errors = 0
        for i in range(x.shape[0]):
            if y[i] * (x[i] @ w + b) <= 0:
                w += y[i] * x[i]
                b += y[i]
                errors += 1
        if errors == 0:
            return True
    return False
