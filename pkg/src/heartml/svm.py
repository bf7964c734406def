"""Linear SVM trained by Pegasos-style stochastic subgradient descent."""

from __future__ import annotations

import numpy as np

from ._rng import generator
from ._validation import check_X_y, check_array, check_both_classes, check_is_fitted
from .base import BaseEstimator, ClassifierMixin


class LinearSVM(BaseEstimator, ClassifierMixin):
    """Hinge loss + L2 regularization, step size 1/(lam * t).

    Labels map {0,1} -> {-1,+1} internally; the bias is updated without
    regularization.  The model exposes raw margins via decision_function
    (they are not probabilities, so this learner sits out the ROC study).
    """

    def __init__(self, lam: float = 0.01, epochs: int = 200, random_state: int = 0):
        self.lam = lam
        self.epochs = epochs
        self.random_state = random_state
        self.coef_ = None

    def fit(self, x, y):
        x, y = check_X_y(x, y)
        check_both_classes(y)
        if self.lam <= 0:
            raise ValueError("lam must be > 0")
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")
        self.n_features_in_ = x.shape[1]
        ys = np.where(y == 1, 1.0, -1.0)
        n = x.shape[0]
        w = np.zeros(x.shape[1])
        b = 0.0
        rng = generator(self.random_state)
        t = 0
        for _ in range(self.epochs):
            for i in rng.permutation(n):
                t += 1
                eta = 1.0 / (self.lam * t)
                margin = ys[i] * (x[i] @ w + b)
                w *= 1.0 - eta * self.lam
                if margin < 1.0:
                    w += eta * ys[i] * x[i]
                    b += eta * ys[i]
        self.coef_ = w
        self.intercept_ = b
        return self

    def decision_function(self, x) -> np.ndarray:
        check_is_fitted(self, "coef_")
        x = check_array(x, n_features=self.n_features_in_)
        return x @ self.coef_ + self.intercept_

    def predict(self, x) -> np.ndarray:
        return (self.decision_function(x) >= 0.0).astype(np.int64)
