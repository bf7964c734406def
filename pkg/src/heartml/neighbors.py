"""K-nearest-neighbors vote classifier (Euclidean metric)."""

from __future__ import annotations

import numpy as np

from ._validation import check_X_y, check_array, check_is_fitted
from .base import BaseEstimator, ClassifierMixin


class KNeighborsClassifier(BaseEstimator, ClassifierMixin):
    """Majority vote of the k nearest training rows.

    Distance ties are broken toward the lower training-row index (stable
    sort on the per-pair squared distances, which order identically to the
    Euclidean distances).
    """

    def __init__(self, n_neighbors: int = 5):
        self.n_neighbors = n_neighbors
        self._fit_x = None

    def fit(self, x, y):
        x, y = check_X_y(x, y)
        if not 1 <= self.n_neighbors <= x.shape[0]:
            raise ValueError(
                f"n_neighbors must be in [1, {x.shape[0]}], got {self.n_neighbors}"
            )
        self.n_features_in_ = x.shape[1]
        self._fit_x = x
        self._fit_y = y
        return self

    def _neighbor_labels(self, x: np.ndarray) -> np.ndarray:
        diff = x[:, None, :] - self._fit_x[None, :, :]
        d2 = np.sum(diff * diff, axis=2)
        order = np.argsort(d2, axis=1, kind="stable")[:, : self.n_neighbors]
        return self._fit_y[order]

    def predict_score(self, x) -> np.ndarray:
        """Fraction of positive labels among the k neighbors."""
        check_is_fitted(self, "_fit_x")
        x = check_array(x, n_features=self.n_features_in_)
        return self._neighbor_labels(x).mean(axis=1)

    def predict(self, x) -> np.ndarray:
        return (self.predict_score(x) >= 0.5).astype(np.int64)
