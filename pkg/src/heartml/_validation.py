"""Input validation helpers used across the estimators."""

from __future__ import annotations

import numpy as np


class NotFittedError(RuntimeError):
    """Estimator used before ``fit``."""


class DataError(ValueError):
    """Malformed dataset file or record."""


def check_array(x, n_features: int | None = None) -> np.ndarray:
    """Coerce to a 2-D float64 matrix and optionally pin the column count."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={arr.ndim}")
    if arr.shape[0] == 0:
        raise ValueError("empty matrix")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix contains non-finite values")
    if n_features is not None and arr.shape[1] != n_features:
        raise ValueError(f"expected {n_features} columns, got {arr.shape[1]}")
    return arr


def check_labels(y) -> np.ndarray:
    """Coerce to a 1-D {0,1} int array."""
    arr = np.asarray(y)
    if arr.ndim != 1:
        arr = arr.reshape(-1)
    if arr.size == 0:
        raise ValueError("empty label vector")
    as_int = arr.astype(np.int64)
    if not np.array_equal(as_int, np.asarray(arr, dtype=np.float64)):
        raise ValueError("labels must be integers")
    if not np.isin(as_int, (0, 1)).all():
        raise ValueError("labels must be 0 or 1")
    return as_int


def check_X_y(x, y, n_features: int | None = None):
    xa = check_array(x, n_features=n_features)
    ya = check_labels(y)
    if xa.shape[0] != ya.shape[0]:
        raise ValueError(f"X has {xa.shape[0]} rows but y has {ya.shape[0]}")
    return xa, ya


def check_both_classes(y: np.ndarray) -> None:
    if len(np.unique(y)) < 2:
        raise ValueError("training data must contain both classes")


def check_is_fitted(estimator, attribute: str) -> None:
    if getattr(estimator, attribute, None) is None:
        raise NotFittedError(
            f"{type(estimator).__name__} is not fitted; call fit() first"
        )
