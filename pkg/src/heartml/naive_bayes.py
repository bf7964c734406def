"""Gaussian naive Bayes with a per-feature variance floor."""

from __future__ import annotations

import numpy as np

from ._validation import check_X_y, check_array, check_both_classes, check_is_fitted
from .base import BaseEstimator, ClassifierMixin

_LOG_2PI = float(np.log(2.0 * np.pi))


class GaussianNB(BaseEstimator, ClassifierMixin):
    """Class priors from frequencies, per-class per-feature Gaussian likelihoods.

    Each stored variance is floored at 1e-9 * (global feature variance + 1)
    so constant features cannot produce singular likelihoods.  Posteriors
    are computed in log space and normalized.
    """

    VAR_FLOOR_SCALE = 1e-9

    def __init__(self):
        self.class_prior_ = None

    def fit(self, x, y):
        x, y = check_X_y(x, y)
        check_both_classes(y)
        self.n_features_in_ = x.shape[1]
        floor = self.VAR_FLOOR_SCALE * (x.var(axis=0) + 1.0)
        self.var_floor_ = floor
        priors, theta, var = [], [], []
        for cls in (0, 1):
            rows = x[y == cls]
            priors.append(rows.shape[0] / x.shape[0])
            theta.append(rows.mean(axis=0))
            var.append(np.maximum(rows.var(axis=0), floor))
        self.class_prior_ = np.asarray(priors)
        self.theta_ = np.stack(theta)
        self.var_ = np.stack(var)
        return self

    def _joint_log_likelihood(self, x: np.ndarray) -> np.ndarray:
        out = np.empty((x.shape[0], 2))
        for cls in (0, 1):
            diff = x - self.theta_[cls]
            log_lik = -0.5 * (
                _LOG_2PI + np.log(self.var_[cls]) + diff * diff / self.var_[cls]
            )
            out[:, cls] = np.log(self.class_prior_[cls]) + log_lik.sum(axis=1)
        return out

    def predict_proba(self, x) -> np.ndarray:
        check_is_fitted(self, "class_prior_")
        x = check_array(x, n_features=self.n_features_in_)
        joint = self._joint_log_likelihood(x)
        joint -= joint.max(axis=1, keepdims=True)
        p = np.exp(joint)
        return p / p.sum(axis=1, keepdims=True)

    def predict_score(self, x) -> np.ndarray:
        return self.predict_proba(x)[:, 1]

    def predict(self, x) -> np.ndarray:
        return (self.predict_score(x) >= 0.5).astype(np.int64)
