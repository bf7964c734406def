"""Tree ensembles: random forest, bagging, extra trees, AdaBoost, gradient boosting.

Every forest trains tree ``i`` from a seed mixed from (random_state, i), so
a forest with fewer estimators is an exact prefix of a larger one and the
result does not depend on training order or worker count.

Comparison-sweep defaults are n_estimators=10 and max_depth=16 throughout.
"""

from __future__ import annotations

import math

import numpy as np

from ._rng import generator
from ._validation import check_X_y, check_array, check_both_classes, check_is_fitted
from .base import BaseEstimator, ClassifierMixin
from .tree import FlatTree, grow_tree

_EPS_CLAMP = 1e-10


_UNIT_EPS = np.finfo(np.float64).eps


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    # stage sums can saturate; keep scores strictly inside (0,1)
    return np.clip(out, _UNIT_EPS, 1.0 - _UNIT_EPS)


class _VotingForest(BaseEstimator, ClassifierMixin):
    """Shared fit/predict for the bootstrap-vote ensembles."""

    _random_thresholds = False

    def _tree_params(self) -> dict:
        return {
            "criterion": self.criterion,
            "max_depth": self.max_depth,
            "min_samples_split": self.min_samples_split,
            "min_samples_leaf": self.min_samples_leaf,
            "max_features": self._effective_max_features(),
        }

    def _effective_max_features(self):
        return self.max_features

    def fit(self, x, y):
        x, y = check_X_y(x, y)
        if self.n_estimators < 1:
            raise ValueError("n_estimators must be >= 1")
        self.n_features_in_ = x.shape[1]
        n = x.shape[0]
        params = self._tree_params()
        self.trees_ = []
        for i in range(self.n_estimators):
            rng = generator(self.random_state, i)
            if self.bootstrap:
                idx = rng.integers(0, n, size=n)
                xi, yi = x[idx], y[idx]
            else:
                xi, yi = x, y
            self.trees_.append(
                grow_tree(
                    xi,
                    yi,
                    rng=rng,
                    random_thresholds=self._random_thresholds,
                    **params,
                )
            )
        return self

    def tree_votes(self, x) -> np.ndarray:
        """Per-tree binary votes, shape (rows, n_estimators)."""
        check_is_fitted(self, "trees_")
        x = check_array(x, n_features=self.n_features_in_)
        votes = [(t.predict_value(x) >= 0.5).astype(np.int64) for t in self.trees_]
        return np.stack(votes, axis=1)

    def predict_score(self, x) -> np.ndarray:
        """Fraction of trees voting positive, a multiple of 1/n_estimators."""
        return self.tree_votes(x).mean(axis=1)

    def predict(self, x) -> np.ndarray:
        return (self.predict_score(x) >= 0.5).astype(np.int64)


class RandomForestClassifier(_VotingForest):
    def __init__(
        self,
        n_estimators: int = 10,
        criterion: str = "gini",
        max_depth: int | None = 16,
        min_samples_split: int = 2,
        min_samples_leaf: int = 1,
        max_features="sqrt",
        bootstrap: bool = True,
        random_state: int = 0,
    ):
        self.n_estimators = n_estimators
        self.criterion = criterion
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.min_samples_leaf = min_samples_leaf
        self.max_features = max_features
        self.bootstrap = bootstrap
        self.random_state = random_state
        self.trees_ = None


class BaggingClassifier(_VotingForest):
    """Random forest with full feature consideration at every split."""

    def __init__(
        self,
        n_estimators: int = 10,
        criterion: str = "gini",
        max_depth: int | None = 16,
        min_samples_split: int = 2,
        min_samples_leaf: int = 1,
        bootstrap: bool = True,
        random_state: int = 0,
    ):
        self.n_estimators = n_estimators
        self.criterion = criterion
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.min_samples_leaf = min_samples_leaf
        self.bootstrap = bootstrap
        self.random_state = random_state
        self.trees_ = None

    def _effective_max_features(self):
        return "all"


class ExtraTreesClassifier(_VotingForest):
    """Forest with one uniformly random threshold per candidate feature."""

    _random_thresholds = True

    def __init__(
        self,
        n_estimators: int = 10,
        criterion: str = "gini",
        max_depth: int | None = 16,
        min_samples_split: int = 2,
        min_samples_leaf: int = 1,
        max_features="sqrt",
        bootstrap: bool = False,
        random_state: int = 0,
    ):
        self.n_estimators = n_estimators
        self.criterion = criterion
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.min_samples_leaf = min_samples_leaf
        self.max_features = max_features
        self.bootstrap = bootstrap
        self.random_state = random_state
        self.trees_ = None


class AdaBoostClassifier(BaseEstimator, ClassifierMixin):
    """Two-class SAMME over depth-1 weighted stumps.

    Rounds with weighted error >= 0.5 stop training and are not kept; the
    error is clamped away from 0 and 1 so every stage weight stays finite.
    """

    def __init__(self, n_estimators: int = 10, random_state: int = 0):
        self.n_estimators = n_estimators
        self.random_state = random_state
        self.stumps_ = None

    def fit(self, x, y):
        x, y = check_X_y(x, y)
        check_both_classes(y)
        self.n_features_in_ = x.shape[1]
        n = x.shape[0]
        y_signed = np.where(y == 1, 1.0, -1.0)
        w = np.full(n, 1.0 / n)
        self.stumps_: list[FlatTree] = []
        self.alphas_: list[float] = []
        self.fallback_score_ = float(y.mean())
        self.weight_sums_: list[float] = []  # post-round sums, for auditing
        for _ in range(self.n_estimators):
            stump = grow_tree(
                x, y, max_depth=1, criterion="gini", sample_weight=w
            )
            h = np.where(stump.predict_value(x) >= 0.5, 1.0, -1.0)
            eps = float(np.sum(w[h != y_signed]))
            if eps >= 0.5:
                break
            eps = min(max(eps, _EPS_CLAMP), 1.0 - _EPS_CLAMP)
            alpha = math.log((1.0 - eps) / eps)
            self.stumps_.append(stump)
            self.alphas_.append(alpha)
            w = w * np.exp(alpha * (h != y_signed))
            w = w / w.sum()
            self.weight_sums_.append(float(w.sum()))
        return self

    def decision_function(self, x) -> np.ndarray:
        check_is_fitted(self, "stumps_")
        x = check_array(x, n_features=self.n_features_in_)
        score = np.zeros(x.shape[0])
        for stump, alpha in zip(self.stumps_, self.alphas_):
            h = np.where(stump.predict_value(x) >= 0.5, 1.0, -1.0)
            score += alpha * h
        return score

    def predict_score(self, x) -> np.ndarray:
        """Stage-weight-normalized margin mapped from [-1, 1] onto [0, 1]."""
        total = sum(self.alphas_) if self.alphas_ else 0.0
        if total <= 0.0:
            x = check_array(x, n_features=self.n_features_in_)
            return np.full(x.shape[0], self.fallback_score_)
        return (self.decision_function(x) / total + 1.0) / 2.0

    def predict(self, x) -> np.ndarray:
        return (self.predict_score(x) >= 0.5).astype(np.int64)


class GradientBoostingClassifier(BaseEstimator, ClassifierMixin):
    """Stagewise logistic-loss boosting with variance-split regression trees.

    Starts from the training-rate log-odds; every stage fits the residual
    y - sigmoid(F) and applies the Newton leaf update sum(y - p) over
    sum(p (1 - p)) with the denominator floored at 1e-12.
    """

    def __init__(
        self,
        n_estimators: int = 10,
        learning_rate: float = 0.1,
        max_depth: int | None = 16,
        min_samples_split: int = 2,
        min_samples_leaf: int = 1,
        max_features="all",
        random_state: int = 0,
    ):
        self.n_estimators = n_estimators
        self.learning_rate = learning_rate
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.min_samples_leaf = min_samples_leaf
        self.max_features = max_features
        self.random_state = random_state
        self.stages_ = None

    def fit(self, x, y):
        x, y = check_X_y(x, y)
        check_both_classes(y)
        if self.learning_rate < 0:
            raise ValueError("learning_rate must be >= 0")
        if self.n_estimators < 0:
            raise ValueError("n_estimators must be >= 0")
        self.n_features_in_ = x.shape[1]
        rate = float(y.mean())
        self.base_score_ = math.log(rate / (1.0 - rate))
        yf = y.astype(np.float64)
        raw = np.full(x.shape[0], self.base_score_)
        self.stages_: list[FlatTree] = []
        for i in range(self.n_estimators):
            p = _sigmoid(raw)
            residual = yf - p
            tree = grow_tree(
                x,
                residual,
                regression=True,
                max_depth=self.max_depth,
                min_samples_split=self.min_samples_split,
                min_samples_leaf=self.min_samples_leaf,
                max_features=self.max_features,
                rng=generator(self.random_state, i),
            )
            leaves = tree.apply(x)
            hessian = p * (1.0 - p)
            for leaf in np.unique(leaves):
                rows = leaves == leaf
                denom = max(float(hessian[rows].sum()), 1e-12)
                tree.value[leaf] = float(residual[rows].sum()) / denom
            raw += self.learning_rate * tree.predict_value(x)
            self.stages_.append(tree)
        return self

    def raw_score(self, x) -> np.ndarray:
        check_is_fitted(self, "stages_")
        x = check_array(x, n_features=self.n_features_in_)
        raw = np.full(x.shape[0], self.base_score_)
        for tree in self.stages_:
            raw += self.learning_rate * tree.predict_value(x)
        return raw

    def predict_score(self, x) -> np.ndarray:
        return _sigmoid(self.raw_score(x))

    def predict(self, x) -> np.ndarray:
        return (self.predict_score(x) >= 0.5).astype(np.int64)
