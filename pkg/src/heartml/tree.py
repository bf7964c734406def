"""CART-style trees on flat node arrays.

Nodes live in parallel arrays with child indices (-1 marks "no child"), in
preorder.  Split search is vectorized over the candidate feature subset:
sort each column, take class-count prefix sums, score every midpoint
between consecutive distinct values, and break score ties by lower feature
index then lower threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._rng import generator
from ._validation import check_X_y, check_array, check_is_fitted
from .base import BaseEstimator, ClassifierMixin

CRITERIA = ("gini", "entropy")


def normalize_max_features(value) -> str:
    """Accept the 'auto' alias (classification convention: same as 'sqrt')."""
    if value in (None, "all"):
        return "all"
    if value == "auto":
        return "sqrt"
    if value in ("sqrt", "log2"):
        return value
    raise ValueError(f"max_features must be 'sqrt', 'log2', 'auto' or 'all', got {value!r}")


def _subset_size(mode: str, n_features: int) -> int:
    if mode == "sqrt":
        return min(n_features, math.ceil(math.sqrt(n_features)))
    if mode == "log2":
        return min(n_features, math.ceil(math.log2(n_features)))
    return n_features


def impurity(labels, criterion: str = "gini") -> float:
    """Gini (1 - sum p^2) or entropy in bits (-sum p log2 p) of a label multiset."""
    y = np.asarray(labels)
    if y.size == 0:
        raise ValueError("impurity of an empty label set is undefined")
    if criterion not in CRITERIA:
        raise ValueError(f"criterion must be one of {CRITERIA}, got {criterion!r}")
    _, counts = np.unique(y, return_counts=True)
    p = counts / y.size
    if criterion == "gini":
        return float(1.0 - np.sum(p * p))
    return float(-np.sum(p * np.log2(p)))


@dataclass
class FlatTree:
    """Parallel node arrays; ``feature[i] < 0`` marks a leaf."""

    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    n_samples: np.ndarray
    n_pos: np.ndarray
    value: np.ndarray  # leaf prediction: positive fraction, or regression value

    @property
    def n_nodes(self) -> int:
        return self.feature.shape[0]

    def apply(self, x: np.ndarray) -> np.ndarray:
        """Leaf index for every row (rows go left when x[feature] <= threshold)."""
        node = np.zeros(x.shape[0], dtype=np.int64)
        while True:
            feat = self.feature[node]
            active = np.nonzero(feat >= 0)[0]
            if active.size == 0:
                return node
            cur = node[active]
            go_left = x[active, feat[active]] <= self.threshold[cur]
            node[active] = np.where(go_left, self.left[cur], self.right[cur])

    def predict_value(self, x: np.ndarray) -> np.ndarray:
        return self.value[self.apply(x)]

    def depth(self) -> int:
        depths = np.zeros(self.n_nodes, dtype=np.int64)
        for i in range(self.n_nodes):
            for child in (self.left[i], self.right[i]):
                if child >= 0:
                    depths[child] = depths[i] + 1
        return int(depths.max()) if self.n_nodes else 0


def _binary_impurity(pos, total, criterion):
    # vectorized two-class impurity from positive counts (weights allowed)
    with np.errstate(divide="ignore", invalid="ignore"):
        p = np.where(total > 0, pos / total, 0.0)
    if criterion == "gini":
        return 2.0 * p * (1.0 - p)
    q = 1.0 - p
    out = np.zeros_like(p)
    m = p > 0
    out[m] -= p[m] * np.log2(p[m])
    m = q > 0
    out[m] -= q[m] * np.log2(q[m])
    return out


def _best_split_sorted(xs, ys, ws, min_leaf, criterion, regression):
    """Exhaustive midpoint search over all columns of ``xs`` at once.

    Returns (gain, column, threshold) or None when no split has positive
    gain while leaving ``min_leaf`` rows on each side.
    """
    n, f = xs.shape
    if n < 2 * min_leaf:
        return None
    order = np.argsort(xs, axis=0, kind="stable")
    sv = np.take_along_axis(xs, order, axis=0)
    sy = ys[order]

    left_rows = np.arange(1, n, dtype=np.float64)[:, None]
    right_rows = n - left_rows

    if regression:
        cs = np.cumsum(sy, axis=0)
        cs2 = np.cumsum(sy * sy, axis=0)
        tot_s, tot_s2 = cs[-1, 0], cs2[-1, 0]
        ls, ls2 = cs[:-1], cs2[:-1]
        rs, rs2 = tot_s - ls, tot_s2 - ls2
        var_l = np.maximum(ls2 / left_rows - (ls / left_rows) ** 2, 0.0)
        var_r = np.maximum(rs2 / right_rows - (rs / right_rows) ** 2, 0.0)
        parent = max(tot_s2 / n - (tot_s / n) ** 2, 0.0)
        child = (left_rows * var_l + right_rows * var_r) / n
    else:
        if ws is None:
            sw_pos = sy.astype(np.float64)
            cum_w = left_rows
            tot_w = float(n)
        else:
            sw = ws[order]
            sw_pos = sw * sy
            cum_w = np.cumsum(sw, axis=0)[:-1]
            tot_w = float(np.sum(ws))
        cum_pos = np.cumsum(sw_pos, axis=0)
        tot_pos = cum_pos[-1, 0]
        left_pos, left_w = cum_pos[:-1], cum_w
        right_pos, right_w = tot_pos - left_pos, tot_w - left_w
        parent = float(_binary_impurity(np.array(tot_pos), np.array(tot_w), criterion))
        child = (
            left_w * _binary_impurity(left_pos, left_w, criterion)
            + right_w * _binary_impurity(right_pos, right_w, criterion)
        ) / tot_w

    gain = parent - child
    valid = (sv[:-1] != sv[1:]) & (left_rows >= min_leaf) & (right_rows >= min_leaf)
    gain[~valid] = -np.inf
    best_per_col = np.argmax(gain, axis=0)  # first max: lowest threshold
    col_gain = gain[best_per_col, np.arange(f)]
    col = int(np.argmax(col_gain))  # first max: lowest feature index
    if not col_gain[col] > 0.0:
        return None
    pos = best_per_col[col]
    lo, hi = sv[pos, col], sv[pos + 1, col]
    thr = (lo + hi) / 2.0
    if thr >= hi:  # midpoint rounded up to the right value; fall back to lo
        thr = lo
    return float(col_gain[col]), col, float(thr)


def _best_split_random(xs, ys, min_leaf, criterion, rng):
    """One uniform threshold per candidate column between its min and max."""
    n, f = xs.shape
    if n < 2 * min_leaf:
        return None
    lo = xs.min(axis=0)
    hi = xs.max(axis=0)
    spread = hi > lo
    if not spread.any():
        return None
    thr = rng.uniform(lo, np.where(spread, hi, lo + 1.0))
    mask = xs <= thr[None, :]
    left_n = mask.sum(axis=0).astype(np.float64)
    right_n = n - left_n
    left_pos = (mask & (ys == 1)[:, None]).sum(axis=0).astype(np.float64)
    tot_pos = float(ys.sum())
    right_pos = tot_pos - left_pos
    parent = float(_binary_impurity(np.array(tot_pos), np.array(float(n)), criterion))
    child = (
        left_n * _binary_impurity(left_pos, left_n, criterion)
        + right_n * _binary_impurity(right_pos, right_n, criterion)
    ) / n
    gain = parent - child
    gain[~spread | (left_n < min_leaf) | (right_n < min_leaf)] = -np.inf
    col = int(np.argmax(gain))
    if not gain[col] > 0.0:
        return None
    return float(gain[col]), col, float(thr[col])


def grow_tree(
    x,
    y,
    *,
    criterion: str = "gini",
    max_depth: int | None = None,
    min_samples_split: int = 2,
    min_samples_leaf: int = 1,
    max_features: str = "all",
    rng: np.random.Generator | None = None,
    sample_weight: np.ndarray | None = None,
    regression: bool = False,
    random_thresholds: bool = False,
) -> FlatTree:
    """Greedy top-down growth; see the module docstring for the split rules.

    A node becomes a leaf when it is pure, at ``max_depth``, holds fewer
    than ``min_samples_split`` rows, or no candidate split has positive
    gain with ``min_samples_leaf`` rows on both sides.
    """
    x = np.asarray(x, dtype=np.float64)
    if regression:
        y = np.asarray(y, dtype=np.float64)
    else:
        y = np.asarray(y, dtype=np.int64)
    n, d = x.shape
    if n == 0:
        raise ValueError("cannot grow a tree on empty data")
    if not regression and criterion not in CRITERIA:
        raise ValueError(f"criterion must be one of {CRITERIA}, got {criterion!r}")
    if max_depth is not None and max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    if min_samples_split < 2:
        raise ValueError("min_samples_split must be >= 2")
    if min_samples_leaf < 1:
        raise ValueError("min_samples_leaf must be >= 1")
    mode = normalize_max_features(max_features)
    m = _subset_size(mode, d)
    if m < d and rng is None:
        rng = generator(0)

    feature, threshold, left, right = [], [], [], []
    n_samples, n_pos, value = [], [], []

    def new_node(idx) -> int:
        node = len(feature)
        feature.append(-1)
        threshold.append(0.0)
        left.append(-1)
        right.append(-1)
        n_samples.append(idx.shape[0])
        yi = y[idx]
        if regression:
            n_pos.append(0)
            value.append(float(yi.mean()))
        else:
            pos = int(yi.sum())
            n_pos.append(pos)
            if sample_weight is None:
                value.append(pos / idx.shape[0])
            else:
                w = sample_weight[idx]
                value.append(float(np.sum(w * yi) / np.sum(w)))
        return node

    stack = [(np.arange(n), 0, new_node(np.arange(n)))]
    while stack:
        idx, depth, node = stack.pop()
        yi = y[idx]
        pure = (yi == yi[0]).all()
        if (
            pure
            or (max_depth is not None and depth >= max_depth)
            or idx.shape[0] < min_samples_split
        ):
            continue
        feats = np.arange(d) if m == d else np.sort(rng.choice(d, size=m, replace=False))
        xs = x[np.ix_(idx, feats)]
        if random_thresholds:
            found = _best_split_random(xs, yi, min_samples_leaf, criterion, rng)
        else:
            ws = None if sample_weight is None else sample_weight[idx]
            found = _best_split_sorted(xs, yi, ws, min_samples_leaf, criterion, regression)
        if found is None:
            continue
        _, col, thr = found
        feat = int(feats[col])
        go_left = x[idx, feat] <= thr
        left_idx, right_idx = idx[go_left], idx[~go_left]
        feature[node] = feat
        threshold[node] = thr
        l_node = new_node(left_idx)
        r_node = new_node(right_idx)
        left[node], right[node] = l_node, r_node
        # right first so the left subtree is finished first (preorder)
        stack.append((right_idx, depth + 1, r_node))
        stack.append((left_idx, depth + 1, l_node))

    return FlatTree(
        feature=np.asarray(feature, dtype=np.int64),
        threshold=np.asarray(threshold, dtype=np.float64),
        left=np.asarray(left, dtype=np.int64),
        right=np.asarray(right, dtype=np.int64),
        n_samples=np.asarray(n_samples, dtype=np.int64),
        n_pos=np.asarray(n_pos, dtype=np.int64),
        value=np.asarray(value, dtype=np.float64),
    )


class DecisionTreeClassifier(BaseEstimator, ClassifierMixin):
    """Single CART classifier; the building block of every ensemble here."""

    def __init__(
        self,
        criterion: str = "gini",
        max_depth: int | None = None,
        min_samples_split: int = 2,
        min_samples_leaf: int = 1,
        max_features="all",
        random_state: int = 0,
    ):
        self.criterion = criterion
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.min_samples_leaf = min_samples_leaf
        self.max_features = max_features
        self.random_state = random_state
        self.tree_ = None

    def fit(self, x, y):
        x, y = check_X_y(x, y)
        self.n_features_in_ = x.shape[1]
        self.tree_ = grow_tree(
            x,
            y,
            criterion=self.criterion,
            max_depth=self.max_depth,
            min_samples_split=self.min_samples_split,
            min_samples_leaf=self.min_samples_leaf,
            max_features=self.max_features,
            rng=generator(self.random_state),
        )
        return self

    def predict_score(self, x) -> np.ndarray:
        """Positive fraction of the reached leaf, in [0, 1]."""
        check_is_fitted(self, "tree_")
        x = check_array(x, n_features=self.n_features_in_)
        return self.tree_.predict_value(x)

    def predict(self, x) -> np.ndarray:
        return (self.predict_score(x) >= 0.5).astype(np.int64)
