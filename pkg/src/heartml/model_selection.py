"""Stratified k-fold cross-validation and exhaustive grid search."""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._rng import generator
from ._validation import check_labels
from .base import clone
from .metrics import accuracy_score

logger = logging.getLogger(__name__)

# Shipped default grid for the random-forest gridsearch command (kept
# verbatim, duplicates included; expansion deduplicates them).
DEFAULT_RF_GRID = {
    "n_estimators": [4, 6, 9, 13, 8],
    "max_features": ["log2", "sqrt", "auto"],
    "criterion": ["entropy", "gini"],
    "max_depth": [1, 16, 32, 32, 26],
    "min_samples_split": [2, 3, 5, 8, 12],
    "min_samples_leaf": [1, 2, 8, 10, 15],
}


@dataclass(frozen=True)
class FoldAssignment:
    k: int
    fold_of: np.ndarray  # fold index per row
    seed: int

    def split(self, fold: int) -> tuple[np.ndarray, np.ndarray]:
        test = np.nonzero(self.fold_of == fold)[0]
        train = np.nonzero(self.fold_of != fold)[0]
        return train, test

    def iter_splits(self):
        for fold in range(self.k):
            yield self.split(fold)


def stratified_kfold(y, k: int, seed: int = 0) -> FoldAssignment:
    """Seeded stratified partition: deal each shuffled class round-robin,
    continuing the fold pointer across classes so total fold sizes also
    differ by at most one."""
    yv = check_labels(y)
    n = yv.shape[0]
    if not 2 <= k <= n:
        raise ValueError(f"k must be in [2, {n}], got {k}")
    classes, counts = np.unique(yv, return_counts=True)
    small = counts < k
    if small.any():
        cls = classes[small][0]
        raise ValueError(
            f"class {cls} has only {counts[small][0]} members, fewer than k={k}"
        )
    rng = generator(seed)
    fold_of = np.empty(n, dtype=np.int64)
    pointer = 0
    for cls in classes:
        idx = np.nonzero(yv == cls)[0]
        shuffled = idx[rng.permutation(idx.shape[0])]
        for row in shuffled:
            fold_of[row] = pointer % k
            pointer += 1
    return FoldAssignment(k=k, fold_of=fold_of, seed=seed)


def cross_validate(
    learner, x, y, k: int = 10, seed: int = 0, folds: FoldAssignment | None = None
) -> tuple[list[float], float]:
    """Hold out each fold in turn; returns (fold accuracies, arithmetic mean).

    ``learner`` is an unfitted estimator or a registry name (see
    learners.make_learner); it is cloned per fold.
    """
    if isinstance(learner, str):
        from .learners import make_learner

        learner = make_learner(learner)
    x = np.asarray(x, dtype=np.float64)
    yv = check_labels(y)
    if folds is None:
        folds = stratified_kfold(yv, k, seed)
    scores = []
    for train_idx, test_idx in folds.iter_splits():
        model = clone(learner).fit(x[train_idx], yv[train_idx])
        scores.append(accuracy_score(yv[test_idx], model.predict(x[test_idx])))
    return scores, float(np.mean(scores))


def expand_grid(grid: dict) -> tuple[list[dict], int, int]:
    """Cartesian expansion in lexicographic (name, value-position) order.

    Duplicate values within a list are removed first (first occurrence
    wins) and logged.  Returns (combinations, raw count, deduplicated
    count).
    """
    if not grid:
        raise ValueError("grid must have at least one parameter")
    names = sorted(grid)
    deduped = {}
    raw_total = 1
    for name in names:
        values = list(grid[name])
        if not values:
            raise ValueError(f"parameter {name!r} has an empty candidate list")
        raw_total *= len(values)
        unique = []
        for v in values:
            if v not in unique:
                unique.append(v)
        if len(unique) < len(values):
            logger.info(
                "grid parameter %r: deduplicated %d -> %d values",
                name,
                len(values),
                len(unique),
            )
        deduped[name] = unique
    combos = [
        dict(zip(names, values))
        for values in itertools.product(*(deduped[n] for n in names))
    ]
    return combos, raw_total, len(combos)


@dataclass(frozen=True)
class GridEntry:
    params: dict
    fold_scores: list[float]
    mean: float


@dataclass(frozen=True)
class GridResult:
    best_params: dict
    best_mean_score: float
    table: list[GridEntry]
    raw_combinations: int
    combinations: int


def _combo_mean(entry_scores: list[float]) -> float:
    return float(np.mean(entry_scores))


def _forest_prefix_scores(proto, params, n_list, x, y, folds):
    """Score every requested n_estimators in one pass per fold.

    Tree i of a forest depends only on (random_state, i), so a smaller
    forest is a prefix of a larger one; cumulative votes give results
    identical to fitting each size separately.
    """
    max_n = max(n_list)
    per_fold = {n: [] for n in n_list}
    for train_idx, test_idx in folds.iter_splits():
        model = clone(proto).set_params(**params, n_estimators=max_n)
        model.fit(x[train_idx], y[train_idx])
        votes = np.cumsum(model.tree_votes(x[test_idx]), axis=1)
        for n in n_list:
            pred = (votes[:, n - 1] / n >= 0.5).astype(np.int64)
            per_fold[n].append(accuracy_score(y[test_idx], pred))
    return per_fold


def grid_search(
    grid: dict,
    learner,
    x,
    y,
    k: int = 10,
    seed: int = 0,
    n_threads: int = 1,
) -> GridResult:
    """Cross-validated evaluation of the full (deduplicated) grid.

    Every combination shares the same fold assignment and the learner's own
    random_state, so re-running the winner through cross_validate reproduces
    its table entry exactly.  Ties go to the earliest combination in
    enumeration order.
    """
    if isinstance(learner, str):
        from .learners import make_learner

        learner = make_learner(learner)
    x = np.asarray(x, dtype=np.float64)
    yv = check_labels(y)
    valid_names = set(learner._param_names())
    for name in grid:
        if name not in valid_names:
            raise ValueError(
                f"unknown parameter {name!r} for {type(learner).__name__}"
            )
    combos, raw_n, dedup_n = expand_grid(grid)
    folds = stratified_kfold(yv, k, seed)

    results: dict[int, GridEntry] = {}
    prefixable = (
        hasattr(learner, "tree_votes")
        and "n_estimators" in grid
        and len(grid) > 1
    )
    if prefixable:
        # group combinations differing only in n_estimators
        groups: dict[tuple, list[int]] = {}
        for i, combo in enumerate(combos):
            key = tuple((n, v) for n, v in sorted(combo.items()) if n != "n_estimators")
            groups.setdefault(key, []).append(i)

        def run_group(item):
            key, indices = item
            base = dict(key)
            n_list = [combos[i]["n_estimators"] for i in indices]
            per_fold = _forest_prefix_scores(learner, base, n_list, x, yv, folds)
            return [
                (i, GridEntry(combos[i], per_fold[n], _combo_mean(per_fold[n])))
                for i, n in zip(indices, n_list)
            ]

        items = list(groups.items())
        if n_threads > 1:
            with ThreadPoolExecutor(max_workers=n_threads) as pool:
                chunks = list(pool.map(run_group, items))
        else:
            chunks = [run_group(it) for it in items]
        for chunk in chunks:
            for i, entry in chunk:
                results[i] = entry
    else:

        def run_combo(i):
            scores, mean = cross_validate(
                clone(learner).set_params(**combos[i]), x, yv, folds=folds
            )
            return i, GridEntry(combos[i], scores, mean)

        if n_threads > 1:
            with ThreadPoolExecutor(max_workers=n_threads) as pool:
                for i, entry in pool.map(run_combo, range(len(combos))):
                    results[i] = entry
        else:
            for i in range(len(combos)):
                idx, entry = run_combo(i)
                results[idx] = entry

    table = [results[i] for i in range(len(combos))]
    best = max(range(len(table)), key=lambda i: (table[i].mean, -i))
    return GridResult(
        best_params=table[best].params,
        best_mean_score=table[best].mean,
        table=table,
        raw_combinations=raw_n,
        combinations=dedup_n,
    )
