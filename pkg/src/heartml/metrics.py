"""Binary classification scoring: confusion counts, accuracy, MCC, ROC/AUC."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._validation import check_labels


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


def confusion_counts(y_true, y_pred) -> ConfusionCounts:
    """Tally a 2x2 confusion matrix; the positive class is 1."""
    yt = check_labels(y_true)
    yp = check_labels(y_pred)
    if yt.shape[0] != yp.shape[0]:
        raise ValueError(f"length mismatch: {yt.shape[0]} vs {yp.shape[0]}")
    tp = int(np.sum((yt == 1) & (yp == 1)))
    fp = int(np.sum((yt == 0) & (yp == 1)))
    tn = int(np.sum((yt == 0) & (yp == 0)))
    fn = int(np.sum((yt == 1) & (yp == 0)))
    return ConfusionCounts(tp=tp, fp=fp, tn=tn, fn=fn)


def accuracy_score(y_true, y_pred) -> float:
    c = confusion_counts(y_true, y_pred)
    return (c.tp + c.tn) / c.total


def mcc(counts: ConfusionCounts) -> float:
    """Matthews correlation coefficient in [-1, 1].

    Computed from exact integer products; any zero factor in the
    denominator yields 0 by convention.
    """
    tp, fp, tn, fn = counts.tp, counts.fp, counts.tn, counts.fn
    if counts.total < 1:
        raise ValueError("need at least one evaluated row")
    denom_sq = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn)
    if denom_sq == 0:
        return 0.0
    return (tp * tn - fp * fn) / math.sqrt(denom_sq)


def matthews_corrcoef(y_true, y_pred) -> float:
    return mcc(confusion_counts(y_true, y_pred))


@dataclass(frozen=True)
class RocCurve:
    """ROC step curve: one point per threshold, highest threshold first.

    ``thresholds[0]`` is a sentinel above the maximum score so the curve
    starts at (0, 0); it ends at (1, 1).  ``auc`` is the trapezoidal
    integral of the points, which equals the tie-aware pairwise ranking
    probability of the scores.
    """

    points: list = field(default_factory=list)  # (fpr, tpr) pairs
    thresholds: list = field(default_factory=list)
    auc: float = 0.0

    def fprs(self) -> list[float]:
        return [p[0] for p in self.points]

    def tprs(self) -> list[float]:
        return [p[1] for p in self.points]


def roc_curve(y_true, scores) -> RocCurve:
    """Sweep descending unique score thresholds, predicting 1 at score >= t."""
    yt = check_labels(y_true)
    s = np.asarray(scores, dtype=np.float64).reshape(-1)
    if s.shape[0] != yt.shape[0]:
        raise ValueError(f"length mismatch: {yt.shape[0]} vs {s.shape[0]}")
    n_pos = int(yt.sum())
    n_neg = int(yt.shape[0] - n_pos)
    if n_pos == 0 or n_neg == 0:
        raise ValueError("ROC needs at least one positive and one negative label")

    order = np.argsort(-s, kind="stable")
    s_sorted = s[order]
    y_sorted = yt[order]

    # cumulative positives/negatives at each distinct-threshold boundary
    distinct = np.nonzero(np.diff(s_sorted))[0]
    boundaries = np.concatenate([distinct, [s_sorted.shape[0] - 1]])
    tps = np.cumsum(y_sorted)[boundaries]
    fps = (boundaries + 1) - tps

    thresholds = [float(s_sorted[0] + 1.0)]
    points = [(0.0, 0.0)]
    for i, b in enumerate(boundaries):
        thresholds.append(float(s_sorted[b]))
        points.append((float(fps[i] / n_neg), float(tps[i] / n_pos)))

    auc = 0.0
    for (x0, y0), (x1, y1) in zip(points[:-1], points[1:]):
        auc += (x1 - x0) * (y0 + y1) / 2.0
    return RocCurve(points=points, thresholds=thresholds, auc=auc)


def roc_auc_score(y_true, scores) -> float:
    return roc_curve(y_true, scores).auc
