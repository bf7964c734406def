"""Registry mapping learner names to estimator classes and sweep defaults."""

from __future__ import annotations

from .ensemble import (
    AdaBoostClassifier,
    BaggingClassifier,
    ExtraTreesClassifier,
    GradientBoostingClassifier,
    RandomForestClassifier,
)
from .naive_bayes import GaussianNB
from .neighbors import KNeighborsClassifier
from .neural import DenseNetworkClassifier
from .svm import LinearSVM
from .tree import DecisionTreeClassifier

LEARNER_CLASSES = {
    "knn": KNeighborsClassifier,
    "gaussian_nb": GaussianNB,
    "linear_svm": LinearSVM,
    "decision_tree": DecisionTreeClassifier,
    "random_forest": RandomForestClassifier,
    "bagging": BaggingClassifier,
    "extra_trees": ExtraTreesClassifier,
    "adaboost": AdaBoostClassifier,
    "gradient_boosting": GradientBoostingClassifier,
    "dnn": DenseNetworkClassifier,
}

MODEL_TYPES = tuple(LEARNER_CLASSES)

# learners that expect min-max scaled inputs
NEEDS_SCALING = frozenset({"dnn"})

# learners without a [0,1] score: accuracy-only in the comparison report
SCORELESS = frozenset({"linear_svm"})

# the eight learners of the comparison report, in report order
COMPARISON_LEARNERS = (
    "knn",
    "linear_svm",
    "random_forest",
    "gaussian_nb",
    "adaboost",
    "bagging",
    "extra_trees",
    "gradient_boosting",
)


def make_learner(name: str, **overrides):
    """Build an unfitted estimator by registry name."""
    cls = LEARNER_CLASSES.get(name)
    if cls is None:
        raise ValueError(f"unknown learner {name!r}; choose from {MODEL_TYPES}")
    est = cls()
    if overrides:
        est.set_params(**overrides)
    return est


def model_type_of(estimator) -> str:
    for name, cls in LEARNER_CLASSES.items():
        if type(estimator) is cls:
            return name
    raise ValueError(f"{type(estimator).__name__} is not a registered learner")
