"""heartml: from-scratch heart-disease classifiers, evaluation, and serving."""

from ._validation import DataError, NotFittedError
from .base import BaseEstimator, ClassifierMixin, clone
from .data import (
    FEATURE_NAMES,
    MinMaxScaler,
    PatientRecord,
    SplitDataset,
    load_and_clean,
    records_to_arrays,
    split_train_test,
)
from .ensemble import (
    AdaBoostClassifier,
    BaggingClassifier,
    ExtraTreesClassifier,
    GradientBoostingClassifier,
    RandomForestClassifier,
)
from .learners import LEARNER_CLASSES, MODEL_TYPES, make_learner
from .metrics import (
    ConfusionCounts,
    RocCurve,
    accuracy_score,
    confusion_counts,
    matthews_corrcoef,
    mcc,
    roc_auc_score,
    roc_curve,
)
from .model_selection import (
    DEFAULT_RF_GRID,
    FoldAssignment,
    GridResult,
    cross_validate,
    expand_grid,
    grid_search,
    stratified_kfold,
)
from .model_store import ModelEnvelope, load_model, save_model
from .naive_bayes import GaussianNB
from .neighbors import KNeighborsClassifier
from .neural import DenseNetworkClassifier, epoch_sweep
from .svm import LinearSVM
from .tree import DecisionTreeClassifier, grow_tree, impurity

__version__ = "0.1.0"

__all__ = [
    "AdaBoostClassifier",
    "BaggingClassifier",
    "BaseEstimator",
    "ClassifierMixin",
    "ConfusionCounts",
    "DEFAULT_RF_GRID",
    "DataError",
    "DecisionTreeClassifier",
    "DenseNetworkClassifier",
    "ExtraTreesClassifier",
    "FEATURE_NAMES",
    "FoldAssignment",
    "GaussianNB",
    "GradientBoostingClassifier",
    "GridResult",
    "KNeighborsClassifier",
    "LEARNER_CLASSES",
    "LinearSVM",
    "MODEL_TYPES",
    "MinMaxScaler",
    "ModelEnvelope",
    "NotFittedError",
    "PatientRecord",
    "RandomForestClassifier",
    "RocCurve",
    "SplitDataset",
    "accuracy_score",
    "clone",
    "confusion_counts",
    "cross_validate",
    "epoch_sweep",
    "expand_grid",
    "grid_search",
    "grow_tree",
    "impurity",
    "load_and_clean",
    "load_model",
    "make_learner",
    "matthews_corrcoef",
    "mcc",
    "records_to_arrays",
    "roc_auc_score",
    "roc_curve",
    "save_model",
    "split_train_test",
    "stratified_kfold",
]
