"""Portable on-disk model bundles.

A ``.model`` file is a single JSON document with top-level keys
schema_version, model_type, feature_order, scaler, payload, metadata.
Floats are serialized with full round-trip precision, so a loaded model
predicts bit-identically to the one saved.  Trees are stored as flat node
arrays with child indices (-1 marks "no child").
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from .data import FEATURE_NAMES, MinMaxScaler
from .ensemble import (
    AdaBoostClassifier,
    BaggingClassifier,
    ExtraTreesClassifier,
    GradientBoostingClassifier,
    RandomForestClassifier,
)
from .learners import LEARNER_CLASSES, model_type_of
from .naive_bayes import GaussianNB
from .neighbors import KNeighborsClassifier
from .neural import DenseNetworkClassifier
from .svm import LinearSVM
from .tree import DecisionTreeClassifier, FlatTree

SCHEMA_VERSION = 1


class ModelFormatError(ValueError):
    """Document cannot be parsed."""


class ModelVersionError(ValueError):
    """Unsupported schema_version."""


class ModelValidationError(ValueError):
    """Parsed document violates the envelope contract."""


def _sigmoid_scalar(z: np.ndarray) -> np.ndarray:
    return np.where(z >= 0, 1.0 / (1.0 + np.exp(-np.abs(z))), np.exp(-np.abs(z)) / (1.0 + np.exp(-np.abs(z))))


@dataclass
class ModelEnvelope:
    model_type: str
    model: object
    scaler: MinMaxScaler | None = None
    metadata: dict = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION
    feature_order: tuple = FEATURE_NAMES

    def predict(self, x) -> tuple[np.ndarray, np.ndarray]:
        """(labels, scores in [0,1]) on raw-feature rows; applies the scaler."""
        x = np.asarray(x, dtype=np.float64)
        if self.scaler is not None:
            x = self.scaler.transform(x)
        if hasattr(self.model, "predict_score"):
            score = self.model.predict_score(x)
        else:
            # margin-only model: order-preserving squash, uncalibrated
            score = _sigmoid_scalar(self.model.decision_function(x))
        return (score >= 0.5).astype(np.int64), score


def training_metadata(seed: int, metrics: dict | None = None, dataset_fingerprint: str | None = None) -> dict:
    return {
        "trained_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "seed": seed,
        "metrics": metrics or {},
        "dataset_fingerprint": dataset_fingerprint,
    }


def fingerprint_file(path) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def fingerprint_arrays(x, y) -> str:
    x = np.ascontiguousarray(x, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.int64)
    h = hashlib.sha256()
    h.update(repr(x.shape).encode())
    h.update(x.tobytes())
    h.update(y.tobytes())
    return h.hexdigest()


# ---------------------------------------------------------------------------
# payload codecs

def _encode_tree(tree: FlatTree) -> dict:
    return {
        "feature": tree.feature.tolist(),
        "threshold": tree.threshold.tolist(),
        "left": tree.left.tolist(),
        "right": tree.right.tolist(),
        "n_samples": tree.n_samples.tolist(),
        "n_pos": tree.n_pos.tolist(),
        "value": tree.value.tolist(),
    }


def _decode_tree(block: dict) -> FlatTree:
    keys = ("feature", "threshold", "left", "right", "n_samples", "n_pos", "value")
    _require(block, keys, "tree payload")
    lengths = {len(block[k]) for k in keys}
    if len(lengths) != 1:
        raise ModelValidationError("tree node arrays have inconsistent lengths")
    return FlatTree(
        feature=np.asarray(block["feature"], dtype=np.int64),
        threshold=np.asarray(block["threshold"], dtype=np.float64),
        left=np.asarray(block["left"], dtype=np.int64),
        right=np.asarray(block["right"], dtype=np.int64),
        n_samples=np.asarray(block["n_samples"], dtype=np.int64),
        n_pos=np.asarray(block["n_pos"], dtype=np.int64),
        value=np.asarray(block["value"], dtype=np.float64),
    )


def _require(block: dict, keys, what: str) -> None:
    missing = [k for k in keys if k not in block]
    if missing:
        raise ModelValidationError(f"{what} is missing keys {missing}")


def _params_of(model) -> dict:
    params = {}
    for key, value in model.get_params().items():
        if isinstance(value, tuple):
            value = list(value)
        params[key] = value
    return params


def _encode_payload(model_type: str, model) -> dict:
    params = _params_of(model)
    if model_type == "knn":
        return {"params": params, "x": model._fit_x.tolist(), "y": model._fit_y.tolist()}
    if model_type == "gaussian_nb":
        return {
            "params": params,
            "class_prior": model.class_prior_.tolist(),
            "theta": model.theta_.tolist(),
            "var": model.var_.tolist(),
        }
    if model_type == "linear_svm":
        return {
            "params": params,
            "coef": model.coef_.tolist(),
            "intercept": float(model.intercept_),
        }
    if model_type == "decision_tree":
        return {"params": params, "tree": _encode_tree(model.tree_)}
    if model_type in ("random_forest", "bagging", "extra_trees"):
        return {"params": params, "trees": [_encode_tree(t) for t in model.trees_]}
    if model_type == "adaboost":
        return {
            "params": params,
            "alphas": list(model.alphas_),
            "fallback_score": model.fallback_score_,
            "stumps": [_encode_tree(t) for t in model.stumps_],
        }
    if model_type == "gradient_boosting":
        return {
            "params": params,
            "base_score": model.base_score_,
            "stages": [_encode_tree(t) for t in model.stages_],
        }
    if model_type == "dnn":
        layers = []
        for w, b in model.weights_:
            layers.append(
                {
                    "rows": int(w.shape[0]),
                    "cols": int(w.shape[1]),
                    "weights": w.tolist(),
                    "bias": b.tolist(),
                }
            )
        return {"params": params, "layers": layers}
    raise ModelValidationError(f"unknown model_type {model_type!r}")


def _decode_payload(model_type: str, payload: dict):
    _require(payload, ("params",), f"{model_type} payload")
    params = dict(payload["params"])
    cls = LEARNER_CLASSES[model_type]
    if model_type == "dnn" and "hidden_layer_sizes" in params:
        params["hidden_layer_sizes"] = tuple(params["hidden_layer_sizes"])
    try:
        model = cls(**params)
    except TypeError as exc:
        raise ModelValidationError(f"bad params for {model_type}: {exc}") from None

    if model_type == "knn":
        _require(payload, ("x", "y"), "knn payload")
        model._fit_x = np.asarray(payload["x"], dtype=np.float64)
        model._fit_y = np.asarray(payload["y"], dtype=np.int64)
        if model._fit_x.ndim != 2 or model._fit_x.shape[0] != model._fit_y.shape[0]:
            raise ModelValidationError("knn payload arrays have inconsistent shapes")
        model.n_features_in_ = model._fit_x.shape[1]
    elif model_type == "gaussian_nb":
        _require(payload, ("class_prior", "theta", "var"), "gaussian_nb payload")
        model.class_prior_ = np.asarray(payload["class_prior"], dtype=np.float64)
        model.theta_ = np.asarray(payload["theta"], dtype=np.float64)
        model.var_ = np.asarray(payload["var"], dtype=np.float64)
        if model.theta_.shape != model.var_.shape or model.theta_.shape[0] != 2:
            raise ModelValidationError("gaussian_nb payload arrays have bad shapes")
        model.n_features_in_ = model.theta_.shape[1]
    elif model_type == "linear_svm":
        _require(payload, ("coef", "intercept"), "linear_svm payload")
        model.coef_ = np.asarray(payload["coef"], dtype=np.float64)
        model.intercept_ = float(payload["intercept"])
        model.n_features_in_ = model.coef_.shape[0]
    elif model_type == "decision_tree":
        _require(payload, ("tree",), "decision_tree payload")
        model.tree_ = _decode_tree(payload["tree"])
        model.n_features_in_ = len(FEATURE_NAMES)
    elif model_type in ("random_forest", "bagging", "extra_trees"):
        _require(payload, ("trees",), f"{model_type} payload")
        model.trees_ = [_decode_tree(t) for t in payload["trees"]]
        if len(model.trees_) != model.n_estimators:
            raise ModelValidationError(
                f"{model_type} payload has {len(model.trees_)} trees but "
                f"n_estimators={model.n_estimators}"
            )
        model.n_features_in_ = len(FEATURE_NAMES)
    elif model_type == "adaboost":
        _require(payload, ("alphas", "stumps", "fallback_score"), "adaboost payload")
        model.alphas_ = [float(a) for a in payload["alphas"]]
        model.stumps_ = [_decode_tree(t) for t in payload["stumps"]]
        model.fallback_score_ = float(payload["fallback_score"])
        if len(model.alphas_) != len(model.stumps_):
            raise ModelValidationError("adaboost stage counts disagree")
        model.n_features_in_ = len(FEATURE_NAMES)
    elif model_type == "gradient_boosting":
        _require(payload, ("base_score", "stages"), "gradient_boosting payload")
        model.base_score_ = float(payload["base_score"])
        model.stages_ = [_decode_tree(t) for t in payload["stages"]]
        model.n_features_in_ = len(FEATURE_NAMES)
    elif model_type == "dnn":
        _require(payload, ("layers",), "dnn payload")
        weights = []
        for i, layer in enumerate(payload["layers"]):
            _require(layer, ("rows", "cols", "weights", "bias"), f"dnn layer {i}")
            w = np.asarray(layer["weights"], dtype=np.float64)
            b = np.asarray(layer["bias"], dtype=np.float64)
            if w.shape != (layer["rows"], layer["cols"]) or b.shape != (layer["cols"],):
                raise ModelValidationError(f"dnn layer {i} shape mismatch")
            weights.append((w, b))
        if not weights:
            raise ModelValidationError("dnn payload has no layers")
        model.weights_ = weights
        model.n_features_in_ = weights[0][0].shape[0]
    return model


def envelope_to_dict(envelope: ModelEnvelope) -> dict:
    scaler = None
    if envelope.scaler is not None:
        scaler = {
            "mins": envelope.scaler.data_min_.tolist(),
            "maxs": envelope.scaler.data_max_.tolist(),
        }
    return {
        "schema_version": envelope.schema_version,
        "model_type": envelope.model_type,
        "feature_order": list(envelope.feature_order),
        "scaler": scaler,
        "payload": _encode_payload(envelope.model_type, envelope.model),
        "metadata": envelope.metadata,
    }


def envelope_from_dict(doc: dict) -> ModelEnvelope:
    if not isinstance(doc, dict):
        raise ModelValidationError("document root must be an object")
    _require(doc, ("schema_version", "model_type", "feature_order", "scaler", "payload", "metadata"), "envelope")
    version = doc["schema_version"]
    if version != SCHEMA_VERSION:
        raise ModelVersionError(
            f"unsupported schema_version {version}; this build reads version {SCHEMA_VERSION}"
        )
    model_type = doc["model_type"]
    if model_type not in LEARNER_CLASSES:
        raise ModelValidationError(f"unknown model_type {model_type!r}")
    if list(doc["feature_order"]) != list(FEATURE_NAMES):
        raise ModelValidationError(
            f"feature_order must be {list(FEATURE_NAMES)}, got {doc['feature_order']}"
        )
    scaler = None
    if doc["scaler"] is not None:
        block = doc["scaler"]
        _require(block, ("mins", "maxs"), "scaler")
        scaler = MinMaxScaler()
        scaler.data_min_ = np.asarray(block["mins"], dtype=np.float64)
        scaler.data_max_ = np.asarray(block["maxs"], dtype=np.float64)
        if scaler.data_min_.shape != scaler.data_max_.shape:
            raise ModelValidationError("scaler mins/maxs lengths differ")
    if model_type == "dnn" and scaler is None:
        raise ModelValidationError("dnn envelopes require a scaler (scaled inputs)")
    model = _decode_payload(model_type, doc["payload"])
    return ModelEnvelope(
        model_type=model_type,
        model=model,
        scaler=scaler,
        metadata=doc["metadata"],
        schema_version=version,
    )


def make_envelope(model, scaler=None, metadata=None) -> ModelEnvelope:
    return ModelEnvelope(
        model_type=model_type_of(model),
        model=model,
        scaler=scaler,
        metadata=metadata or {},
    )


def save_model(envelope: ModelEnvelope, path) -> None:
    """Atomic write (temp file + rename) of the envelope document."""
    doc = envelope_to_dict(envelope)
    text = json.dumps(doc, indent=1, allow_nan=False)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".model.tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_model(path) -> ModelEnvelope:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ModelFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ModelFormatError(
            f"{path}: parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    return envelope_from_dict(doc)
