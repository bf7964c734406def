import json
import os

import numpy as np
import pytest

from heartml import MODEL_TYPES, MinMaxScaler, load_model, make_learner, save_model
from heartml.model_store import (
    ModelFormatError,
    ModelValidationError,
    ModelVersionError,
    fingerprint_arrays,
    fingerprint_file,
    make_envelope,
    training_metadata,
)

from conftest import random_binary_problem


def fit_model(name, seed=0):
    x, y = random_binary_problem(seed, n=50)
    est = make_learner(name)
    scaler = None
    if name == "dnn":
        est.set_params(epochs=8)
        scaler = MinMaxScaler().fit(x)
        est.fit(scaler.transform(x), y)
    else:
        est.fit(x, y)
    return est, scaler


@pytest.mark.parametrize("name", MODEL_TYPES)
def test_round_trip_predictions_bit_identical(name, tmp_path):
    est, scaler = fit_model(name)
    envelope = make_envelope(est, scaler=scaler, metadata=training_metadata(seed=0))
    path = tmp_path / f"{name}.model"
    save_model(envelope, path)
    loaded = load_model(path)
    q = np.random.default_rng(42).normal(size=(30, 13))
    labels_a, scores_a = envelope.predict(q)
    labels_b, scores_b = loaded.predict(q)
    assert np.array_equal(labels_a, labels_b)
    assert np.array_equal(scores_a, scores_b)  # bit-identical floats


def test_document_layout_and_dnn_shapes(tmp_path):
    est, scaler = fit_model("dnn")
    path = tmp_path / "net.model"
    save_model(make_envelope(est, scaler=scaler), path)
    doc = json.loads(path.read_text())
    assert list(doc) == ["schema_version", "model_type", "feature_order", "scaler", "payload", "metadata"]
    assert doc["schema_version"] == 1
    assert doc["model_type"] == "dnn"
    layers = doc["payload"]["layers"]
    assert [(l["rows"], l["cols"]) for l in layers] == [(13, 8), (8, 5), (5, 1)]
    for layer in layers:
        assert len(layer["weights"]) == layer["rows"]
        assert all(len(row) == layer["cols"] for row in layer["weights"])


def test_dnn_weights_roundtrip_exactly(tmp_path):
    est, scaler = fit_model("dnn", seed=3)
    path = tmp_path / "net.model"
    save_model(make_envelope(est, scaler=scaler), path)
    loaded = load_model(path)
    for (wa, ba), (wb, bb) in zip(est.weights_, loaded.model.weights_):
        assert np.array_equal(wa, wb)
        assert np.array_equal(ba, bb)


def test_version_error_names_both_versions(tmp_path):
    est, _ = fit_model("gaussian_nb")
    path = tmp_path / "m.model"
    save_model(make_envelope(est), path)
    doc = json.loads(path.read_text())
    doc["schema_version"] = 2
    path.write_text(json.dumps(doc))
    with pytest.raises(ModelVersionError, match="2.*1"):
        load_model(path)


def test_truncated_file_is_parse_error(tmp_path):
    est, _ = fit_model("knn")
    path = tmp_path / "m.model"
    save_model(make_envelope(est), path)
    text = path.read_text()
    path.write_text(text[: len(text) // 2])
    with pytest.raises(ModelFormatError, match="line"):
        load_model(path)


def test_dnn_without_scaler_rejected(tmp_path):
    est, scaler = fit_model("dnn")
    path = tmp_path / "m.model"
    save_model(make_envelope(est, scaler=scaler), path)
    doc = json.loads(path.read_text())
    doc["scaler"] = None
    path.write_text(json.dumps(doc))
    with pytest.raises(ModelValidationError, match="scaler"):
        load_model(path)


def test_payload_model_type_mismatch(tmp_path):
    est, _ = fit_model("linear_svm")
    path = tmp_path / "m.model"
    save_model(make_envelope(est), path)
    doc = json.loads(path.read_text())
    doc["model_type"] = "random_forest"  # payload has no trees
    path.write_text(json.dumps(doc))
    with pytest.raises(ModelValidationError):
        load_model(path)


def test_wrong_feature_order_rejected(tmp_path):
    est, _ = fit_model("knn")
    path = tmp_path / "m.model"
    save_model(make_envelope(est), path)
    doc = json.loads(path.read_text())
    doc["feature_order"] = doc["feature_order"][::-1]
    path.write_text(json.dumps(doc))
    with pytest.raises(ModelValidationError, match="feature_order"):
        load_model(path)


def test_loading_does_not_mutate_file(tmp_path):
    est, _ = fit_model("decision_tree")
    path = tmp_path / "m.model"
    save_model(make_envelope(est), path)
    before = path.read_bytes()
    load_model(path)
    assert path.read_bytes() == before


def test_save_leaves_no_temp_files(tmp_path):
    est, _ = fit_model("adaboost")
    save_model(make_envelope(est), tmp_path / "a.model")
    assert sorted(os.listdir(tmp_path)) == ["a.model"]


def test_fingerprints_are_stable():
    x, y = random_binary_problem(5, n=20)
    assert fingerprint_arrays(x, y) == fingerprint_arrays(x.copy(), y.copy())
    assert fingerprint_arrays(x, y) != fingerprint_arrays(x + 1.0, y)


def test_fingerprint_file(tmp_path):
    p = tmp_path / "f.csv"
    p.write_text("1,2,3\n")
    assert len(fingerprint_file(p)) == 64
