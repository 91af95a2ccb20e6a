import json

import numpy as np
import pytest

from sympredict.classifiers import knn_train, nb_train, rf_train
from sympredict.classifiers.forest import rf_predict_batch
from sympredict.classifiers.knn import knn_predict_batch
from sympredict.classifiers.naive_bayes import nb_predict_batch
from sympredict.ensemble import EnsembleModel, ensemble_predict_batch
from sympredict.errors import ConfigError
from sympredict.serialization import (
    load_model,
    load_training_info,
    model_from_document,
    model_to_document,
    save_model,
)

from conftest import random_dataset


@pytest.fixture
def ds(rng):
    return random_dataset(rng, 50, 9, 4)


@pytest.fixture
def queries(rng):
    return (rng.random((25, 9)) < 0.5).astype(np.uint8)


def _roundtrip(model, tmp_path, training_info=None):
    path = str(tmp_path / "model.json")
    save_model(model, path, training_info)
    return load_model(path)


def test_knn_roundtrip(ds, queries, tmp_path):
    model = knn_train(ds, 4)
    loaded = _roundtrip(model, tmp_path)
    assert loaded.n_neighbors == 4
    assert loaded.vocabulary.symptoms == ds.vocabulary.symptoms
    assert np.array_equal(
        knn_predict_batch(model, queries), knn_predict_batch(loaded, queries)
    )


def test_nb_roundtrip(ds, queries, tmp_path):
    model = nb_train(ds, smoothing=0.5)
    loaded = _roundtrip(model, tmp_path)
    assert np.array_equal(
        nb_predict_batch(model, queries), nb_predict_batch(loaded, queries)
    )


def test_nb_roundtrip_with_absent_class(tmp_path, rng):
    from conftest import make_dataset

    ds = make_dataset([[1], [0]], [0, 0], class_names=("a", "b"))
    model = nb_train(ds)  # class b has a -inf log prior
    loaded = _roundtrip(model, tmp_path)
    x = np.array([[1]], np.uint8)
    assert np.array_equal(nb_predict_batch(model, x), nb_predict_batch(loaded, x))


def test_rf_roundtrip(ds, queries, tmp_path):
    model = rf_train(ds, n_trees=7, seed=3, max_depth=6)
    loaded = _roundtrip(model, tmp_path)
    assert loaded.max_depth == 6
    assert loaded.n_trees == 7
    for ta, tb in zip(model.trees, loaded.trees):
        assert np.array_equal(ta.feature, tb.feature)
        assert np.array_equal(ta.leaf_counts, tb.leaf_counts)
    assert np.array_equal(
        rf_predict_batch(model, queries), rf_predict_batch(loaded, queries)
    )


def test_ensemble_roundtrip(ds, queries, tmp_path):
    model = EnsembleModel(
        knn=knn_train(ds, 3),
        nb=nb_train(ds),
        rf=rf_train(ds, n_trees=5, seed=1),
        weights={"knn": 0.91, "naive_bayes": 0.84, "random_forest": 0.93},
    )
    loaded = _roundtrip(model, tmp_path, training_info={"seed": 7, "alpha": 3})
    assert loaded.weights == model.weights
    assert np.array_equal(
        ensemble_predict_batch(model, queries), ensemble_predict_batch(loaded, queries)
    )
    assert load_training_info(str(tmp_path / "model.json")) == {"seed": 7, "alpha": 3}


def test_version_check(ds, tmp_path):
    doc = model_to_document(knn_train(ds, 1))
    doc["format_version"] = 99
    with pytest.raises(ConfigError):
        model_from_document(doc)


def test_unknown_kind_rejected(ds):
    doc = model_to_document(knn_train(ds, 1))
    doc["kind"] = "gradient_boosting"
    with pytest.raises(ConfigError):
        model_from_document(doc)


def test_corrupt_file_rejected(tmp_path):
    path = tmp_path / "model.json"
    path.write_text("{broken")
    with pytest.raises(ConfigError):
        load_model(str(path))


def test_document_is_plain_json(ds):
    doc = model_to_document(
        EnsembleModel(
            knn=knn_train(ds, 2),
            nb=nb_train(ds),
            rf=rf_train(ds, n_trees=2, seed=0),
            weights={"knn": 1.0, "naive_bayes": 1.0, "random_forest": 1.0},
        )
    )
    text = json.dumps(doc)
    parsed = json.loads(text)
    assert parsed["kind"] == "ensemble"
    assert parsed["format_version"] == 1
    assert set(parsed["members"]) == {"knn", "naive_bayes", "random_forest"}
