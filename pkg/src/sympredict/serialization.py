"""Versioned JSON (de)serialization for trained models.

Feature matrices are packed as 0/1 strings, tree leaves as sparse
(class, count) pairs; floats go through JSON's shortest-roundtrip repr, so
a loaded model reproduces its predictions bit for bit.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .classifiers import KnnModel, NbModel, RfModel, DecisionTree
from .dataset import SymptomVocabulary
from .ensemble import EnsembleModel
from .errors import ConfigError

FORMAT_VERSION = 1


def _pack_rows(features: np.ndarray) -> list[str]:
    return ["".join("1" if v else "0" for v in row) for row in features]


def _unpack_rows(rows: list[str], width: int) -> np.ndarray:
    out = np.zeros((len(rows), width), dtype=np.uint8)
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ConfigError("corrupt model file: instance width mismatch")
        out[i] = np.frombuffer(row.encode("ascii"), dtype=np.uint8) - ord("0")
    return out


def _floats_out(values: np.ndarray) -> list:
    return [v if math.isfinite(v) else None for v in values.ravel().tolist()]


def _floats_in(values: list, shape: tuple[int, ...]) -> np.ndarray:
    arr = np.array(
        [(-math.inf if v is None else v) for v in values], dtype=np.float64
    )
    return arr.reshape(shape)


def _knn_payload(model: KnnModel) -> dict:
    return {
        "n_neighbors": model.n_neighbors,
        "labels": model.labels.tolist(),
        "instances": _pack_rows(model.features),
    }


def _knn_restore(payload: dict, vocab: SymptomVocabulary, classes: tuple[str, ...]) -> KnnModel:
    return KnnModel(
        features=_unpack_rows(payload["instances"], len(vocab)),
        labels=np.array(payload["labels"], dtype=np.int32),
        n_neighbors=int(payload["n_neighbors"]),
        vocabulary=vocab,
        class_names=classes,
    )


def _nb_payload(model: NbModel) -> dict:
    return {
        "smoothing": model.smoothing,
        "log_priors": _floats_out(model.log_priors),
        "log_likelihood_on": _floats_out(model.log_likelihood_on),
        "log_likelihood_off": _floats_out(model.log_likelihood_off),
    }


def _nb_restore(payload: dict, vocab: SymptomVocabulary, classes: tuple[str, ...]) -> NbModel:
    c, d = len(classes), len(vocab)
    return NbModel(
        log_priors=_floats_in(payload["log_priors"], (c,)),
        log_likelihood_on=_floats_in(payload["log_likelihood_on"], (c, d)),
        log_likelihood_off=_floats_in(payload["log_likelihood_off"], (c, d)),
        smoothing=float(payload["smoothing"]),
        vocabulary=vocab,
        class_names=classes,
    )


def _tree_payload(tree: DecisionTree) -> dict:
    leaves = []
    for node in np.flatnonzero(tree.feature < 0):
        counts = tree.leaf_counts[node]
        pairs = [[int(c), int(counts[c])] for c in np.flatnonzero(counts)]
        leaves.append([int(node), pairs])
    return {
        "feature": tree.feature.tolist(),
        "left": tree.left.tolist(),
        "right": tree.right.tolist(),
        "leaves": leaves,
    }


def _tree_restore(payload: dict, n_classes: int) -> DecisionTree:
    feature = np.array(payload["feature"], dtype=np.int32)
    leaf_counts = np.zeros((feature.shape[0], n_classes), dtype=np.int32)
    for node, pairs in payload["leaves"]:
        for cls, count in pairs:
            leaf_counts[node, cls] = count
    return DecisionTree(
        feature=feature,
        left=np.array(payload["left"], dtype=np.int32),
        right=np.array(payload["right"], dtype=np.int32),
        leaf_counts=leaf_counts,
    )


def _rf_payload(model: RfModel) -> dict:
    return {
        "n_trees": model.n_trees,
        "max_features": model.max_features,
        "seed": model.seed,
        "max_depth": model.max_depth,
        "min_samples_split": model.min_samples_split,
        "bootstrap": model.bootstrap,
        "trees": [_tree_payload(t) for t in model.trees],
    }


def _rf_restore(payload: dict, vocab: SymptomVocabulary, classes: tuple[str, ...]) -> RfModel:
    return RfModel(
        trees=[_tree_restore(t, len(classes)) for t in payload["trees"]],
        n_trees=int(payload["n_trees"]),
        max_features=int(payload["max_features"]),
        seed=int(payload["seed"]),
        max_depth=payload["max_depth"],
        min_samples_split=int(payload["min_samples_split"]),
        bootstrap=bool(payload["bootstrap"]),
        vocabulary=vocab,
        class_names=classes,
    )


_SAVERS = {
    KnnModel: ("knn", _knn_payload),
    NbModel: ("naive_bayes", _nb_payload),
    RfModel: ("random_forest", _rf_payload),
}
_RESTORERS = {
    "knn": _knn_restore,
    "naive_bayes": _nb_restore,
    "random_forest": _rf_restore,
}


def model_to_document(model, training_info: dict | None = None) -> dict:
    """JSON-ready dict for a single classifier or the full ensemble."""
    if isinstance(model, EnsembleModel):
        doc = {
            "format_version": FORMAT_VERSION,
            "kind": "ensemble",
            "vocabulary": list(model.vocabulary.symptoms),
            "class_names": list(model.class_names),
            "weights": dict(model.weights),
            "members": {
                "knn": _knn_payload(model.knn),
                "naive_bayes": _nb_payload(model.nb),
                "random_forest": _rf_payload(model.rf),
            },
        }
    else:
        for cls, (kind, payload_fn) in _SAVERS.items():
            if isinstance(model, cls):
                doc = {
                    "format_version": FORMAT_VERSION,
                    "kind": kind,
                    "vocabulary": list(model.vocabulary.symptoms),
                    "class_names": list(model.class_names),
                    kind: payload_fn(model),
                }
                break
        else:
            raise ConfigError(f"cannot serialize {type(model).__name__}")
    if training_info:
        doc["training"] = training_info
    return doc


def model_from_document(doc: dict):
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise ConfigError(f"unsupported model format_version: {version!r}")
    kind = doc.get("kind")
    vocab = SymptomVocabulary(tuple(doc["vocabulary"]))
    classes = tuple(doc["class_names"])
    if kind == "ensemble":
        members = doc["members"]
        return EnsembleModel(
            knn=_knn_restore(members["knn"], vocab, classes),
            nb=_nb_restore(members["naive_bayes"], vocab, classes),
            rf=_rf_restore(members["random_forest"], vocab, classes),
            weights={k: float(v) for k, v in doc["weights"].items()},
        )
    if kind in _RESTORERS:
        return _RESTORERS[kind](doc[kind], vocab, classes)
    raise ConfigError(f"unknown model kind: {kind!r}")


def save_model(model, path: str, training_info: dict | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_document(model, training_info), fh)


def load_model(path: str):
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"corrupt model file: {exc}") from exc
    return model_from_document(doc)


def load_training_info(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh).get("training", {})
