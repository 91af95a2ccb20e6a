"""Nearest-neighbor classifier over binary symptom vectors.

A lazy learner: training stores the instances, prediction ranks them by
Euclidean distance. On 0/1 vectors the squared distance is an integer
(the Hamming count), which lets us make tie-breaking exact: neighbors are
ranked by (squared distance, original row index).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..dataset import LabeledDataset, SymptomVocabulary
from ..errors import ConfigError, DimensionError
from .posterior import ClassPosterior


def euclidean_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Euclidean distance between two equal-length vectors."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.sqrt(np.sum((a - b) ** 2)))


@dataclass
class KnnModel:
    features: np.ndarray  # (n_rows, D) uint8
    labels: np.ndarray  # (n_rows,) int32
    n_neighbors: int
    vocabulary: SymptomVocabulary
    class_names: tuple[str, ...]

    @property
    def n_classes(self) -> int:
        return len(self.class_names)


def knn_train(train: LabeledDataset, n_neighbors: int) -> KnnModel:
    if not (1 <= n_neighbors <= train.n_rows):
        raise ConfigError(
            f"n_neighbors must be in [1, {train.n_rows}], got {n_neighbors}"
        )
    return KnnModel(
        features=train.features,
        labels=train.labels,
        n_neighbors=int(n_neighbors),
        vocabulary=train.vocabulary,
        class_names=train.class_names,
    )


def _check_dim(model: KnnModel, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x)
    if x.shape[-1] != model.features.shape[1]:
        raise DimensionError(
            f"query has {x.shape[-1]} features, model expects "
            f"{model.features.shape[1]}"
        )
    return x.astype(np.uint8, copy=False)


def _squared_distances(train: np.ndarray, queries: np.ndarray) -> np.ndarray:
    """Integer squared Euclidean distances, queries x train rows."""
    tr = train.astype(np.float32)
    q = queries.astype(np.float32)
    d2 = (
        (q * q).sum(axis=1)[:, None]
        + (tr * tr).sum(axis=1)[None, :]
        - 2.0 * (q @ tr.T)
    )
    # binary inputs keep every term integral and exactly representable
    return np.maximum(np.rint(d2), 0).astype(np.int64)


def nearest_neighbor_labels(model: KnnModel, queries: np.ndarray, n_max: int) -> np.ndarray:
    """Labels of each query's n_max nearest training rows, in rank order.

    Rank order is (squared distance, original row index) ascending, so the
    result is deterministic under distance ties.
    """
    queries = np.atleast_2d(_check_dim(model, queries))
    n_rows = model.features.shape[0]
    d2 = _squared_distances(model.features, queries)
    # composite sort key makes argpartition exact: index breaks distance ties
    key = d2 * np.int64(n_rows) + np.arange(n_rows, dtype=np.int64)[None, :]
    if n_max < n_rows:
        part = np.argpartition(key, n_max - 1, axis=1)[:, :n_max]
    else:
        part = np.broadcast_to(np.arange(n_rows), (queries.shape[0], n_rows)).copy()
    part_keys = np.take_along_axis(key, part, axis=1)
    ranked = np.take_along_axis(part, np.argsort(part_keys, axis=1), axis=1)
    return model.labels[ranked]


def knn_predict_batch(model: KnnModel, queries: np.ndarray) -> np.ndarray:
    """Posterior matrix (n_queries, n_classes) for many queries at once."""
    n = model.n_neighbors
    neighbor_labels = nearest_neighbor_labels(model, queries, n)
    counts = np.zeros((neighbor_labels.shape[0], model.n_classes), dtype=np.float64)
    rows = np.repeat(np.arange(neighbor_labels.shape[0]), n)
    np.add.at(counts, (rows, neighbor_labels.ravel()), 1.0)
    return counts / n


def knn_predict(model: KnnModel, x: np.ndarray) -> ClassPosterior:
    """Posterior for one query: neighbor-vote fractions over the n nearest."""
    x = _check_dim(model, x)
    if x.ndim != 1:
        raise DimensionError("knn_predict takes a single feature vector")
    probs = knn_predict_batch(model, x[None, :])[0]
    return ClassPosterior(probabilities=probs)
