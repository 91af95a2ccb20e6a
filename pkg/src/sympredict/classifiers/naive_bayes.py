"""Bernoulli naive bayes with Laplace smoothing, computed in log space.

Features are binary symptom flags, so each feature contributes P(x_i=1|c)
when present and P(x_i=0|c) when absent. Likelihoods are Laplace-smoothed
so no conditional probability is ever zero; everything is stored as logs
to survive 100+ feature products without underflow.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..dataset import LabeledDataset, SymptomVocabulary
from ..errors import ConfigError, DimensionError
from .posterior import ClassPosterior


@dataclass
class NbModel:
    log_priors: np.ndarray  # (C,)
    log_likelihood_on: np.ndarray  # (C, D) = log P(x_i=1 | c)
    log_likelihood_off: np.ndarray  # (C, D) = log P(x_i=0 | c)
    smoothing: float
    vocabulary: SymptomVocabulary
    class_names: tuple[str, ...]

    @property
    def n_classes(self) -> int:
        return len(self.class_names)


def nb_train(train: LabeledDataset, smoothing: float = 1.0) -> NbModel:
    if smoothing <= 0:
        raise ConfigError(f"smoothing must be > 0, got {smoothing}")
    if train.n_rows == 0:
        raise ConfigError("cannot train on an empty dataset")
    n_classes = train.n_classes
    class_counts = np.bincount(train.labels, minlength=n_classes).astype(np.float64)
    one_hot = np.zeros((train.n_rows, n_classes), dtype=np.float64)
    one_hot[np.arange(train.n_rows), train.labels] = 1.0
    on_counts = one_hot.T @ train.features.astype(np.float64)  # (C, D)

    denom = (class_counts + 2.0 * smoothing)[:, None]
    p_on = (on_counts + smoothing) / denom
    p_off = (class_counts[:, None] - on_counts + smoothing) / denom
    with np.errstate(divide="ignore"):
        # a class absent from this training subset gets a -inf prior, which
        # correctly zeroes it out of every posterior
        log_priors = np.log(class_counts / train.n_rows)
    return NbModel(
        log_priors=log_priors,
        log_likelihood_on=np.log(p_on),
        log_likelihood_off=np.log(p_off),
        smoothing=float(smoothing),
        vocabulary=train.vocabulary,
        class_names=train.class_names,
    )


def _check_dim(model: NbModel, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x)
    if x.shape[-1] != model.log_likelihood_on.shape[1]:
        raise DimensionError(
            f"query has {x.shape[-1]} features, model expects "
            f"{model.log_likelihood_on.shape[1]}"
        )
    return x.astype(np.float64, copy=False)


def nb_log_scores(model: NbModel, queries: np.ndarray) -> np.ndarray:
    """Unnormalized log posterior scores, (n_queries, n_classes)."""
    q = np.atleast_2d(_check_dim(model, queries))
    return (
        model.log_priors[None, :]
        + q @ model.log_likelihood_on.T
        + (1.0 - q) @ model.log_likelihood_off.T
    )


def nb_predict_batch(model: NbModel, queries: np.ndarray) -> np.ndarray:
    """Posterior matrix for many queries; rows normalized to sum to 1."""
    scores = nb_log_scores(model, queries)
    scores -= scores.max(axis=1, keepdims=True)  # stable softmax
    probs = np.exp(scores)
    probs /= probs.sum(axis=1, keepdims=True)
    return probs


def nb_predict(model: NbModel, x: np.ndarray) -> ClassPosterior:
    x = _check_dim(model, x)
    if x.ndim != 1:
        raise DimensionError("nb_predict takes a single feature vector")
    return ClassPosterior(probabilities=nb_predict_batch(model, x[None, :])[0])
