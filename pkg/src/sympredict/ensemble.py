"""Mean-accuracy weighted soft voting over the three member classifiers.

Each member's ensemble weight is its mean test accuracy over repeated
stratified holdout evaluations. Per-run seeds derive from (seed, run index),
so runs are independent of evaluation order and the whole procedure is
reproducible. Fusion is a weighted average of the members' posteriors.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .classifiers import (
    ClassPosterior,
    KnnModel,
    NbModel,
    RfModel,
    knn_train,
    nb_train,
    rf_train,
)
from .classifiers.knn import knn_predict_batch, nearest_neighbor_labels
from .classifiers.naive_bayes import nb_predict_batch
from .classifiers.forest import rf_predict_batch
from .dataset import LabeledDataset, SplitSpec, split
from .errors import ConfigError

MEMBER_NAMES = ("knn", "naive_bayes", "random_forest")


@dataclass
class MemberParams:
    """Hyperparameters for the three members as trained inside one run."""

    knn_n: int = 5
    nb_smoothing: float = 1.0
    rf_trees: int = 100
    rf_max_features: int | None = None  # None = floor(sqrt(D))
    rf_max_depth: int | None = None
    rf_min_samples_split: int = 2


@dataclass
class EnsembleModel:
    knn: KnnModel
    nb: NbModel
    rf: RfModel
    weights: dict[str, float]

    def __post_init__(self):
        missing = [m for m in MEMBER_NAMES if m not in self.weights]
        if missing:
            raise ConfigError(f"missing weights for members: {missing}")
        w = np.array([self.weights[m] for m in MEMBER_NAMES], dtype=np.float64)
        if w.min() < 0 or w.sum() <= 0:
            raise ConfigError("weights must be >= 0 with at least one > 0")
        vocabs = {self.knn.vocabulary.symptoms, self.nb.vocabulary.symptoms,
                  self.rf.vocabulary.symptoms}
        classes = {self.knn.class_names, self.nb.class_names, self.rf.class_names}
        if len(vocabs) != 1 or len(classes) != 1:
            raise ConfigError("member vocabularies and class lists must be identical")

    @property
    def vocabulary(self):
        return self.knn.vocabulary

    @property
    def class_names(self) -> tuple[str, ...]:
        return self.knn.class_names


@dataclass
class MemberWeight:
    samples: list[float]
    mean: float
    std: float


@dataclass
class WeightReport:
    members: dict[str, MemberWeight]
    alpha: int
    seed: int

    def weight_of(self, member: str) -> float:
        return self.members[member].mean

    def to_json(self) -> str:
        return json.dumps(
            {
                "alpha": self.alpha,
                "seed": self.seed,
                "members": {
                    name: {"mean": mw.mean, "std": mw.std, "samples": mw.samples}
                    for name, mw in self.members.items()
                },
            },
            indent=2,
        )

    def to_csv(self) -> str:
        lines = ["member,weight"]
        lines += [f"{name},{mw.mean!r}" for name, mw in self.members.items()]
        return "\n".join(lines) + "\n"


@dataclass
class SweepResult:
    entries: list[tuple[int, float]]  # (n_neighbors, mean accuracy)
    alpha: int
    seed: int

    @property
    def best_n(self) -> int:
        means = np.array([m for _, m in self.entries])
        return self.entries[int(np.argmax(means))][0]  # ties to smaller n

    def to_json(self) -> str:
        return json.dumps(
            {
                "alpha": self.alpha,
                "seed": self.seed,
                "best_n": self.best_n,
                "entries": [{"n": n, "mean_score": m} for n, m in self.entries],
            },
            indent=2,
        )

    def to_csv(self) -> str:
        lines = ["n,mean_score"]
        lines += [f"{n},{m!r}" for n, m in self.entries]
        return "\n".join(lines) + "\n"


def _run_seeds(seed: int, run: int) -> tuple[int, int]:
    """Split seed and forest seed for one evaluation run."""
    words = np.random.SeedSequence((seed, run)).generate_state(2, np.uint64)
    return int(words[0]), int(words[1])


def train_members(
    train: LabeledDataset, params: MemberParams, rf_seed: int
) -> tuple[KnnModel, NbModel, RfModel]:
    knn = knn_train(train, params.knn_n)
    nb = nb_train(train, params.nb_smoothing)
    rf = rf_train(
        train,
        n_trees=params.rf_trees,
        max_features=params.rf_max_features,
        seed=rf_seed,
        max_depth=params.rf_max_depth,
        min_samples_split=params.rf_min_samples_split,
    )
    return knn, nb, rf


@dataclass
class RunTrace:
    """Per-run member posteriors on that run's test split, for reuse."""

    posteriors: dict[str, np.ndarray]
    y_true: np.ndarray


def evaluate_members(
    ds: LabeledDataset,
    alpha: int,
    seed: int,
    params: MemberParams,
    test_fraction: float = 0.2,
    collect_traces: bool = False,
) -> tuple[dict[str, list[float]], list[RunTrace]]:
    """Train and score all members on alpha derived-seed holdout re-splits.

    Returns per-member accuracy samples; with collect_traces, also each
    run's posterior matrices so callers can re-score fusions without
    retraining.
    """
    if alpha < 1:
        raise ConfigError(f"alpha must be >= 1, got {alpha}")

    def one_run(run: int) -> RunTrace:
        split_seed, rf_seed = _run_seeds(seed, run)
        train_part, test_part = split(
            ds, SplitSpec(test_fraction=test_fraction, seed=split_seed, stratified=True)
        )
        knn, nb, rf = train_members(train_part, params, rf_seed)
        posteriors = {
            "knn": knn_predict_batch(knn, test_part.features),
            "naive_bayes": nb_predict_batch(nb, test_part.features),
            "random_forest": rf_predict_batch(rf, test_part.features),
        }
        return RunTrace(posteriors=posteriors, y_true=test_part.labels)

    # runs use independent derived seeds, so evaluating them concurrently
    # cannot change any result; the jit kernels release the GIL
    n_workers = min(4, os.cpu_count() or 1)
    if n_workers > 1 and alpha > 1:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            run_traces = list(pool.map(one_run, range(1, alpha + 1)))
    else:
        run_traces = [one_run(r) for r in range(1, alpha + 1)]

    samples: dict[str, list[float]] = {name: [] for name in MEMBER_NAMES}
    for trace in run_traces:
        for name in MEMBER_NAMES:
            pred = np.argmax(trace.posteriors[name], axis=1)
            samples[name].append(float(np.mean(pred == trace.y_true)))
    return samples, run_traces if collect_traces else []


def compute_weights(
    ds: LabeledDataset,
    alpha: int,
    seed: int,
    params: MemberParams | None = None,
    test_fraction: float = 0.2,
) -> WeightReport:
    """Mean test accuracy per member over alpha stratified re-splits."""
    params = params or MemberParams()
    samples, _ = evaluate_members(ds, alpha, seed, params, test_fraction)
    members = {
        name: MemberWeight(
            samples=vals,
            mean=float(np.mean(vals)),
            std=float(np.std(vals)),
        )
        for name, vals in samples.items()
    }
    return WeightReport(members=members, alpha=alpha, seed=seed)


def _weight_vector(weights: dict[str, float]) -> np.ndarray:
    w = np.array([weights[m] for m in MEMBER_NAMES], dtype=np.float64)
    if w.sum() <= 0:
        raise ConfigError("ensemble weights sum to zero")
    return w


def fuse_posteriors(
    posteriors: dict[str, np.ndarray], weights: dict[str, float]
) -> np.ndarray:
    """Weighted mean of member posterior matrices, renormalized by sum(w)."""
    w = _weight_vector(weights)
    stacked = np.stack([posteriors[m] for m in MEMBER_NAMES])
    return np.tensordot(w, stacked, axes=1) / w.sum()


def ensemble_predict_batch(model: EnsembleModel, queries: np.ndarray) -> np.ndarray:
    posteriors = {
        "knn": knn_predict_batch(model.knn, queries),
        "naive_bayes": nb_predict_batch(model.nb, queries),
        "random_forest": rf_predict_batch(model.rf, queries),
    }
    return fuse_posteriors(posteriors, model.weights)


def ensemble_predict(model: EnsembleModel, x: np.ndarray) -> ClassPosterior:
    """Weighted soft vote: P(c) = sum_m w_m P_m(c|x) / sum_m w_m."""
    probs = ensemble_predict_batch(model, np.atleast_2d(x))[0]
    return ClassPosterior(probabilities=probs)


def member_posteriors(model: EnsembleModel, x: np.ndarray) -> dict[str, ClassPosterior]:
    """Each member's own posterior for one query (for per-classifier output)."""
    q = np.atleast_2d(x)
    return {
        "knn": ClassPosterior(knn_predict_batch(model.knn, q)[0]),
        "naive_bayes": ClassPosterior(nb_predict_batch(model.nb, q)[0]),
        "random_forest": ClassPosterior(rf_predict_batch(model.rf, q)[0]),
    }


def knn_sweep(
    ds: LabeledDataset,
    n_range: tuple[int, int] = (1, 15),
    alpha: int = 50,
    seed: int = 0,
    test_fraction: float = 0.2,
) -> SweepResult:
    """Mean accuracy of the neighbor classifier for each N in n_range.

    All N values are scored on the same alpha derived-seed re-splits, with
    neighbor ranking computed once per split and votes accumulated
    incrementally over N.
    """
    if alpha < 1:
        raise ConfigError(f"alpha must be >= 1, got {alpha}")
    n_min, n_max = n_range
    if not (1 <= n_min <= n_max):
        raise ConfigError(f"invalid neighbor range {n_range}")
    n_test = math.floor(test_fraction * ds.n_rows)
    n_train = ds.n_rows - n_test
    if n_max > n_train:
        raise ConfigError(
            f"n_max {n_max} exceeds the training partition size {n_train}"
        )

    ns = list(range(n_min, n_max + 1))
    acc = np.zeros((len(ns), alpha), dtype=np.float64)
    for run in range(1, alpha + 1):
        split_seed, _ = _run_seeds(seed, run)
        train_part, test_part = split(
            ds, SplitSpec(test_fraction=test_fraction, seed=split_seed, stratified=True)
        )
        model = knn_train(train_part, n_max)
        ranked = nearest_neighbor_labels(model, test_part.features, n_max)
        counts = np.zeros((test_part.n_rows, ds.n_classes), dtype=np.int64)
        rows = np.arange(test_part.n_rows)
        for n in range(1, n_max + 1):
            counts[rows, ranked[:, n - 1]] += 1
            if n >= n_min:
                pred = np.argmax(counts, axis=1)
                acc[n - n_min, run - 1] = float(np.mean(pred == test_part.labels))
    entries = [(n, float(acc[i].mean())) for i, n in enumerate(ns)]
    return SweepResult(entries=entries, alpha=alpha, seed=seed)
