"""Random forest over Gini decision trees for binary symptom features.

Each tree is grown on a bootstrap resample; every node picks the best
Gini-reducing split among a random subset of feature indices. Features are
0/1, so a split is just "feature f equals 0 (left) or 1 (right)", and a
feature can never usefully reappear deeper along the same path.

Tree growth and batch traversal are jit-compiled; the per-node feature
subset comes from an inline splitmix64 sampler because a numpy Generator
cannot cross the jit boundary. Per-tree seeds derive from (seed, tree index)
so a forest is bit-reproducible and trees could be grown in any order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit

from ..dataset import LabeledDataset, SymptomVocabulary
from ..errors import ConfigError, DimensionError
from .posterior import ClassPosterior


def gini_impurity(class_counts) -> float:
    """Gini impurity 1 - sum((count/total)^2) of a class histogram."""
    counts = np.asarray(class_counts, dtype=np.float64)
    if counts.size == 0 or counts.min() < 0:
        raise ValueError("class_counts must be non-negative")
    total = counts.sum()
    if total < 1:
        raise ValueError("class_counts must contain at least one sample")
    p = counts / total
    return float(1.0 - np.sum(p * p))


@njit(cache=True, nogil=True)
def _splitmix64(state):
    state = state + np.uint64(0x9E3779B97F4A7C15)
    z = state
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return state, z ^ (z >> np.uint64(31))


@njit(cache=True, nogil=True)
def _grow_tree(X, y, sample_idx, n_classes, max_features, max_depth,
               min_samples_split, feature_seed):
    """Grow one tree; returns (feature, left, right, leaf_counts, n_nodes).

    feature[i] == -1 marks a leaf; leaf_counts[i] is its raw class histogram.
    Nodes are laid out in deterministic depth-first order.
    """
    n = sample_idx.shape[0]
    n_feat = X.shape[1]
    max_nodes = 2 * n + 1
    feature = np.full(max_nodes, -1, np.int32)
    left = np.full(max_nodes, -1, np.int32)
    right = np.full(max_nodes, -1, np.int32)
    leaf_counts = np.zeros((max_nodes, n_classes), np.int32)
    order = sample_idx.copy()

    stack = np.empty((max_nodes, 4), np.int64)  # node, start, end, depth
    top = 0
    stack[0, 0] = 0
    stack[0, 1] = 0
    stack[0, 2] = n
    stack[0, 3] = 0
    n_nodes = 1

    state = np.uint64(feature_seed)
    feat_pool = np.arange(n_feat).astype(np.int32)
    counts = np.zeros(n_classes, np.int64)
    counts_left = np.zeros(n_classes, np.int64)
    cand = np.empty(max_features, np.int32)

    while top >= 0:
        node = stack[top, 0]
        start = stack[top, 1]
        end = stack[top, 2]
        depth = stack[top, 3]
        top -= 1
        size = end - start

        counts[:] = 0
        for i in range(start, end):
            counts[y[order[i]]] += 1
        if (
            counts.max() == size  # pure
            or size < min_samples_split
            or (max_depth >= 0 and depth >= max_depth)
        ):
            for c in range(n_classes):
                leaf_counts[node, c] = counts[c]
            continue

        # partial Fisher-Yates: max_features distinct indices, then ascending
        # so the smallest feature index wins exact impurity ties
        for j in range(max_features):
            state, z = _splitmix64(state)
            k = j + np.int64(z % np.uint64(n_feat - j))
            feat_pool[j], feat_pool[k] = feat_pool[k], feat_pool[j]
            cand[j] = feat_pool[j]
        for j in range(1, max_features):
            v = cand[j]
            k = j - 1
            while k >= 0 and cand[k] > v:
                cand[k + 1] = cand[k]
                k -= 1
            cand[k + 1] = v

        best_cost = 1e300
        best_f = -1
        for jf in range(max_features):
            f = cand[jf]
            if jf > 0 and f == cand[jf - 1]:
                continue
            counts_left[:] = 0
            n_left = 0
            for i in range(start, end):
                if X[order[i], f] == 0:
                    counts_left[y[order[i]]] += 1
                    n_left += 1
            n_right = size - n_left
            if n_left == 0 or n_right == 0:
                continue
            sq_left = 0.0
            sq_right = 0.0
            for c in range(n_classes):
                lc = counts_left[c]
                rc = counts[c] - lc
                sq_left += lc * lc
                sq_right += rc * rc
            # size * weighted child gini, up to the shared constant
            cost = (n_left - sq_left / n_left) + (n_right - sq_right / n_right)
            if cost < best_cost - 1e-12:
                best_cost = cost
                best_f = f
        if best_f < 0:
            for c in range(n_classes):
                leaf_counts[node, c] = counts[c]
            continue

        i = start
        j = end - 1
        while i <= j:
            if X[order[i], best_f] == 0:
                i += 1
            else:
                order[i], order[j] = order[j], order[i]
                j -= 1
        mid = i

        feature[node] = best_f
        left[node] = n_nodes
        right[node] = n_nodes + 1
        top += 1
        stack[top, 0] = n_nodes + 1
        stack[top, 1] = mid
        stack[top, 2] = end
        stack[top, 3] = depth + 1
        top += 1
        stack[top, 0] = n_nodes
        stack[top, 1] = start
        stack[top, 2] = mid
        stack[top, 3] = depth + 1
        n_nodes += 2

    return feature[:n_nodes], left[:n_nodes], right[:n_nodes], leaf_counts[:n_nodes], n_nodes


@njit(cache=True, nogil=True)
def _predict_forest(X, features, lefts, rights, leaf_dists, offsets, out):
    n_trees = offsets.shape[0] - 1
    for s in range(X.shape[0]):
        for t in range(n_trees):
            base = offsets[t]
            node = np.int64(0)
            while features[base + node] >= 0:
                if X[s, features[base + node]] == 0:
                    node = np.int64(lefts[base + node])
                else:
                    node = np.int64(rights[base + node])
            for c in range(out.shape[1]):
                out[s, c] += leaf_dists[base + node, c]
    out /= n_trees


@dataclass
class DecisionTree:
    """Flat-array binary tree: feature[i] == -1 means node i is a leaf."""

    feature: np.ndarray  # (n_nodes,) int32, -1 for leaves
    left: np.ndarray  # (n_nodes,) int32, child when x[feature] == 0
    right: np.ndarray  # (n_nodes,) int32, child when x[feature] == 1
    leaf_counts: np.ndarray  # (n_nodes, C) int32, zeros for internal nodes

    @property
    def n_nodes(self) -> int:
        return self.feature.shape[0]

    def leaf_distribution(self, node: int) -> np.ndarray:
        counts = self.leaf_counts[node].astype(np.float64)
        return counts / counts.sum()

    def apply(self, x: np.ndarray) -> int:
        """Leaf node index reached by a single sample."""
        node = 0
        while self.feature[node] >= 0:
            node = int(self.left[node] if x[self.feature[node]] == 0 else self.right[node])
        return node


@dataclass
class RfModel:
    trees: list[DecisionTree]
    n_trees: int
    max_features: int
    seed: int
    max_depth: int | None
    min_samples_split: int
    bootstrap: bool
    vocabulary: SymptomVocabulary
    class_names: tuple[str, ...]
    _flat: tuple | None = field(default=None, repr=False, compare=False)

    @property
    def n_classes(self) -> int:
        return len(self.class_names)

    def _flat_arrays(self):
        """Trees concatenated for the batch traversal kernel."""
        if self._flat is None:
            offsets = np.zeros(len(self.trees) + 1, dtype=np.int64)
            for t, tree in enumerate(self.trees):
                offsets[t + 1] = offsets[t] + tree.n_nodes
            features = np.concatenate([t.feature for t in self.trees])
            lefts = np.concatenate([t.left for t in self.trees])
            rights = np.concatenate([t.right for t in self.trees])
            counts = np.concatenate([t.leaf_counts for t in self.trees]).astype(np.float64)
            totals = counts.sum(axis=1, keepdims=True)
            dists = np.divide(counts, totals, out=np.zeros_like(counts), where=totals > 0)
            self._flat = (features, lefts, rights, dists, offsets)
        return self._flat


def _tree_seeds(seed: int, tree_index: int) -> tuple[int, np.uint64]:
    words = np.random.SeedSequence((seed, tree_index)).generate_state(2, np.uint64)
    return int(words[0]), words[1]


def rf_train(
    train: LabeledDataset,
    n_trees: int = 100,
    max_features: int | None = None,
    seed: int = 0,
    *,
    max_depth: int | None = None,
    min_samples_split: int = 2,
    bootstrap: bool = True,
) -> RfModel:
    """Grow a seeded forest; max_features defaults to floor(sqrt(D))."""
    n_feat = train.n_features
    if max_features is None:
        max_features = max(1, int(np.sqrt(n_feat)))
    if n_trees < 1:
        raise ConfigError(f"n_trees must be >= 1, got {n_trees}")
    if not (1 <= max_features <= n_feat):
        raise ConfigError(
            f"max_features must be in [1, {n_feat}], got {max_features}"
        )
    if min_samples_split < 2:
        raise ConfigError("min_samples_split must be >= 2")
    if max_depth is not None and max_depth < 1:
        raise ConfigError("max_depth must be >= 1 when set")
    if seed < 0:
        raise ConfigError("seed must be a non-negative integer")

    X = train.features
    y = train.labels
    n = train.n_rows
    trees = []
    for t in range(n_trees):
        boot_seed, feat_seed = _tree_seeds(seed, t)
        if bootstrap:
            rng = np.random.default_rng(boot_seed)
            sample_idx = rng.integers(0, n, size=n, dtype=np.int64).astype(np.int32)
        else:
            sample_idx = np.arange(n, dtype=np.int32)
        feat, left, right, leaf_counts, n_nodes = _grow_tree(
            X,
            y,
            sample_idx,
            train.n_classes,
            max_features,
            -1 if max_depth is None else max_depth,
            min_samples_split,
            feat_seed,
        )
        trees.append(
            DecisionTree(
                feature=feat.copy(),
                left=left.copy(),
                right=right.copy(),
                leaf_counts=leaf_counts.copy(),
            )
        )
    return RfModel(
        trees=trees,
        n_trees=n_trees,
        max_features=max_features,
        seed=seed,
        max_depth=max_depth,
        min_samples_split=min_samples_split,
        bootstrap=bootstrap,
        vocabulary=train.vocabulary,
        class_names=train.class_names,
    )


def _check_dim(model: RfModel, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x)
    if x.shape[-1] != len(model.vocabulary):
        raise DimensionError(
            f"query has {x.shape[-1]} features, model expects {len(model.vocabulary)}"
        )
    return x.astype(np.uint8, copy=False)


def rf_predict_batch(model: RfModel, queries: np.ndarray) -> np.ndarray:
    """Posterior matrix: mean of the reached leaves' class distributions."""
    queries = np.atleast_2d(_check_dim(model, queries))
    features, lefts, rights, dists, offsets = model._flat_arrays()
    out = np.zeros((queries.shape[0], model.n_classes), dtype=np.float64)
    _predict_forest(
        np.ascontiguousarray(queries), features, lefts, rights, dists, offsets, out
    )
    return out


def rf_predict(model: RfModel, x: np.ndarray) -> ClassPosterior:
    x = _check_dim(model, x)
    if x.ndim != 1:
        raise DimensionError("rf_predict takes a single feature vector")
    return ClassPosterior(probabilities=rf_predict_batch(model, x[None, :])[0])
