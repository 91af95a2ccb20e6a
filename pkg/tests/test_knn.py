import numpy as np
import pytest

from sympredict.classifiers import euclidean_distance, knn_predict, knn_train
from sympredict.classifiers.knn import knn_predict_batch, nearest_neighbor_labels
from sympredict.errors import ConfigError, DimensionError

from conftest import make_dataset, random_dataset


def test_distance_identity():
    assert euclidean_distance([0, 0, 0], [0, 0, 0]) == 0.0


def test_distance_value():
    assert euclidean_distance([1, 0, 1], [0, 0, 0]) == pytest.approx(np.sqrt(2))


def test_distance_symmetric():
    assert euclidean_distance([1, 1], [0, 0]) == euclidean_distance([0, 0], [1, 1])


def test_distance_dimension_mismatch():
    with pytest.raises(DimensionError):
        euclidean_distance([1, 0], [1, 0, 0])


def test_train_validates_neighbor_count():
    ds = make_dataset([[1, 0], [0, 1]], [0, 1])
    with pytest.raises(ConfigError):
        knn_train(ds, 0)
    with pytest.raises(ConfigError):
        knn_train(ds, 3)


def test_vote_fractions():
    ds = make_dataset([[0, 0], [1, 1], [1, 0]], [0, 1, 1], class_names=("a", "b"))
    model = knn_train(ds, 3)
    posterior = knn_predict(model, np.array([1, 1], np.uint8))
    assert posterior.probabilities.tolist() == [1 / 3, 2 / 3]
    assert posterior.argmax == 1


def test_unique_row_memorized_at_n1():
    ds = make_dataset([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [0, 1, 2])
    model = knn_train(ds, 1)
    for i in range(3):
        posterior = knn_predict(model, ds.features[i])
        assert posterior.argmax == i
        assert posterior.confidence == 1.0


def test_distance_tie_goes_to_lower_row_index():
    ds = make_dataset([[0, 0], [1, 1]], [0, 1], class_names=("a", "b"))
    model = knn_train(ds, 1)
    posterior = knn_predict(model, np.array([1, 0], np.uint8))
    assert posterior.argmax == 0  # both neighbors at distance 1; row 0 wins


def test_all_rows_as_neighbors_gives_class_frequencies():
    ds = make_dataset([[1, 0]] * 3 + [[0, 1]] * 1, [0, 0, 0, 1])
    model = knn_train(ds, 4)
    posterior = knn_predict(model, np.array([1, 1], np.uint8))
    assert posterior.probabilities.tolist() == [0.75, 0.25]


def test_dimension_mismatch_on_predict():
    ds = make_dataset([[1, 0], [0, 1]], [0, 1])
    model = knn_train(ds, 1)
    with pytest.raises(DimensionError):
        knn_predict(model, np.array([1, 0, 0], np.uint8))


def _oracle_posterior(train_x, train_y, x, n, n_classes):
    """Exhaustive rank of all training rows by (squared distance, index)."""
    ranked = sorted(
        range(len(train_x)),
        key=lambda i: (int(np.sum((train_x[i].astype(int) - x.astype(int)) ** 2)), i),
    )
    votes = np.zeros(n_classes)
    for i in ranked[:n]:
        votes[train_y[i]] += 1
    return votes / n


def test_matches_exhaustive_oracle_on_random_instances(rng):
    ds = random_dataset(rng, 40, 8, 4)
    for _ in range(200):
        n = int(rng.integers(1, ds.n_rows + 1))
        model = knn_train(ds, n)
        x = (rng.random(8) < 0.5).astype(np.uint8)
        expected = _oracle_posterior(ds.features, ds.labels, x, n, ds.n_classes)
        got = knn_predict(model, x)
        assert np.array_equal(got.probabilities, expected)
        assert got.probabilities.sum() == pytest.approx(1.0, abs=1e-9)


def test_batch_equals_single(rng):
    ds = random_dataset(rng, 30, 6, 3)
    model = knn_train(ds, 5)
    queries = (rng.random((20, 6)) < 0.5).astype(np.uint8)
    batch = knn_predict_batch(model, queries)
    for i in range(20):
        single = knn_predict(model, queries[i])
        assert np.array_equal(batch[i], single.probabilities)


def test_nearest_neighbor_labels_rank_order(rng):
    ds = random_dataset(rng, 25, 5, 3)
    model = knn_train(ds, 10)
    queries = (rng.random((8, 5)) < 0.5).astype(np.uint8)
    ranked = nearest_neighbor_labels(model, queries, 10)
    for qi in range(8):
        order = sorted(
            range(ds.n_rows),
            key=lambda i: (
                int(np.sum((ds.features[i].astype(int) - queries[qi].astype(int)) ** 2)),
                i,
            ),
        )
        assert ranked[qi].tolist() == [int(ds.labels[i]) for i in order[:10]]
