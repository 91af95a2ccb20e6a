import numpy as np
import pytest

from sympredict.dataset import LabeledDataset, SymptomVocabulary


def make_dataset(features, labels, class_names=None, vocab_names=None):
    features = np.asarray(features, dtype=np.uint8)
    labels = np.asarray(labels, dtype=np.int32)
    n_classes = int(labels.max()) + 1 if class_names is None else len(class_names)
    if class_names is None:
        class_names = tuple(f"c{i}" for i in range(n_classes))
    if vocab_names is None:
        vocab_names = tuple(f"s{i:02d}" for i in range(features.shape[1]))
    return LabeledDataset(
        vocabulary=SymptomVocabulary(tuple(vocab_names)),
        features=features,
        labels=labels,
        class_names=tuple(class_names),
    )


def random_dataset(rng, n_rows, n_features, n_classes):
    """Random binary dataset where every class appears and no row is empty."""
    features = (rng.random((n_rows, n_features)) < 0.4).astype(np.uint8)
    features[features.sum(axis=1) == 0, 0] = 1
    labels = np.concatenate(
        [np.arange(n_classes), rng.integers(0, n_classes, n_rows - n_classes)]
    ).astype(np.int32)
    return make_dataset(features, labels)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def bundled_dataset():
    from sympredict.cli import bundled_dataset_path, _load_dataset

    return _load_dataset(bundled_dataset_path())
