"""Raw symptom-disease CSV parsing, binarization, and train/test splitting.

The raw file format is one case per row: first column the disease name,
remaining columns the symptoms the case exhibited (trailing columns may be
empty). Binarization turns that into an n x D 0/1 matrix over the sorted
symptom vocabulary, which is what every classifier consumes.
"""

from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, EncodeError, ParseError

_WS = re.compile(r"\s+")


def normalize_term(name: str) -> str:
    """Canonical form for symptom and disease names: trimmed, lowercased,
    internal whitespace collapsed to a single underscore."""
    return _WS.sub("_", name.strip().lower())


@dataclass(frozen=True)
class SymptomVocabulary:
    """Ordered symptom names; position in the list is the feature index."""

    symptoms: tuple[str, ...]

    def __post_init__(self):
        if not self.symptoms:
            raise ConfigError("vocabulary must not be empty")
        if list(self.symptoms) != sorted(set(self.symptoms)):
            raise ConfigError("vocabulary must be unique and sorted")

    def __len__(self) -> int:
        return len(self.symptoms)

    def index_of(self, symptom: str) -> int | None:
        i = self._index.get(symptom)
        return i

    @property
    def _index(self) -> dict[str, int]:
        # computed lazily; frozen dataclass so stash via __dict__
        cached = self.__dict__.get("_index_cache")
        if cached is None:
            cached = {s: i for i, s in enumerate(self.symptoms)}
            self.__dict__["_index_cache"] = cached
        return cached


@dataclass(frozen=True)
class RawDataset:
    """Parsed survey rows: (disease, symptom list) pairs, normalized."""

    records: tuple[tuple[str, tuple[str, ...]], ...]

    def __len__(self) -> int:
        return len(self.records)


@dataclass
class LabeledDataset:
    """Binary feature matrix plus integer labels into class_names."""

    vocabulary: SymptomVocabulary
    features: np.ndarray  # (n_rows, D) uint8 in {0,1}
    labels: np.ndarray  # (n_rows,) int32
    class_names: tuple[str, ...]

    def __post_init__(self):
        self.features = np.ascontiguousarray(self.features, dtype=np.uint8)
        self.labels = np.asarray(self.labels, dtype=np.int32)

    @property
    def n_rows(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    @property
    def n_classes(self) -> int:
        return len(self.class_names)

    def subset(self, indices: np.ndarray) -> "LabeledDataset":
        """Row subset sharing the vocabulary and class list."""
        return LabeledDataset(
            vocabulary=self.vocabulary,
            features=self.features[indices],
            labels=self.labels[indices],
            class_names=self.class_names,
        )


@dataclass(frozen=True)
class SplitSpec:
    """Holdout split parameters. test_fraction strictly inside (0, 1)."""

    test_fraction: float = 0.2
    seed: int = 0
    stratified: bool = True

    def __post_init__(self):
        if not (0.0 < self.test_fraction < 1.0):
            raise ConfigError(
                f"test_fraction must be in (0, 1), got {self.test_fraction}"
            )
        if self.seed < 0:
            raise ConfigError("seed must be a non-negative integer")


def parse_raw_csv(text: str) -> RawDataset:
    """Parse a raw symptom-disease CSV document.

    First header cell must be ``disease``; every data row needs a non-empty
    disease name and at least one non-empty symptom cell. Symptom and disease
    strings are normalized (see normalize_term).
    """
    if not text or not text.strip():
        raise ParseError("empty dataset file")
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty dataset file") from None
    if not header or normalize_term(header[0]) != "disease":
        raise ParseError("first column header must be 'disease'")
    width = len(header)

    records: list[tuple[str, tuple[str, ...]]] = []
    for row_idx, row in enumerate(reader, start=1):
        if not row or all(not cell.strip() for cell in row):
            continue  # blank line
        if len(row) > width:
            raise ParseError("row has more cells than the header", row=row_idx)
        disease = normalize_term(row[0])
        if not disease:
            raise ParseError("missing disease name", row=row_idx)
        symptoms = tuple(
            normalize_term(cell) for cell in row[1:] if cell.strip()
        )
        if not symptoms:
            raise ParseError("record lists no symptoms", row=row_idx)
        records.append((disease, symptoms))
    if not records:
        raise ParseError("dataset has no data rows")
    return RawDataset(records=tuple(records))


def binarize(raw: RawDataset) -> LabeledDataset:
    """Build the sorted vocabulary and the 0/1 case matrix from raw records."""
    if not raw.records:
        raise ParseError("cannot binarize an empty dataset")
    vocab_names = sorted({s for _, symptoms in raw.records for s in symptoms})
    vocabulary = SymptomVocabulary(symptoms=tuple(vocab_names))
    index = {s: i for i, s in enumerate(vocab_names)}
    class_names = tuple(sorted({disease for disease, _ in raw.records}))
    class_index = {c: i for i, c in enumerate(class_names)}

    features = np.zeros((len(raw.records), len(vocab_names)), dtype=np.uint8)
    labels = np.empty(len(raw.records), dtype=np.int32)
    for i, (disease, symptoms) in enumerate(raw.records):
        labels[i] = class_index[disease]
        for s in symptoms:
            features[i, index[s]] = 1
    return LabeledDataset(
        vocabulary=vocabulary,
        features=features,
        labels=labels,
        class_names=class_names,
    )


def _stratified_test_counts(
    labels: np.ndarray, n_classes: int, n_test: int
) -> np.ndarray:
    """Per-class test-row quota: floor allocation, remainder to the classes
    with the largest fractional part (ties to the smaller class index)."""
    class_sizes = np.bincount(labels, minlength=n_classes)
    n_rows = labels.shape[0]
    exact = class_sizes * (n_test / n_rows)
    base = np.floor(exact).astype(np.int64)
    base = np.minimum(base, class_sizes)
    short = n_test - int(base.sum())
    if short > 0:
        frac = exact - np.floor(exact)
        # unusable classes (already fully allocated) never receive extras
        frac[base >= class_sizes] = -1.0
        order = np.lexsort((np.arange(n_classes), -frac))
        for c in order[:short]:
            base[c] += 1
    return base


def split(ds: LabeledDataset, spec: SplitSpec) -> tuple[LabeledDataset, LabeledDataset]:
    """Deterministic holdout split; |test| = floor(test_fraction * n_rows)."""
    n_rows = ds.n_rows
    if n_rows < 2:
        raise ConfigError("need at least 2 rows to split")
    n_test = math.floor(spec.test_fraction * n_rows)
    rng = np.random.default_rng(spec.seed)

    if spec.stratified:
        quotas = _stratified_test_counts(ds.labels, ds.n_classes, n_test)
        test_mask = np.zeros(n_rows, dtype=bool)
        for c in range(ds.n_classes):
            rows_c = np.flatnonzero(ds.labels == c)
            if rows_c.size == 0:
                continue
            picked = rng.permutation(rows_c.size)[: quotas[c]]
            test_mask[rows_c[picked]] = True
    else:
        perm = rng.permutation(n_rows)
        test_mask = np.zeros(n_rows, dtype=bool)
        test_mask[perm[:n_test]] = True

    test_idx = np.flatnonzero(test_mask)
    train_idx = np.flatnonzero(~test_mask)
    return ds.subset(train_idx), ds.subset(test_idx)


def encode_symptoms(
    names: list[str], vocab: SymptomVocabulary
) -> tuple[np.ndarray, list[str]]:
    """Encode symptom names into a 0/1 feature vector over the vocabulary.

    Returns the vector and the (order-preserving, deduplicated) list of names
    that are not in the vocabulary. Raises EncodeError when nothing matched.
    """
    vector = np.zeros(len(vocab), dtype=np.uint8)
    unknown: list[str] = []
    seen_unknown: set[str] = set()
    recognized = 0
    for name in names:
        norm = normalize_term(name)
        idx = vocab.index_of(norm)
        if idx is None:
            if norm not in seen_unknown:
                seen_unknown.add(norm)
                unknown.append(name.strip())
            continue
        if vector[idx] == 0:
            vector[idx] = 1
            recognized += 1
    if recognized == 0:
        raise EncodeError("no recognized symptoms", unknown=unknown)
    return vector, unknown
