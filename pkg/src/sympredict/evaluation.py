"""Confusion matrix and accuracy/precision/recall.

The base formulas are binary; multiclass is handled one-vs-rest per class
with macro averaging (unweighted mean). Precision with an empty denominator
is defined as 0 so reports stay comparable; macro recall averages only over
classes that actually appear in the evaluated sample.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np


@dataclass
class ConfusionMatrix:
    counts: np.ndarray  # (C, C) int64, rows = true class, cols = predicted
    class_names: tuple[str, ...]

    @property
    def n_classes(self) -> int:
        return self.counts.shape[0]

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def support(self, c: int) -> int:
        return int(self.counts[c].sum())

    def to_csv(self) -> str:
        lines = ["true\\predicted," + ",".join(self.class_names)]
        for i, name in enumerate(self.class_names):
            lines.append(name + "," + ",".join(str(int(v)) for v in self.counts[i]))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {"class_names": list(self.class_names), "counts": self.counts.tolist()},
            indent=2,
        )


@dataclass
class MetricReport:
    accuracy: float
    per_class_precision: list[float]
    per_class_recall: list[float]
    macro_precision: float
    macro_recall: float
    class_names: tuple[str, ...]

    def to_json(self) -> str:
        return json.dumps(
            {
                "accuracy": self.accuracy,
                "macro_precision": self.macro_precision,
                "macro_recall": self.macro_recall,
                "per_class": {
                    name: {
                        "precision": self.per_class_precision[i],
                        "recall": self.per_class_recall[i],
                    }
                    for i, name in enumerate(self.class_names)
                },
            },
            indent=2,
        )


def confusion_matrix(y_true, y_pred, n_classes: int, class_names=None) -> ConfusionMatrix:
    """counts[t][p] = number of samples with true class t predicted as p."""
    y_true = np.asarray(y_true, dtype=np.int64)
    y_pred = np.asarray(y_pred, dtype=np.int64)
    if y_true.shape != y_pred.shape or y_true.ndim != 1 or y_true.size == 0:
        raise ValueError("y_true and y_pred must be equal-length non-empty vectors")
    if y_true.min() < 0 or y_pred.min() < 0 or max(y_true.max(), y_pred.max()) >= n_classes:
        raise ValueError("class index out of range")
    counts = np.zeros((n_classes, n_classes), dtype=np.int64)
    np.add.at(counts, (y_true, y_pred), 1)
    if class_names is None:
        class_names = tuple(str(i) for i in range(n_classes))
    return ConfusionMatrix(counts=counts, class_names=tuple(class_names))


def accuracy(cm: ConfusionMatrix) -> float:
    """Fraction of correct predictions: trace / total."""
    total = cm.total
    if total < 1:
        raise ValueError("confusion matrix is empty")
    return float(np.trace(cm.counts) / total)


def precision_recall(cm: ConfusionMatrix) -> MetricReport:
    """One-vs-rest precision and recall per class, plus macro averages."""
    if cm.total < 1:
        raise ValueError("confusion matrix is empty")
    counts = cm.counts.astype(np.float64)
    tp = np.diag(counts)
    fp = counts.sum(axis=0) - tp
    fn = counts.sum(axis=1) - tp
    with np.errstate(invalid="ignore", divide="ignore"):
        precision = np.where(tp + fp > 0, tp / (tp + fp), 0.0)
        recall = np.where(tp + fn > 0, tp / (tp + fn), 0.0)
    support = counts.sum(axis=1)
    observed = support > 0
    macro_recall = float(recall[observed].mean()) if observed.any() else 0.0
    return MetricReport(
        accuracy=accuracy(cm),
        per_class_precision=[float(v) for v in precision],
        per_class_recall=[float(v) for v in recall],
        macro_precision=float(precision.mean()),
        macro_recall=macro_recall,
        class_names=cm.class_names,
    )
