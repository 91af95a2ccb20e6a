"""Probability distribution over disease classes, the common output type."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ClassPosterior:
    """Per-class probabilities for one prediction.

    probabilities is a dense vector indexed by class; argmax breaks exact
    ties toward the smaller class index.
    """

    probabilities: np.ndarray  # (n_classes,) float64, sums to 1

    @property
    def argmax(self) -> int:
        return int(np.argmax(self.probabilities))  # first max wins ties

    @property
    def confidence(self) -> float:
        return float(self.probabilities[self.argmax])

    def top_k(self, k: int) -> list[tuple[int, float]]:
        """Highest-probability classes first; ties toward smaller index."""
        order = np.lexsort((np.arange(len(self.probabilities)), -self.probabilities))
        return [(int(c), float(self.probabilities[c])) for c in order[:k]]
