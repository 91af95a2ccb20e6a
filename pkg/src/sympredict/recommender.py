"""Disease -> (medical tests, OTC medicines) lookup.

The table is curated data, keyed by disease names normalized exactly like
dataset labels. Lookups never fail: a disease missing from the table comes
back flagged unmatched with empty lists.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .dataset import normalize_term
from .errors import ConfigError


@dataclass(frozen=True)
class TableEntry:
    tests: tuple[str, ...]
    otc: tuple[str, ...]


@dataclass(frozen=True)
class RecommendationTable:
    entries: dict[str, TableEntry]

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class DiseaseRecommendation:
    disease: str
    matched: bool
    tests: tuple[str, ...]
    otc: tuple[str, ...]


@dataclass(frozen=True)
class Recommendation:
    per_disease: tuple[DiseaseRecommendation, ...]
    tests: tuple[str, ...]  # merged, rank order, deduplicated
    otc: tuple[str, ...]


def _string_list(value, disease: str, key: str) -> tuple[str, ...]:
    if value is None:
        raise ConfigError(f"{disease}.{key} must be a list, got null")
    if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
        raise ConfigError(f"{disease}.{key} must be a list of strings")
    return tuple(value)


def load_table(document: str) -> RecommendationTable:
    """Parse a JSON object of disease -> {tests: [...], otc: [...]}."""
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed recommendation table: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("recommendation table must be a JSON object")
    entries: dict[str, TableEntry] = {}
    for disease, value in data.items():
        if not isinstance(value, dict):
            raise ConfigError(f"entry for {disease!r} must be an object")
        entries[normalize_term(disease)] = TableEntry(
            tests=_string_list(value.get("tests", []), disease, "tests"),
            otc=_string_list(value.get("otc", []), disease, "otc"),
        )
    return RecommendationTable(entries=entries)


def load_table_file(path: str) -> RecommendationTable:
    with open(path, encoding="utf-8") as fh:
        return load_table(fh.read())


def _merge(lists: list[tuple[str, ...]]) -> tuple[str, ...]:
    seen: set[str] = set()
    merged: list[str] = []
    for items in lists:
        for item in items:
            if item not in seen:
                seen.add(item)
                merged.append(item)
    return tuple(merged)


def recommend(table: RecommendationTable, ranked_diseases: list[str]) -> Recommendation:
    """Look up each disease in rank order and merge the result lists.

    Merged lists keep first-occurrence order (disease rank, then list
    order) and drop duplicates. Misses are reported, never raised.
    """
    per_disease = []
    for disease in ranked_diseases:
        entry = table.entries.get(normalize_term(disease))
        if entry is None:
            per_disease.append(
                DiseaseRecommendation(disease=disease, matched=False, tests=(), otc=())
            )
        else:
            per_disease.append(
                DiseaseRecommendation(
                    disease=disease, matched=True, tests=entry.tests, otc=entry.otc
                )
            )
    return Recommendation(
        per_disease=tuple(per_disease),
        tests=_merge([d.tests for d in per_disease]),
        otc=_merge([d.otc for d in per_disease]),
    )
