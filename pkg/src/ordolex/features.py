"""Feature vectors for classification and design matrices for regression."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, TextIO, Tuple

import numpy as np

from .errors import (MissingClass, MissingCoordinates, MissingStats,
                     NoEligibleSentences, NonFiniteFeature, OrdolexError)
from .ingest import LanguageRecord, OrderLabel
from .metrics import DEFAULT_RATIO_CAP, CorpusStats, clamp_ratio

HISTORICAL_FEATURES = ("noun_len_token", "verb_len_token", "nouns_longer_flag",
                       "noun_verb_len_diff", "noun_verb_len_ratio")
IMPUTATION_FEATURES = ("n1_ratio_np",)

ONEHOT = "onehot"
ORDINAL = "ordinal"

# cumulative feature blocks; level k uses blocks 1..k
LEVEL_BLOCKS = {1: "order", 2: "area", 3: "family", 4: "length"}


@dataclass(frozen=True)
class FeatureVector:
    language_code: str
    values: Tuple[float, ...]
    feature_names: Tuple[str, ...]
    label: Optional[OrderLabel] = None

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        object.__setattr__(self, "feature_names", tuple(self.feature_names))
        if len(self.values) != len(self.feature_names):
            raise OrdolexError("values and feature_names differ in length")
        bad = [n for n, v in zip(self.feature_names, self.values) if not math.isfinite(v)]
        if bad:
            raise NonFiniteFeature(f"{self.language_code}: non-finite {', '.join(bad)}")

    def with_label(self, label):
        return FeatureVector(self.language_code, self.values, self.feature_names, label)


def build_historical_features(stats: CorpusStats, label=None) -> FeatureVector:
    noun, verb = stats.noun_len_token, stats.verb_len_token
    missing = [n for n, v in (("nouns", noun), ("verbs", verb)) if v is None]
    if missing:
        raise MissingClass(f"{stats.language_code}: corpus has no {' or '.join(missing)}")
    return FeatureVector(
        stats.language_code,
        (noun, verb, 1.0 if noun > verb else 0.0, noun - verb, noun / verb),
        HISTORICAL_FEATURES,
        label,
    )


def build_imputation_features(stats: CorpusStats, cap: float = DEFAULT_RATIO_CAP,
                              label=None) -> FeatureVector:
    if stats.n1_ratio_np is None:
        raise NoEligibleSentences(f"{stats.language_code}: N1 ratio undefined")
    return FeatureVector(stats.language_code, (clamp_ratio(stats.n1_ratio_np, cap),),
                         IMPUTATION_FEATURES, label)


@dataclass
class Design:
    """Regression design without intercept.

    ``blocks`` maps block name to the column indices it contributes.
    """
    X: np.ndarray
    y: np.ndarray
    column_names: List[str]
    language_codes: List[str]
    blocks: Dict[str, List[int]] = field(default_factory=dict)

    def columns_for_level(self, level: int, skip: Sequence[str] = ()) -> List[int]:
        cols = []
        for k in range(1, level + 1):
            name = LEVEL_BLOCKS[k]
            if name not in skip:
                cols.extend(self.blocks.get(name, []))
        return cols

    def subset(self, columns: Sequence[int]) -> Tuple[np.ndarray, List[str]]:
        columns = list(columns)
        return self.X[:, columns], [self.column_names[i] for i in columns]


def _categorical(name: str, values: Sequence[str], encoding: str):
    categories = sorted(set(values))
    if encoding == ORDINAL:
        index = {c: float(i) for i, c in enumerate(categories)}
        return [name], np.array([[index[v]] for v in values], dtype=float).reshape(len(values), 1)
    if encoding != ONEHOT:
        raise ValueError(f"unknown categorical encoding {encoding!r}")
    kept = categories[1:]  # first category is the reference level
    names = [f"{name}[{c}]" for c in kept]
    mat = np.zeros((len(values), len(kept)))
    pos = {c: j for j, c in enumerate(kept)}
    for i, v in enumerate(values):
        j = pos.get(v)
        if j is not None:
            mat[i, j] = 1.0
    return names, mat


def build_regression_design(records: Sequence[LanguageRecord],
                            stats: Mapping[str, CorpusStats] | Sequence[CorpusStats],
                            model_level: int = 4,
                            encoding: str = ONEHOT,
                            ratio_cap: float = DEFAULT_RATIO_CAP) -> Design:
    """Cumulative design for levels 1-4.

    Level 1 holds the N1 ratio; 2 adds latitude, longitude and macroarea;
    3 adds family; 4 adds noun and verb token-weighted lengths. The response
    is 1.0 for SV and 0.0 for VS.
    """
    if model_level not in LEVEL_BLOCKS:
        raise ValueError(f"model level must be 1-4, got {model_level}")
    if not isinstance(stats, Mapping):
        stats = {s.language_code: s for s in stats}
    bad_labels = [r.language_code for r in records
                  if r.order_label not in (OrderLabel.SV, OrderLabel.VS)]
    if bad_labels:
        raise OrdolexError("regression needs SV/VS labels; offending: " + ", ".join(sorted(bad_labels)))
    need_len = model_level >= 4
    missing = []
    for r in records:
        s = stats.get(r.language_code)
        if s is None or s.n1_ratio_np is None or (
                need_len and (s.noun_len_token is None or s.verb_len_token is None)):
            missing.append(r.language_code)
    if missing:
        raise MissingStats(missing)
    if model_level >= 2:
        no_coords = [r.language_code for r in records
                     if r.latitude is None or r.longitude is None]
        if no_coords:
            raise MissingCoordinates(no_coords)

    n = len(records)
    codes = [r.language_code for r in records]
    y = np.array([1.0 if r.order_label is OrderLabel.SV else 0.0 for r in records])
    parts, names, blocks = [], [], {}

    def add(block, cols, mat):
        start = len(names)
        names.extend(cols)
        parts.append(np.asarray(mat, dtype=float).reshape(n, len(cols)))
        blocks[block] = list(range(start, len(names)))

    add("order", ["n1_ratio_np"],
        [[clamp_ratio(stats[c].n1_ratio_np, ratio_cap)] for c in codes])
    if model_level >= 2:
        cols, mat = _categorical("macroarea", [r.macroarea for r in records], encoding)
        coords = np.array([[r.latitude, r.longitude] for r in records], dtype=float)
        add("area", ["latitude", "longitude"] + cols,
            np.hstack([coords.reshape(n, 2), mat]))
    if model_level >= 3:
        cols, mat = _categorical("family", [r.family for r in records], encoding)
        add("family", cols, mat)
    if model_level >= 4:
        add("length", ["noun_len_token", "verb_len_token"],
            [[stats[c].noun_len_token, stats[c].verb_len_token] for c in codes])
    X = np.hstack(parts) if parts else np.zeros((n, 0))
    return Design(X, y, names, codes, blocks)


FEATURE_STORE_COLUMNS = ("language_code", "feature", "value")


def write_feature_store(vectors: Sequence[FeatureVector], stream: TextIO) -> None:
    """Long-format CSV, rows sorted by language code then feature order."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(FEATURE_STORE_COLUMNS)
    for vec in sorted(vectors, key=lambda v: v.language_code):
        for name, value in zip(vec.feature_names, vec.values):
            writer.writerow([vec.language_code, name, repr(value)])


def read_feature_store(stream: TextIO) -> List[FeatureVector]:
    reader = csv.DictReader(stream)
    if tuple(reader.fieldnames or ()) != FEATURE_STORE_COLUMNS:
        raise OrdolexError("feature store header must be language_code,feature,value")
    grouped: Dict[str, List[Tuple[str, float]]] = {}
    for row in reader:
        grouped.setdefault(row["language_code"], []).append((row["feature"], float(row["value"])))
    return [FeatureVector(code, [v for _, v in items], [n for n, _ in items])
            for code, items in grouped.items()]
