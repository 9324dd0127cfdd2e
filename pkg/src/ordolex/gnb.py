"""Gaussian Naive Bayes written out by hand.

Fitting uses per-class population variances with a floor of
``1e-9 * max(total variance per feature)``; prediction accumulates log
densities and normalises with log-sum-exp.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DegenerateClass, DimensionMismatch, NonFiniteFeature, OrdolexError
from .features import FeatureVector

VAR_SMOOTHING = 1e-9
_LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class GnbModel:
    classes: Tuple[str, ...]
    priors: Tuple[float, ...]
    means: Tuple[Tuple[float, ...], ...]
    variances: Tuple[Tuple[float, ...], ...]
    feature_names: Tuple[str, ...]

    def to_json(self) -> str:
        return json.dumps({
            "classes": list(self.classes),
            "priors": list(self.priors),
            "means": [list(r) for r in self.means],
            "variances": [list(r) for r in self.variances],
            "feature_names": list(self.feature_names),
        }, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "GnbModel":
        d = json.loads(text)
        return cls(tuple(d["classes"]), tuple(d["priors"]),
                   tuple(tuple(r) for r in d["means"]),
                   tuple(tuple(r) for r in d["variances"]),
                   tuple(d["feature_names"]))


@dataclass(frozen=True)
class Prediction:
    label: str
    posteriors: Dict[str, float]
    log_posteriors: Dict[str, float]


def _label_key(label) -> str:
    return getattr(label, "value", label) if label is not None else None


def gnb_fit(data: Sequence[FeatureVector]) -> GnbModel:
    if not data:
        raise DegenerateClass("no training data")
    names = data[0].feature_names
    for vec in data:
        if vec.feature_names != names:
            raise DimensionMismatch(f"{vec.language_code}: feature names differ from first vector")
        if vec.label is None:
            raise OrdolexError(f"{vec.language_code}: training vector has no label")
    X = np.array([vec.values for vec in data], dtype=float)
    if not np.all(np.isfinite(X)):
        raise NonFiniteFeature("training features must be finite")
    labels = [_label_key(vec.label) for vec in data]
    classes = sorted(set(labels))
    if len(classes) < 2:
        raise DegenerateClass(f"need at least 2 classes, got {classes}")
    max_var = float(X.var(axis=0).max())
    floor = VAR_SMOOTHING * max_var if max_var > 0 else VAR_SMOOTHING
    priors, means, variances = [], [], []
    lab = np.array(labels, dtype=object)
    for c in classes:
        rows = X[lab == c]
        if len(rows) < 2:
            raise DegenerateClass(f"class {c!r} has {len(rows)} example(s); need 2")
        mu = rows.mean(axis=0)
        var = np.maximum(((rows - mu) ** 2).mean(axis=0), floor)
        priors.append(len(rows) / len(X))
        means.append(tuple(float(v) for v in mu))
        variances.append(tuple(float(v) for v in var))
    return GnbModel(tuple(classes), tuple(priors), tuple(means), tuple(variances), tuple(names))


def log_joint(model: GnbModel, values: Sequence[float]) -> np.ndarray:
    """Unnormalised log posterior per class."""
    x = np.asarray(values, dtype=float)
    if x.shape != (len(model.feature_names),):
        raise DimensionMismatch(
            f"expected {len(model.feature_names)} features, got {x.size}")
    mu = np.array(model.means)
    var = np.array(model.variances)
    ll = -0.5 * (_LOG_2PI + np.log(var) + (x - mu) ** 2 / var).sum(axis=1)
    return np.log(np.array(model.priors)) + ll


def gnb_predict(model: GnbModel, x) -> Prediction:
    values = x.values if isinstance(x, FeatureVector) else x
    if isinstance(x, FeatureVector) and x.feature_names != model.feature_names:
        raise DimensionMismatch("feature names do not match the model")
    joint = log_joint(model, values)
    top = joint.max()
    log_norm = top + math.log(float(np.exp(joint - top).sum()))
    log_post = joint - log_norm
    best = int(np.argmax(joint))  # first maximum wins ties
    return Prediction(
        model.classes[best],
        {c: float(math.exp(lp)) for c, lp in zip(model.classes, log_post)},
        {c: float(lp) for c, lp in zip(model.classes, log_post)},
    )


def holdout_split(data: Sequence, test_fraction: float = 0.2,
                  seed: int = 0) -> Tuple[List, List]:
    """Shuffle with a fixed seed and split into (train, test)."""
    if not 0 < test_fraction < 1:
        raise ValueError("test_fraction must lie in (0, 1)")
    items = list(data)
    random.Random(seed).shuffle(items)
    n_test = max(1, int(round(len(items) * test_fraction)))
    return items[n_test:], items[:n_test]


def accuracy(model: GnbModel, data: Sequence[FeatureVector]) -> float:
    hits = sum(gnb_predict(model, v).label == _label_key(v.label) for v in data)
    return hits / len(data)
