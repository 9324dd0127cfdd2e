"""Ordinary least squares through a column-pivoted QR factorisation, plus
the nested-model F-change test and the hierarchical regression chain."""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import qr, solve_triangular

from ..errors import NotNested, RankDeficient, Underdetermined
from .special import f_log10_sf, f_sf

RANK_TOL = 1e-10


@dataclass(frozen=True)
class OlsFit:
    coefficients: Tuple[float, ...]
    column_names: Tuple[str, ...]
    rss: float
    tss: float
    n: int
    p: int
    f_statistic: float
    f_p_value: float
    f_log10_p: float
    y_digest: str = field(default="", repr=False)

    @property
    def df_resid(self) -> int:
        return self.n - self.p - 1

    @property
    def r_squared(self) -> float:
        return 1.0 - self.rss / self.tss if self.tss > 0 else math.nan


def _digest(y):
    return hashlib.sha1(np.ascontiguousarray(y, dtype=float).tobytes()).hexdigest()


def ols_fit(design, y, column_names: Optional[Sequence[str]] = None) -> OlsFit:
    """Fit ``y ~ 1 + design``.

    Rank is read off the pivoted R diagonal: columns whose pivot falls below
    ``1e-10`` times the largest pivot are reported as dependent.
    """
    X = np.asarray(design, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    y = np.asarray(y, dtype=float).ravel()
    n, p = X.shape
    if y.shape[0] != n:
        raise ValueError(f"design has {n} rows but y has {y.shape[0]}")
    if column_names is None:
        column_names = [f"x{i + 1}" for i in range(p)]
    names = ["const"] + list(column_names)
    if len(names) != p + 1:
        raise ValueError("column_names does not match design width")
    if n <= p + 1:
        raise Underdetermined(f"{n} observations cannot support {p} predictors plus intercept")
    A = np.column_stack([np.ones(n), X])
    Q, R, piv = qr(A, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    rank = int((diag > RANK_TOL * diag[0]).sum()) if diag[0] > 0 else 0
    if rank < p + 1:
        raise RankDeficient([names[i] for i in piv[rank:]], rank)
    beta_piv = solve_triangular(R, Q.T @ y)
    beta = np.empty(p + 1)
    beta[piv] = beta_piv
    resid = y - A @ beta
    rss = float(resid @ resid)
    tss = float(((y - y.mean()) ** 2).sum())
    df_resid = n - p - 1
    explained = max(tss - rss, 0.0)
    if p == 0:
        f = 0.0
    elif rss == 0:
        f = math.inf if explained > 0 else 0.0
    else:
        f = (explained / p) / (rss / df_resid)
    p_val = f_sf(f, p, df_resid) if p > 0 else 1.0
    log10_p = f_log10_sf(f, p, df_resid) if p > 0 else 0.0
    return OlsFit(tuple(float(b) for b in beta), tuple(names), rss, tss, n, p,
                  f, p_val, log10_p, _digest(y))


@dataclass(frozen=True)
class FChange:
    f: float
    p_value: float
    log10_p: float
    df1: int
    df2: int


def f_change(reduced: OlsFit, full: OlsFit) -> FChange:
    """F test for the improvement of ``full`` over the nested ``reduced``."""
    if reduced.n != full.n or reduced.y_digest != full.y_digest:
        raise NotNested("models were fitted to different responses")
    if not set(reduced.column_names) <= set(full.column_names):
        raise NotNested("reduced model columns are not a subset of the full model")
    dp = full.p - reduced.p
    if dp <= 0:
        raise NotNested("full model adds no columns")
    df2 = full.df_resid
    gain = max(reduced.rss - full.rss, 0.0)
    if full.rss == 0:
        f = math.inf if gain > 0 else 0.0
    else:
        f = (gain / dp) / (full.rss / df2)
    return FChange(f, f_sf(f, dp, df2), f_log10_sf(f, dp, df2), dp, df2)


MODEL_LABELS = {1: "N1 ratio", 2: "Lg area", 3: "Family", 4: "N/V len"}


@dataclass(frozen=True)
class HierarchicalStep:
    model_level: int
    fit: OlsFit
    f_change: Optional[float] = None
    f_change_p: Optional[float] = None
    f_change_log10_p: Optional[float] = None

    @property
    def label(self):
        return MODEL_LABELS.get(self.model_level, str(self.model_level))


@dataclass(frozen=True)
class HierarchicalReport:
    steps: Tuple[HierarchicalStep, ...]
    condition: str = ""
    omit_area: bool = False
    language_codes: Tuple[str, ...] = ()

    def __iter__(self):
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)

    def step(self, level: int) -> HierarchicalStep:
        for s in self.steps:
            if s.model_level == level:
                return s
        raise KeyError(level)


def hierarchical_from_design(design, levels: Sequence[int] = (1, 2, 3, 4),
                             omit_area: bool = False, condition: str = "") -> HierarchicalReport:
    """Fit the cumulative models of a :class:`~ordolex.features.Design`.

    A level whose block adds no columns (for instance a family block left
    empty by the reference-level drop) repeats the previous fit with an
    F change of 0 and p of 1.
    """
    skip = ("area",) if omit_area else ()
    levels = [lv for lv in levels if not (omit_area and lv == 2)]
    steps: List[HierarchicalStep] = []
    prev_cols = None
    prev_fit = None
    for level in levels:
        cols = design.columns_for_level(level, skip)
        if prev_fit is not None and cols == prev_cols:
            steps.append(HierarchicalStep(level, prev_fit, 0.0, 1.0, 0.0))
            continue
        X, names = design.subset(cols)
        fit = ols_fit(X, design.y, names)
        if prev_fit is None:
            steps.append(HierarchicalStep(level, fit))
        else:
            ch = f_change(prev_fit, fit)
            steps.append(HierarchicalStep(level, fit, ch.f, ch.p_value, ch.log10_p))
        prev_cols, prev_fit = cols, fit
    return HierarchicalReport(tuple(steps), condition, omit_area, tuple(design.language_codes))


def hierarchical_regression(records, stats, levels: Sequence[int] = (1, 2, 3, 4),
                            omit_area: bool = False, encoding: str = "onehot",
                            ratio_cap: float = 100.0, condition: str = "") -> HierarchicalReport:
    from ..features import build_regression_design

    design = build_regression_design(records, stats, max(levels), encoding=encoding,
                                     ratio_cap=ratio_cap)
    return hierarchical_from_design(design, levels, omit_area, condition)
