"""Student's t-test and the mixed (split-plot) ANOVA."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import DegenerateDesign, DegenerateSample
from .special import f_log10_sf, f_sf, t_log10_sf2, t_sf2


@dataclass(frozen=True)
class TestResult:
    statistic: float
    df1: float
    df2: Optional[float]
    p_value: float
    log10_p: Optional[float] = None
    effect: str = ""

    __test__ = False  # keep pytest from collecting this class


def t_test_ind(sample_a: Sequence[float], sample_b: Sequence[float]) -> TestResult:
    """Two-sided pooled-variance (Student) t-test."""
    a = np.asarray(sample_a, dtype=float)
    b = np.asarray(sample_b, dtype=float)
    if a.size < 2 or b.size < 2:
        raise DegenerateSample("each sample needs at least 2 values")
    df = a.size + b.size - 2
    ss = ((a - a.mean()) ** 2).sum() + ((b - b.mean()) ** 2).sum()
    pooled = ss / df
    if pooled == 0:
        raise DegenerateSample("pooled variance is zero")
    t = (a.mean() - b.mean()) / math.sqrt(pooled * (1.0 / a.size + 1.0 / b.size))
    return TestResult(float(t), float(df), None, t_sf2(t, df), t_log10_sf2(t, df), "t")


def _f_result(ss_effect, df_effect, ss_error, df_error, effect):
    if ss_error == 0:
        f = 0.0 if ss_effect == 0 else math.inf
    else:
        f = (ss_effect / df_effect) / (ss_error / df_error)
    return TestResult(f, float(df_effect), float(df_error), f_sf(f, df_effect, df_error),
                      f_log10_sf(f, df_effect, df_error), effect)


@dataclass(frozen=True)
class CellSummary:
    group: str
    n: int
    mean_1: float
    mean_2: float
    sd_1: float
    sd_2: float


@dataclass(frozen=True)
class AnovaResult:
    between: TestResult
    within: TestResult
    interaction: TestResult
    cells: Tuple[CellSummary, ...] = field(default_factory=tuple)
    ss_type: int = 3

    def effects(self) -> List[TestResult]:
        return [self.between, self.within, self.interaction]


def mixed_anova(data: Sequence[Tuple[str, float, float]], ss_type: int = 3) -> AnovaResult:
    """Split-plot ANOVA with one between factor and a two-level within factor.

    ``data`` holds one ``(group, measure_1, measure_2)`` triple per subject.
    With two repeated measures the design reduces exactly to one-way analyses
    of subject sums (between effect) and subject differences (within effect
    and interaction). ``ss_type=3`` tests the within effect on the unweighted
    mean of group differences; ``ss_type=1`` on the subject-weighted mean.
    """
    if ss_type not in (1, 3):
        raise ValueError("ss_type must be 1 or 3")
    groups: Dict[str, List[Tuple[float, float]]] = {}
    for g, y1, y2 in data:
        y1, y2 = float(y1), float(y2)
        if not (math.isfinite(y1) and math.isfinite(y2)):
            raise DegenerateDesign(f"non-finite measure in group {g!r}")
        groups.setdefault(str(g), []).append((y1, y2))
    if len(groups) < 2:
        raise DegenerateDesign(f"need at least 2 groups, got {len(groups)}")
    small = [g for g, rows in groups.items() if len(rows) < 2]
    if small:
        raise DegenerateDesign(f"groups with fewer than 2 subjects: {', '.join(sorted(small))}")

    labels = sorted(groups)
    arrays = [np.array(groups[g]) for g in labels]
    k = len(labels)
    n_g = np.array([len(a) for a in arrays], dtype=float)
    N = n_g.sum()
    df_err = N - k

    sums = [a.sum(axis=1) for a in arrays]
    diffs = [a[:, 0] - a[:, 1] for a in arrays]
    s_bar = np.array([s.mean() for s in sums])
    d_bar = np.array([d.mean() for d in diffs])
    s_grand = np.concatenate(sums).mean()
    d_grand = np.concatenate(diffs).mean()

    ss_between = float((n_g * (s_bar - s_grand) ** 2).sum())
    ss_subjects = float(sum(((s - m) ** 2).sum() for s, m in zip(sums, s_bar)))
    between = _f_result(ss_between, k - 1, ss_subjects, df_err, "between")

    ss_resid = float(sum(((d - m) ** 2).sum() for d, m in zip(diffs, d_bar)))
    if ss_type == 3:
        unweighted = d_bar.mean()
        ss_within = unweighted ** 2 / ((1.0 / n_g).sum() / k ** 2)
    else:
        ss_within = N * d_grand ** 2
    within = _f_result(float(ss_within), 1, ss_resid, df_err, "within")

    ss_inter = float((n_g * (d_bar - d_grand) ** 2).sum())
    interaction = _f_result(ss_inter, k - 1, ss_resid, df_err, "interaction")

    cells = tuple(
        CellSummary(g, len(a), float(a[:, 0].mean()), float(a[:, 1].mean()),
                    float(a[:, 0].std(ddof=1)), float(a[:, 1].std(ddof=1)))
        for g, a in zip(labels, arrays))
    return AnovaResult(between, within, interaction, cells, ss_type)
