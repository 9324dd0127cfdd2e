"""Deterministic CSV/JSON emitters and plain-text summaries.

Measures are written as 6-decimal fixed point, p-values in scientific
notation with two significant digits, rows in a stable order, UTF-8 with LF
line endings.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Iterable, List, Mapping, Optional, Sequence, Union

from .metrics import STAT_FIELDS, CorpusStats

PathLike = Union[str, Path]

TABLE2_COLUMNS = ("condition", "model", "n_obs", "f_val", "p_f", "f_change", "p_f_change")


def format_real(value: Optional[float], digits: int = 6) -> str:
    if value is None:
        return ""
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if math.isnan(value):
        return "nan"
    return f"{value:.{digits}f}"


def format_p(p: Optional[float], log10_p: Optional[float] = None) -> str:
    """``3.9e-05`` style. Falls back to ``log10_p`` when ``p`` underflowed."""
    if p is None:
        return ""
    if p > 0 or log10_p is None or not math.isfinite(log10_p):
        return f"{p:.1e}"
    exponent = math.floor(log10_p)
    mantissa = round(10.0 ** (log10_p - exponent), 1)
    if mantissa >= 10.0:
        mantissa, exponent = 1.0, exponent + 1
    sign = "-" if exponent < 0 else "+"
    return f"{mantissa:.1f}e{sign}{abs(exponent):02d}"


def _write_rows(path: PathLike, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path


def stats_rows(stats: Sequence[CorpusStats]):
    for s in sorted(stats, key=lambda s: s.language_code):
        yield [s.language_code] + [format_real(getattr(s, f)) for f in STAT_FIELDS[1:]]


def emit_stats_csv(stats: Sequence[CorpusStats], path: PathLike) -> Path:
    return _write_rows(path, STAT_FIELDS, stats_rows(stats))


def stats_csv_text(stats: Sequence[CorpusStats]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(STAT_FIELDS)
    writer.writerows(stats_rows(stats))
    return buf.getvalue()


def read_stats_csv(path: PathLike) -> List[CorpusStats]:
    from .metrics import stats_from_dict

    with open(path, encoding="utf-8", newline="") as fh:
        return [stats_from_dict(row) for row in csv.DictReader(fh)]


def table2_rows(reports):
    """Rows for each (condition, HierarchicalReport) in input order."""
    if isinstance(reports, Mapping):
        reports = list(reports.items())
    for condition, report in reports:
        for step in report.steps:
            fit = step.fit
            yield [
                condition, step.model_level, fit.n, f"{fit.f_statistic:.2f}",
                format_p(fit.f_p_value, fit.f_log10_p),
                "" if step.f_change is None else f"{step.f_change:.2f}",
                "" if step.f_change_p is None else format_p(step.f_change_p, step.f_change_log10_p),
            ]


def emit_table2(reports, path: PathLike) -> Path:
    rows = list(table2_rows(reports))
    if not rows:
        raise ValueError("emit_table2 needs at least one computed condition")
    return _write_rows(path, TABLE2_COLUMNS, rows)


def render_table2(reports) -> str:
    """Fixed-width text rendering of the hierarchical regression table."""
    if isinstance(reports, Mapping):
        reports = list(reports.items())
    out = []
    head = f"{'Model':<16}{'N (obs)':>9}{'F-val':>10}{'P-val (F)':>11}{'F change':>10}{'P (change)':>12}"
    for condition, report in reports:
        suffix = " (area omitted)" if report.omit_area else ""
        out.append(f"{condition}){suffix}")
        out.append(head)
        for step, row in zip(report.steps, table2_rows([(condition, report)])):
            name = f"{step.model_level} ({step.label})"
            out.append(f"{name:<16}{row[2]:>9}{row[3]:>10}{row[4]:>11}"
                       f"{row[5] or '-':>10}{row[6] or '-':>12}")
        out.append("")
    return "\n".join(out)


ANOVA_COLUMNS = ("analysis", "measure_1", "measure_2", "effect", "f", "df1", "df2", "p")


def emit_anova_csv(results: Mapping[str, tuple], path: PathLike) -> Path:
    """``results`` maps analysis name to ``(measure_1, measure_2, AnovaResult)``."""
    rows = []
    for name in sorted(results):
        m1, m2, res = results[name]
        for eff in res.effects():
            rows.append([name, m1, m2, eff.effect, format_real(eff.statistic),
                         format_real(eff.df1, 0), format_real(eff.df2, 0),
                         format_p(eff.p_value, eff.log10_p)])
    return _write_rows(path, ANOVA_COLUMNS, rows)


FIGURE_COLUMNS = ("order_label", "word_class", "n", "mean_length", "sd")


def emit_figure_csv(result, class_names: Sequence[str], path: PathLike) -> Path:
    """Per order class mean lengths for a bar/point plot."""
    rows = []
    for cell in result.cells:
        rows.append([cell.group, class_names[0], cell.n, format_real(cell.mean_1), format_real(cell.sd_1)])
        rows.append([cell.group, class_names[1], cell.n, format_real(cell.mean_2), format_real(cell.sd_2)])
    return _write_rows(path, FIGURE_COLUMNS, rows)


LABEL_COLUMNS = ("language_code", "order_label", "source", "posterior")


def emit_labels_csv(imputation, path: PathLike) -> Path:
    rows = []
    codes = sorted(set(imputation.labels) | set(imputation.failed))
    for code in codes:
        if code in imputation.failed:
            rows.append([code, "", "failed", ""])
            continue
        post = imputation.posteriors.get(code)
        rows.append([code, imputation.labels[code].value, imputation.sources[code],
                     "" if post is None else format_real(post)])
    return _write_rows(path, LABEL_COLUMNS, rows)


def emit_predictions_csv(predictions, classes: Sequence[str], path: PathLike) -> Path:
    header = ["language_code", "predicted"] + [f"posterior_{c}" for c in classes]
    rows = [[p.language_code, p.label] + [format_real(p.posteriors[c]) for c in classes]
            for p in sorted(predictions, key=lambda p: p.language_code)]
    return _write_rows(path, header, rows)


def emit_ttest_csv(name: str, result, n_a: int, n_b: int, path: PathLike) -> Path:
    return _write_rows(path, ("comparison", "t", "df", "p", "n_a", "n_b"),
                       [[name, format_real(result.statistic), format_real(result.df1, 0),
                         format_p(result.p_value, result.log10_p), n_a, n_b]])


def dump_json(obj, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False))
        fh.write("\n")
    return path


def write_text(text: str, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text if text.endswith("\n") else text + "\n")
    return path


def render_summary(aggregate: Mapping[str, tuple], totals: Mapping[str, int] = None,
                   ttest=None, anova: Mapping[str, tuple] = None, reports=None) -> str:
    lines = ["Cross-linguistic means", "----------------------"]
    for name, (mean, n) in aggregate.items():
        lines.append(f"{name:<16} {format_real(mean, 4):>12}  (n={n})")
    if totals:
        lines += ["", "Word order classes"]
        for label, count in totals.items():
            lines.append(f"{label:<6} {count}")
    if ttest is not None:
        lines += ["", f"t-test args vs preds (type-weighted): t={ttest.statistic:.3f} "
                  f"df={ttest.df1:.0f} p={format_p(ttest.p_value, ttest.log10_p)}"]
    if anova:
        lines += ["", "Mixed ANOVA"]
        for name in sorted(anova):
            m1, m2, res = anova[name]
            lines.append(f"  {name} ({m1} vs {m2})")
            for eff in res.effects():
                lines.append(f"    {eff.effect:<12} F({eff.df1:.0f},{eff.df2:.0f})="
                             f"{eff.statistic:.3f} p={format_p(eff.p_value, eff.log10_p)}")
            for cell in res.cells:
                lines.append(f"    {cell.group:<5} n={cell.n:<5} {m1}={cell.mean_1:.3f} {m2}={cell.mean_2:.3f}")
    if reports:
        lines += ["", "Hierarchical regressions", render_table2(reports)]
    return "\n".join(lines)
