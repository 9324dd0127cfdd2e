"""Config-driven experiment runners: imputation, length/order ANOVA,
historical prediction and the hierarchical variance decomposition."""

from __future__ import annotations

import hashlib
import json
import logging
import os
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import report
from .corpus import Corpus
from .errors import ConfigError, DegenerateDesign, MissingClass, OrdolexError, Underdetermined
from .features import ONEHOT, ORDINAL, build_historical_features, build_imputation_features
from .gnb import GnbModel, Prediction, gnb_fit, gnb_predict
from .ingest import (LanguageRecord, OrderLabel, code_from_path, find_corpora, read_corpus,
                     read_language_table)
from .metrics import DEFAULT_RATIO_CAP, CorpusStats, aggregate_stats, length_stats
from .stats import (AnovaResult, HierarchicalReport, TestResult, hierarchical_regression,
                    mixed_anova, t_test_ind)

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

log = logging.getLogger(__name__)

CONDITIONS = ("a", "b", "c", "d", "custom")
# top-level Glottolog families covering the four lineages (Bantu sits in Atlantic-Congo)
DUNN_FAMILIES = ("Atlantic-Congo", "Austronesian", "Indo-European", "Uto-Aztecan")
DEFAULT_MIN_SIZE = {"c": 76, "d": 2}

# (analysis name, figure file, measure 1, measure 2)
LENGTH_ANALYSES = (
    ("normalized", "figure1.csv", "arg_len_type", "pred_len_type"),
    ("normalized_nv", None, "noun_len_type", "verb_len_type"),
    ("frequency", "figure2.csv", "noun_len_token", "verb_len_token"),
)
WEIGHTING = {"type": "normalized", "token": "frequency"}


@dataclass(frozen=True)
class ExperimentConfig:
    corpus_dir: Path
    language_table: Path
    condition: str = "d"
    family_min_size: Optional[int] = None
    include_free: bool = True
    ratio_cap: float = DEFAULT_RATIO_CAP
    output_dir: Path = Path("ordolex-out")
    condition_languages: Optional[Path] = None
    condition_families: Tuple[str, ...] = DUNN_FAMILIES
    encoding: str = ONEHOT
    train_table: Optional[Path] = None
    test_corpora: Tuple[Path, ...] = ()
    jobs: Optional[int] = None

    def __post_init__(self):
        for name in ("corpus_dir", "language_table", "output_dir"):
            object.__setattr__(self, name, Path(getattr(self, name)))
        for name in ("condition_languages", "train_table"):
            if getattr(self, name) is not None:
                object.__setattr__(self, name, Path(getattr(self, name)))
        object.__setattr__(self, "test_corpora", tuple(Path(p) for p in self.test_corpora))
        object.__setattr__(self, "condition_families", tuple(self.condition_families))
        if self.condition not in CONDITIONS:
            raise ConfigError(f"condition must be one of {', '.join(CONDITIONS)}")
        if self.family_min_size is not None and self.family_min_size < 1:
            raise ConfigError("family_min_size must be >= 1")
        if not self.ratio_cap > 1:
            raise ConfigError("ratio_cap must exceed 1")
        if self.encoding not in (ONEHOT, ORDINAL):
            raise ConfigError(f"encoding must be {ONEHOT} or {ORDINAL}")
        if self.jobs is not None and self.jobs < 1:
            raise ConfigError("jobs must be >= 1")

    def digest(self) -> str:
        """Hash of the analysis settings; output_dir and jobs do not count."""
        d = {k: v for k, v in asdict(self).items() if k not in ("output_dir", "jobs")}
        blob = json.dumps(d, sort_keys=True, default=str).encode()
        return hashlib.sha256(blob).hexdigest()


_PATH_KEYS = {"corpus_dir", "language_table", "output_dir", "condition_languages", "train_table"}


def load_config(path, **overrides) -> ExperimentConfig:
    """Read a flat TOML file; relative paths resolve against its directory."""
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    known = {f.name for f in fields(ExperimentConfig)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"{path}: unknown key(s) {', '.join(unknown)}")
    base = path.parent
    for key in _PATH_KEYS & set(raw):
        raw[key] = base / raw[key]
    if "test_corpora" in raw:
        raw["test_corpora"] = [base / p for p in raw["test_corpora"]]
    raw.update({k: v for k, v in overrides.items() if v is not None})
    missing = [k for k in ("corpus_dir", "language_table") if k not in raw]
    if missing:
        raise ConfigError(f"{path}: missing key(s) {', '.join(missing)}")
    try:
        return ExperimentConfig(**raw)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None


# ---------------------------------------------------------------- stats

def _stats_for_file(path: str) -> Tuple[str, Optional[CorpusStats], Optional[str]]:
    try:
        code = code_from_path(path)
        return code, length_stats(read_corpus(path, code)), None
    except (OrdolexError, OSError) as exc:
        return Path(path).name, None, str(exc)


def default_jobs() -> int:
    try:
        return max(1, len(os.sched_getaffinity(0)))
    except AttributeError:
        return os.cpu_count() or 1


def compute_corpus_stats(paths: Sequence[Path], jobs: Optional[int] = None
                         ) -> Tuple[Dict[str, CorpusStats], Dict[str, str]]:
    """Stats per corpus file, keyed by language code, plus failures."""
    jobs = jobs or default_jobs()
    paths = [str(p) for p in sorted(paths)]
    if jobs > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_stats_for_file, paths, chunksize=4))
    else:
        results = [_stats_for_file(p) for p in paths]
    stats, failed = {}, {}
    for code, st, err in results:
        if st is None:
            failed[code] = err
        elif code in stats:
            failed[code] = f"duplicate corpus for {code}"
        else:
            stats[code] = st
    log.info("computed stats for %d corpora (%d failed)", len(stats), len(failed))
    return stats, failed


def directory_stats(corpus_dir, jobs=None):
    return compute_corpus_stats(find_corpora(corpus_dir), jobs)


# ---------------------------------------------------------------- conditions

@dataclass(frozen=True)
class ConditionFilter:
    mode: str  # language-list | family-list | family-min-size
    payload: object

    def apply(self, records: Sequence[LanguageRecord]) -> List[LanguageRecord]:
        if self.mode == "language-list":
            keep = set(self.payload)
            out = [r for r in records if r.language_code in keep]
        elif self.mode == "family-list":
            keep = set(self.payload)
            out = [r for r in records if r.family and r.family in keep]
        elif self.mode == "family-min-size":
            sizes = Counter(r.family for r in records if r.family)
            out = [r for r in records if r.family and sizes[r.family] >= self.payload]
        else:
            raise ConfigError(f"unknown condition mode {self.mode!r}")
        return sorted(out, key=lambda r: r.language_code)


def read_code_list(path) -> List[str]:
    codes = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                codes.append(line)
    return codes


def resolve_condition(config: ExperimentConfig) -> ConditionFilter:
    cond = config.condition
    if cond == "a" or (cond == "custom" and config.condition_languages is not None):
        if config.condition_languages is None:
            raise ConfigError("condition a needs condition_languages (a language list file)")
        return ConditionFilter("language-list", tuple(read_code_list(config.condition_languages)))
    if cond == "b":
        return ConditionFilter("family-list", config.condition_families)
    if cond in DEFAULT_MIN_SIZE:
        size = config.family_min_size or DEFAULT_MIN_SIZE[cond]
        return ConditionFilter("family-min-size", size)
    if config.family_min_size is not None:
        return ConditionFilter("family-min-size", config.family_min_size)
    return ConditionFilter("family-list", config.condition_families)


# ---------------------------------------------------------------- imputation

@dataclass
class ImputationResult:
    labels: Dict[str, OrderLabel]
    sources: Dict[str, str]
    posteriors: Dict[str, float]
    failed: Dict[str, str]
    model: Optional[GnbModel] = None

    @property
    def predicted(self) -> List[str]:
        return sorted(c for c, s in self.sources.items() if s == "imputed")

    @property
    def totals(self) -> Dict[str, int]:
        counts = Counter(lab.value for lab in self.labels.values())
        return {lab.value: counts.get(lab.value, 0) for lab in OrderLabel}


def impute_labels(records: Sequence[LanguageRecord], stats: Mapping[str, CorpusStats],
                  ratio_cap: float = DEFAULT_RATIO_CAP) -> ImputationResult:
    """Fit a one-feature GNB on the expert labels and fill in the rest."""
    labels, sources, posteriors, failed = {}, {}, {}, {}
    train, targets = [], []
    for r in records:
        s = stats.get(r.language_code)
        if s is None:
            failed[r.language_code] = "no corpus statistics"
            continue
        try:
            vec = build_imputation_features(s, ratio_cap, r.order_label)
        except OrdolexError as exc:
            failed[r.language_code] = str(exc)
            continue
        if r.order_label is not None:
            labels[r.language_code] = r.order_label
            sources[r.language_code] = "expert"
            train.append(vec)
        else:
            targets.append(vec)
    model = None
    if targets:
        if not train:
            raise OrdolexError("imputation needs at least one labeled language")
        model = gnb_fit(train)
        for vec in targets:
            pred = gnb_predict(model, vec)
            labels[vec.language_code] = OrderLabel.parse(pred.label)
            sources[vec.language_code] = "imputed"
            posteriors[vec.language_code] = pred.posteriors[pred.label]
    if failed:
        log.warning("imputation skipped %d language(s): %s", len(failed), ", ".join(sorted(failed)))
    return ImputationResult(labels, sources, posteriors, failed, model)


def relabel(records: Sequence[LanguageRecord], labels: Mapping[str, OrderLabel]) -> List[LanguageRecord]:
    return [replace(r, order_label=labels[r.language_code])
            for r in records if r.language_code in labels]


@dataclass
class Inputs:
    """Everything loaded once per run."""
    records: List[LanguageRecord]
    stats: Dict[str, CorpusStats]
    failed: Dict[str, str]

    @classmethod
    def load(cls, config: ExperimentConfig) -> "Inputs":
        records = read_language_table(config.language_table)
        stats, failed = directory_stats(config.corpus_dir, config.jobs)
        return cls(records, stats, failed)


def run_imputation(config: ExperimentConfig, inputs: Optional[Inputs] = None) -> ImputationResult:
    inputs = inputs or Inputs.load(config)
    result = impute_labels(inputs.records, inputs.stats, config.ratio_cap)
    out = config.output_dir
    report.emit_labels_csv(result, out / "imputed_labels.csv")
    if result.model is not None:
        report.write_text(result.model.to_json(), out / "gnb_imputation.json")
    log.info("imputation totals %s (%d predicted)", result.totals, len(result.predicted))
    return result


# ---------------------------------------------------------------- length vs order

@dataclass
class LengthOrderResult:
    anovas: Dict[str, Tuple[str, str, AnovaResult]]
    ttest: Optional[TestResult] = None
    ttest_n: Tuple[int, int] = (0, 0)

    def __getitem__(self, name):
        return self.anovas[name][2]


def length_order_analysis(records: Sequence[LanguageRecord], stats: Mapping[str, CorpusStats],
                          include_free: bool = True,
                          analyses=LENGTH_ANALYSES) -> LengthOrderResult:
    labeled = [r for r in records if r.order_label is not None and r.language_code in stats
               and (include_free or r.order_label is not OrderLabel.FREE)]
    if len({r.order_label for r in labeled}) < 2:
        raise DegenerateDesign("length/order analysis needs at least two order classes")
    out = {}
    for name, _, m1, m2 in analyses:
        rows = []
        for r in labeled:
            s = stats[r.language_code]
            v1, v2 = getattr(s, m1), getattr(s, m2)
            if v1 is not None and v2 is not None:
                rows.append((r.order_label.value, v1, v2))
        out[name] = (m1, m2, mixed_anova(rows))
    args = [stats[r.language_code].arg_len_type for r in labeled]
    preds = [stats[r.language_code].pred_len_type for r in labeled]
    args = [v for v in args if v is not None]
    preds = [v for v in preds if v is not None]
    ttest = t_test_ind(args, preds) if len(args) >= 2 and len(preds) >= 2 else None
    return LengthOrderResult(out, ttest, (len(args), len(preds)))


def run_length_order_analysis(config: ExperimentConfig, inputs: Optional[Inputs] = None,
                              imputation: Optional[ImputationResult] = None) -> LengthOrderResult:
    inputs = inputs or Inputs.load(config)
    if imputation is None:
        imputation = impute_labels(inputs.records, inputs.stats, config.ratio_cap)
    records = relabel(inputs.records, imputation.labels)
    result = length_order_analysis(records, inputs.stats, config.include_free)
    out = config.output_dir
    report.emit_anova_csv(result.anovas, out / "anova.csv")
    for name, fig, m1, m2 in LENGTH_ANALYSES:
        if fig:
            report.emit_figure_csv(result[name], (m1, m2), out / fig)
    if result.ttest is not None:
        report.emit_ttest_csv("arg_len_type vs pred_len_type", result.ttest,
                              *result.ttest_n, out / "ttest.csv")
    return result


# ---------------------------------------------------------------- historical

@dataclass(frozen=True)
class HistoricalPrediction:
    language_code: str
    label: str
    posteriors: Dict[str, float]


def historical_training_set(records: Sequence[LanguageRecord], stats: Mapping[str, CorpusStats],
                            exclude: Sequence[str] = ()):
    skip = set(exclude)
    train, dropped = [], []
    for r in records:
        if r.order_label is None or r.language_code in skip:
            continue
        s = stats.get(r.language_code)
        if s is None:
            dropped.append(r.language_code)
            continue
        try:
            train.append(build_historical_features(s, r.order_label))
        except MissingClass:
            dropped.append(r.language_code)
    if dropped:
        log.info("historical training set: %d language(s) without usable stats", len(dropped))
    return train, dropped


def predict_historical(train_records: Sequence[LanguageRecord], train_stats: Mapping[str, CorpusStats],
                       test_corpora: Sequence[Corpus]) -> Tuple[GnbModel, List[HistoricalPrediction]]:
    tests = []
    for corpus in test_corpora:
        s = length_stats(corpus)
        tests.append(build_historical_features(s))  # MissingClass names the corpus
    codes = [c.language_code for c in test_corpora]
    train, _ = historical_training_set(train_records, train_stats, exclude=codes)
    model = gnb_fit(train)
    preds = []
    for vec in tests:
        p = gnb_predict(model, vec)
        preds.append(HistoricalPrediction(vec.language_code, p.label, p.posteriors))
    return model, preds


def run_historical_prediction(config: ExperimentConfig, train_table=None,
                              test_corpora: Optional[Sequence[Corpus]] = None,
                              inputs: Optional[Inputs] = None) -> List[HistoricalPrediction]:
    train_table = train_table if train_table is not None else config.train_table
    if train_table is None:
        raise ConfigError("historical prediction needs a training table")
    records = (read_language_table(train_table) if isinstance(train_table, (str, Path))
               else list(train_table))
    if test_corpora is None:
        test_corpora = [read_corpus(p) for p in config.test_corpora]
    if not test_corpora:
        raise ConfigError("historical prediction needs at least one test corpus")
    stats = inputs.stats if inputs is not None else directory_stats(config.corpus_dir, config.jobs)[0]
    model, preds = predict_historical(records, stats, test_corpora)
    out = config.output_dir
    report.emit_predictions_csv(preds, model.classes, out / "historical_predictions.csv")
    report.write_text(model.to_json(), out / "gnb_historical.json")
    return preds


# ---------------------------------------------------------------- variance decomposition

@dataclass
class VarianceResult:
    condition: str
    full: HierarchicalReport
    no_area: HierarchicalReport
    n_selected: int
    n_dropped: int


def variance_decomposition(config: ExperimentConfig, records: Sequence[LanguageRecord],
                           stats: Mapping[str, CorpusStats]) -> VarianceResult:
    """``records`` must already carry their final (expert or imputed) labels."""
    filt = resolve_condition(config)
    selected = filt.apply(records)
    binary = [r for r in selected if r.order_label in (OrderLabel.SV, OrderLabel.VS)]
    usable = [r for r in binary if r.language_code in stats]
    dropped = len(binary) - len(usable)
    log.info("condition %s: %d selected, %d SV/VS, %d with stats",
             config.condition, len(selected), len(binary), len(usable))
    kw = dict(encoding=config.encoding, ratio_cap=config.ratio_cap, condition=config.condition)
    try:
        full = hierarchical_regression(usable, stats, **kw)
        no_area = hierarchical_regression(usable, stats, omit_area=True, **kw)
    except OrdolexError as exc:
        exc.args = (f"condition {config.condition}: {exc}",) + exc.args[1:]
        raise
    return VarianceResult(config.condition, full, no_area, len(usable), dropped)


def run_variance_decomposition(config: ExperimentConfig, inputs: Optional[Inputs] = None,
                               imputation: Optional[ImputationResult] = None) -> VarianceResult:
    inputs = inputs or Inputs.load(config)
    if imputation is None:
        imputation = impute_labels(inputs.records, inputs.stats, config.ratio_cap)
    result = variance_decomposition(config, relabel(inputs.records, imputation.labels), inputs.stats)
    out = config.output_dir
    report.emit_table2({config.condition: result.full}, out / f"table2_{config.condition}.csv")
    report.emit_table2({config.condition: result.no_area},
                       out / f"table2_{config.condition}_no_area.csv")
    return result


# ---------------------------------------------------------------- full run + manifest

def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def write_manifest(config: ExperimentConfig, counts: Mapping[str, object],
                   inputs: Mapping[str, Path]) -> Path:
    out = config.output_dir
    outputs = {p.relative_to(out).as_posix(): _sha256(p)
               for p in sorted(out.rglob("*")) if p.is_file() and p.name != "manifest.json"}
    manifest = {
        "config_hash": config.digest(),
        "inputs": {name: _sha256(Path(p)) for name, p in sorted(inputs.items())},
        "counts": dict(counts),
        "outputs": outputs,
    }
    return report.dump_json(manifest, out / "manifest.json")


@dataclass
class RunSummary:
    stats: Dict[str, CorpusStats]
    imputation: ImputationResult
    length_order: Optional[LengthOrderResult] = None
    variance: Dict[str, VarianceResult] = field(default_factory=dict)
    historical: List[HistoricalPrediction] = field(default_factory=list)
    skipped: Dict[str, str] = field(default_factory=dict)
    manifest: Optional[Path] = None


def run_all(config: ExperimentConfig, conditions: Sequence[str] = ("a", "b", "c", "d")) -> RunSummary:
    """Every analysis the inputs allow, written below ``config.output_dir``.

    Condition (a) is skipped without a language list; historical prediction
    without a training table and test corpora.
    """
    inputs = Inputs.load(config)
    out = config.output_dir
    out.mkdir(parents=True, exist_ok=True)
    report.emit_stats_csv(list(inputs.stats.values()), out / "stats.csv")
    imputation = run_imputation(config, inputs)
    summary = RunSummary(inputs.stats, imputation)
    summary.length_order = run_length_order_analysis(config, inputs, imputation)
    records = relabel(inputs.records, imputation.labels)
    for cond in conditions:
        if cond == "a" and config.condition_languages is None:
            continue
        cfg = replace(config, condition=cond,
                      family_min_size=config.family_min_size if cond == config.condition else None)
        try:
            summary.variance[cond] = variance_decomposition(cfg, records, inputs.stats)
        except (Underdetermined, DegenerateDesign) as exc:
            summary.skipped[cond] = str(exc)
            log.warning("skipping condition %s: %s", cond, exc)
    if summary.variance:
        report.emit_table2({c: v.full for c, v in summary.variance.items()}, out / "table2.csv")
        report.emit_table2({c: v.no_area for c, v in summary.variance.items()},
                           out / "table2_no_area.csv")
    if config.train_table is not None and config.test_corpora:
        summary.historical = run_historical_prediction(config, inputs=inputs)
    if inputs.failed:
        report.write_text("\n".join(f"{k}\t{v}" for k, v in sorted(inputs.failed.items())),
                          out / "failed.tsv")
    agg = aggregate_stats(list(inputs.stats.values())) if inputs.stats else {}
    text = report.render_summary(
        {k: agg[k] for k in ("n1_ratio_np", "arg_len_type", "pred_len_type",
                             "noun_len_token", "verb_len_token", "unique_args",
                             "unique_preds") if k in agg},
        imputation.totals, summary.length_order.ttest, summary.length_order.anovas,
        [(c, v.full) for c, v in summary.variance.items()])
    report.write_text(text, out / "summary.txt")
    counts = {
        "corpora": len(inputs.stats),
        "failed": len(inputs.failed),
        "languages": len(inputs.records),
        "imputed": len(imputation.predicted),
        "totals": imputation.totals,
        "conditions": {c: v.n_selected for c, v in summary.variance.items()},
        "skipped_conditions": dict(sorted(summary.skipped.items())),
    }
    corpus_files = {f"corpus:{p.name}": p for p in find_corpora(config.corpus_dir)}
    named = {"language_table": config.language_table, **corpus_files}
    if config.condition_languages is not None:
        named["condition_languages"] = config.condition_languages
    if config.train_table is not None:
        named["train_table"] = config.train_table
    for p in config.test_corpora:
        named[f"test:{p.name}"] = p
    summary.manifest = write_manifest(config, counts, named)
    return summary
