"""``ordolex`` command line.

Exit status: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from . import report
from .errors import OrdolexError
from .experiments import (WEIGHTING, ExperimentConfig, compute_corpus_stats, load_config,
                          run_all, run_historical_prediction, run_imputation,
                          run_length_order_analysis, run_variance_decomposition)
from .ingest import find_corpora, read_corpus
from .metrics import ARGUMENT_PREDICATE, NOUN_VERB, n1_ratio

DATA_ENV = "ORDOLEX_DATA_DIR"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _shared(p):
    p.add_argument("--config", type=Path, help="TOML file with ExperimentConfig fields")
    p.add_argument("--table", type=Path, help="language table CSV")
    p.add_argument("--corpora", type=Path, help=f"corpus directory (default ${DATA_ENV})")
    p.add_argument("--output-dir", type=Path, help="where result files are written")
    p.add_argument("--jobs", type=int, help="worker processes for per-language stats")
    p.add_argument("--ratio-cap", type=float)
    p.add_argument("--encoding", choices=("onehot", "ordinal"),
                   help="categorical encoding for macroarea and family")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ordolex", description="Word order and word length corpus analytics")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, metavar="COMMAND")

    p = sub.add_parser("stats", help="per-language corpus statistics")
    p.add_argument("corpus", nargs="+", type=Path)
    p.add_argument("-o", "--output", type=Path, help="CSV file (default stdout)")
    p.add_argument("--jobs", type=int)

    p = sub.add_parser("n1", help="N1 ratio on both bases")
    p.add_argument("corpus", type=Path)
    p.add_argument("--lang", help="override the language code taken from the file name")

    p = sub.add_parser("impute", help="impute word order for unlabeled languages")
    _shared(p)

    p = sub.add_parser("classify-historical", help="predict word order of test corpora")
    p.add_argument("--train", type=Path, help="labeled training table CSV")
    p.add_argument("--test", nargs="+", type=Path, default=[])
    _shared(p)

    p = sub.add_parser("anova", help="mixed ANOVA of lengths by word order")
    p.add_argument("--weighting", choices=tuple(WEIGHTING), default="token")
    _shared(p)

    p = sub.add_parser("regress", help="hierarchical regression for one condition")
    p.add_argument("--condition", choices=("a", "b", "c", "d", "custom"))
    p.add_argument("--languages", type=Path, help="language list for condition a/custom")
    p.add_argument("--family-min-size", type=int)
    p.add_argument("--no-area", action="store_true", help="print the area-omitted chain")
    _shared(p)

    p = sub.add_parser("report", help="run every analysis and write the output tree")
    p.add_argument("--languages", type=Path, help="language list for condition a")
    p.add_argument("--train", type=Path)
    p.add_argument("--test", nargs="+", type=Path, default=[])
    _shared(p)
    return parser


def _config(args, **extra) -> ExperimentConfig:
    overrides = {
        "language_table": args.table,
        "corpus_dir": args.corpora,
        "output_dir": args.output_dir,
        "jobs": args.jobs,
        "ratio_cap": args.ratio_cap,
        "encoding": args.encoding,
        **extra,
    }
    overrides = {k: v for k, v in overrides.items() if v is not None}
    if args.config is not None:
        return load_config(args.config, **overrides)
    if "corpus_dir" not in overrides and os.environ.get(DATA_ENV):
        overrides["corpus_dir"] = Path(os.environ[DATA_ENV])
    if "language_table" not in overrides:
        raise UsageError("--table is required without --config")
    if "corpus_dir" not in overrides:
        raise UsageError(f"--corpora is required without --config or ${DATA_ENV}")
    return ExperimentConfig(**overrides)


def _cmd_stats(args, out):
    stats, failed = _stats_from_paths(args.corpus, args.jobs)
    if failed:
        raise OrdolexError("; ".join(f"{k}: {v}" for k, v in sorted(failed.items())))
    if args.output:
        report.emit_stats_csv(stats, args.output)
    else:
        out.write(report.stats_csv_text(stats))


def _stats_from_paths(paths, jobs):
    files = []
    for p in paths:
        if p.is_dir():
            files.extend(find_corpora(p))
        else:
            files.append(p)
    stats, failed = compute_corpus_stats(files, jobs)
    return list(stats.values()), failed


def _fmt(v):
    return "inf" if v == float("inf") else repr(round(v, 6))


def _cmd_n1(args, out):
    corpus = read_corpus(args.corpus, args.lang)
    out.write(f"{NOUN_VERB}\t{_fmt(n1_ratio(corpus, NOUN_VERB))}\n")
    try:
        ap = _fmt(n1_ratio(corpus, ARGUMENT_PREDICATE))
    except OrdolexError:
        ap = ""
    out.write(f"{ARGUMENT_PREDICATE}\t{ap}\n")


def _cmd_impute(args, out):
    res = run_imputation(_config(args))
    for label, count in res.totals.items():
        out.write(f"{label}\t{count}\n")
    out.write(f"predicted\t{len(res.predicted)}\n")
    if res.failed:
        out.write(f"failed\t{len(res.failed)}\t{','.join(sorted(res.failed))}\n")


def _cmd_historical(args, out):
    config = _config(args)
    train = args.train or config.train_table
    if train is None:
        raise UsageError("--train is required")
    tests = [read_corpus(p) for p in (args.test or config.test_corpora)]
    if not tests:
        raise UsageError("--test needs at least one corpus")
    for p in run_historical_prediction(config, train, tests):
        post = " ".join(f"{c}={v:.4f}" for c, v in sorted(p.posteriors.items()))
        out.write(f"{p.language_code}\t{p.label}\t{post}\n")


def _cmd_anova(args, out):
    res = run_length_order_analysis(_config(args))
    name = WEIGHTING[args.weighting]
    m1, m2, anova = res.anovas[name]
    out.write(f"analysis\t{name}\t{m1}\t{m2}\n")
    for eff in anova.effects():
        out.write(f"{eff.effect}\tF({eff.df1:.0f},{eff.df2:.0f})={eff.statistic:.4f}\t"
                  f"p={report.format_p(eff.p_value, eff.log10_p)}\n")
    for cell in anova.cells:
        out.write(f"{cell.group}\tn={cell.n}\t{m1}={cell.mean_1:.4f}\t{m2}={cell.mean_2:.4f}\n")


def _cmd_regress(args, out):
    extra = {"condition": args.condition, "condition_languages": args.languages,
             "family_min_size": args.family_min_size}
    config = _config(args, **extra)
    res = run_variance_decomposition(config)
    rep = res.no_area if args.no_area else res.full
    rows = report.table2_rows({config.condition: rep})
    out.write(",".join(report.TABLE2_COLUMNS) + "\n")
    for row in rows:
        out.write(",".join(str(c) for c in row) + "\n")


def _cmd_report(args, out):
    extra = {"condition_languages": args.languages, "train_table": args.train}
    if args.test:
        extra["test_corpora"] = tuple(args.test)
    config = _config(args, **extra)
    summary = run_all(config)
    out.write((config.output_dir / "summary.txt").read_text(encoding="utf-8"))
    out.write(f"manifest\t{summary.manifest}\n")


COMMANDS = {
    "stats": _cmd_stats, "n1": _cmd_n1, "impute": _cmd_impute,
    "classify-historical": _cmd_historical, "anova": _cmd_anova,
    "regress": _cmd_regress, "report": _cmd_report,
}


def main(argv=None) -> int:
    parser = build_parser()
    out = sys.stdout
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_usage(sys.stderr)
            return 1
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except (OrdolexError, OSError, UnicodeDecodeError) as exc:
        print(f"ordolex: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
