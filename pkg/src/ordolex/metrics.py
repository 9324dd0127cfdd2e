"""Per-language word-order and word-length measures."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .corpus import Corpus, WordClass, token_length
from .errors import NoEligibleSentences, OrdolexError

NOUN_VERB = "noun-verb"
ARGUMENT_PREDICATE = "argument-predicate"

# infinite N1 ratio marker: noun-first sentences exist but verb-first never occur
INFINITE = math.inf
DEFAULT_RATIO_CAP = 100.0

_BASES: Dict[str, Tuple[Callable[[WordClass], bool], Callable[[WordClass], bool]]] = {
    NOUN_VERB: (lambda wc: wc.is_noun_strict, lambda wc: wc.is_verb_strict),
    ARGUMENT_PREDICATE: (lambda wc: wc.is_argument, lambda wc: wc.is_predicate),
}


@dataclass(frozen=True)
class CorpusStats:
    language_code: str
    n_sentences: int
    n1_ratio_np: Optional[float] = None
    n1_ratio_ap: Optional[float] = None
    noun_len_type: Optional[float] = None
    verb_len_type: Optional[float] = None
    noun_len_token: Optional[float] = None
    verb_len_token: Optional[float] = None
    arg_len_type: Optional[float] = None
    pred_len_type: Optional[float] = None
    arg_len_token: Optional[float] = None
    pred_len_token: Optional[float] = None
    unique_args: int = 0
    unique_preds: int = 0
    unique_nouns: int = 0
    unique_verbs: int = 0

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


STAT_FIELDS = tuple(f.name for f in fields(CorpusStats))
NUMERIC_FIELDS = STAT_FIELDS[1:]


def precedence_counts(corpus: Corpus, basis: str = NOUN_VERB) -> Tuple[int, int]:
    """Count sentences whose first class-1 token precedes the first class-2
    token (A) and the reverse (B). Sentences lacking either class are skipped."""
    try:
        first_is, second_is = _BASES[basis]
    except KeyError:
        raise ValueError(f"unknown basis {basis!r}") from None
    a = b = 0
    for sentence in corpus.sentences:
        first = second = None
        for pos, token in enumerate(sentence.tokens):
            wc = token.word_class
            if first is None and first_is(wc):
                first = pos
            elif second is None and second_is(wc):
                second = pos
            if first is not None and second is not None:
                break
        if first is None or second is None:
            continue
        if first < second:
            a += 1
        else:
            b += 1
    return a, b


def n1_ratio(corpus: Corpus, basis: str = NOUN_VERB) -> float:
    """Ratio of noun-first to verb-first sentences.

    Returns ``math.inf`` when no sentence is verb-first but some are
    noun-first.
    """
    a, b = precedence_counts(corpus, basis)
    if a + b == 0:
        raise NoEligibleSentences(
            f"{corpus.language_code}: no sentence contains both classes ({basis})")
    if b == 0:
        return INFINITE
    return a / b


def clamp_ratio(value: float, cap: float = DEFAULT_RATIO_CAP) -> float:
    if cap <= 1:
        raise ValueError("ratio cap must exceed 1")
    return min(value, cap)


def _means(lengths: Dict[str, int], count: int, total: int):
    if not lengths:
        return None, None
    return sum(lengths.values()) / len(lengths), total / count


def length_stats(corpus: Corpus) -> CorpusStats:
    """Full :class:`CorpusStats` for one corpus.

    Type-weighted means average over distinct forms, token-weighted means over
    occurrences. Fields for classes absent from the corpus stay ``None``; the
    N1 fields stay ``None`` when no sentence is eligible.
    """
    groups = {
        "noun": lambda wc: wc.is_noun_strict,
        "verb": lambda wc: wc.is_verb_strict,
        "arg": lambda wc: wc.is_argument,
        "pred": lambda wc: wc.is_predicate,
    }
    forms = {g: {} for g in groups}
    counts = dict.fromkeys(groups, 0)
    totals = dict.fromkeys(groups, 0)
    for token in corpus.tokens():
        wc = token.word_class
        length = None
        for g, pred in groups.items():
            if pred(wc):
                if length is None:
                    length = token_length(token)
                forms[g][token.form] = length
                counts[g] += 1
                totals[g] += length
    values = {}
    for g in groups:
        values[f"{g}_len_type"], values[f"{g}_len_token"] = _means(
            forms[g], counts[g], totals[g])
    ratios = {}
    for name, basis in (("n1_ratio_np", NOUN_VERB), ("n1_ratio_ap", ARGUMENT_PREDICATE)):
        try:
            ratios[name] = n1_ratio(corpus, basis)
        except NoEligibleSentences:
            ratios[name] = None
    return CorpusStats(
        language_code=corpus.language_code,
        n_sentences=len(corpus.sentences),
        unique_args=len(forms["arg"]),
        unique_preds=len(forms["pred"]),
        unique_nouns=len(forms["noun"]),
        unique_verbs=len(forms["verb"]),
        **ratios,
        **values,
    )


def aggregate_stats(stats: Sequence[CorpusStats]) -> Dict[str, Tuple[float, int]]:
    """Cross-linguistic mean of every numeric field as ``{field: (mean, n)}``,
    skipping languages where the field is undefined. Infinite ratios are
    skipped as well."""
    if not stats:
        raise OrdolexError("cannot aggregate an empty list of stats")
    out = {}
    for name in NUMERIC_FIELDS:
        vals = [getattr(s, name) for s in stats]
        vals = [float(v) for v in vals if v is not None and math.isfinite(v)]
        out[name] = (math.fsum(vals) / len(vals) if vals else math.nan, len(vals))
    return out


def stats_from_dict(row: Dict[str, object]) -> CorpusStats:
    """Inverse of :meth:`CorpusStats.as_dict` tolerant of CSV strings."""
    kwargs = {}
    for f in fields(CorpusStats):
        raw = row.get(f.name)
        if f.name == "language_code":
            kwargs[f.name] = str(raw)
        elif raw is None or raw == "":
            if f.type in ("int",):
                kwargs[f.name] = 0
            else:
                kwargs[f.name] = None
        elif f.name.startswith("unique") or f.name == "n_sentences":
            kwargs[f.name] = int(raw)
        else:
            kwargs[f.name] = float(raw)
    return CorpusStats(**kwargs)
