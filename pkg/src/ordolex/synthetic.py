"""Seeded generators for synthetic tagged corpora and language tables.

Used for the shipped fixtures, the demos and the data-free acceptance
checks. Every generator draws from its own ``numpy.random.Generator`` so
outputs depend only on the seed.
"""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .corpus import Corpus, Sentence, Token, WordClass
from .ingest import LanguageRecord, OrderLabel, write_language_table, write_vertical
from .metrics import CorpusStats

MACROAREAS = {
    "Africa": ((-30.0, 15.0), (-15.0, 45.0)),
    "Eurasia": ((30.0, 65.0), (-10.0, 120.0)),
    "Papunesia": ((-10.0, 5.0), (110.0, 160.0)),
    "North America": ((15.0, 60.0), (-130.0, -70.0)),
    "South America": ((-40.0, 5.0), (-75.0, -40.0)),
    "Australia": ((-35.0, -15.0), (115.0, 150.0)),
}

# probability that a sentence is noun-initial, per order class
NOUN_FIRST = {OrderLabel.SV: (0.72, 0.86), OrderLabel.VS: (0.44, 0.56),
              OrderLabel.FREE: (0.58, 0.64)}


def language_codes(n: int, prefix: str = "z") -> List[str]:
    pairs = itertools.product(string.ascii_lowercase, repeat=2)
    return [prefix + a + b for a, b in itertools.islice(pairs, n)]


@dataclass(frozen=True)
class LanguageSpec:
    code: str
    label: OrderLabel
    noun_first: float
    noun_len: float
    verb_len: float
    family: str = ""
    macroarea: str = "Eurasia"
    latitude: float = 0.0
    longitude: float = 0.0


def _vocabulary(rng, size, mean_len, taken):
    words = []
    while len(words) < size:
        length = int(np.clip(round(rng.normal(mean_len, 1.2)), 2, 14))
        form = "".join(rng.choice(list(string.ascii_lowercase), size=length))
        if form not in taken:
            taken.add(form)
            words.append(form)
    return words


def _zipf_weights(size, exponent=1.0):
    w = 1.0 / np.arange(1, size + 1) ** exponent
    return w / w.sum()


def generate_corpus(spec: LanguageSpec, n_sentences: int = 200, seed: int = 0,
                    vocab_nouns: int = 240, vocab_verbs: int = 160) -> Corpus:
    """Corpus whose first-noun/first-verb precedence and noun/verb lengths
    follow ``spec``."""
    rng = np.random.default_rng(seed)
    taken: set = set()
    nouns = _vocabulary(rng, vocab_nouns, spec.noun_len, taken)
    verbs = _vocabulary(rng, vocab_verbs, spec.verb_len, taken)
    propns = [w.capitalize() for w in _vocabulary(rng, 30, spec.noun_len, taken)]
    pronouns = ["ta", "mi", "son", "ke"]
    fillers = _vocabulary(rng, 40, 3.0, taken)
    wn, wv = _zipf_weights(len(nouns)), _zipf_weights(len(verbs))

    def noun():
        if rng.random() < 0.1:
            return Token(propns[rng.integers(len(propns))], WordClass.PROPER_NOUN)
        return Token(nouns[rng.choice(len(nouns), p=wn)], WordClass.NOUN)

    sentences = []
    for i in range(n_sentences):
        subj, verb = noun(), Token(verbs[rng.choice(len(verbs), p=wv)], WordClass.VERB)
        core = [subj, verb] if rng.random() < spec.noun_first else [verb, subj]
        if rng.random() < 0.5:
            core.append(noun())
        if rng.random() < 0.3:
            core.append(Token(pronouns[rng.integers(len(pronouns))], WordClass.PRONOUN))
        if rng.random() < 0.2:
            core.append(Token("da", WordClass.AUXILIARY))
        if rng.random() < 0.5:
            core.insert(0, Token(fillers[rng.integers(len(fillers))], WordClass.OTHER))
        if rng.random() < 0.5:
            core.append(Token(fillers[rng.integers(len(fillers))], WordClass.OTHER))
        sentences.append(Sentence(str(i + 1), core))
    return Corpus(spec.code, sentences)


def language_suite(n_per_class: Dict[OrderLabel, int], seed: int = 0,
                   length_gap: Optional[Dict[OrderLabel, float]] = None,
                   families: Sequence[str] = ("Alpha", "Beta", "Gamma"),
                   n_isolates: int = 0, prefix: str = "z") -> List[LanguageSpec]:
    """Language specs with order-class dependent noun-minus-verb length gaps.

    ``length_gap`` defaults to nouns 1.0 longer in SV, 0.8 shorter in VS and
    0.3 longer in free languages. The last ``n_isolates`` languages get an
    empty family.
    """
    gap = {OrderLabel.SV: 1.0, OrderLabel.VS: -0.8, OrderLabel.FREE: 0.3}
    if length_gap:
        gap.update(length_gap)
    rng = np.random.default_rng(seed)
    labels = [lab for lab in (OrderLabel.SV, OrderLabel.VS, OrderLabel.FREE)
              for _ in range(n_per_class.get(lab, 0))]
    codes = language_codes(len(labels), prefix)
    areas = sorted(MACROAREAS)
    specs = []
    for idx, (code, label) in enumerate(zip(codes, labels)):
        lo, hi = NOUN_FIRST[label]
        base = rng.uniform(5.0, 7.0)
        delta = gap[label] + rng.normal(0.0, 0.15)
        area = areas[rng.integers(len(areas))]
        (la0, la1), (lo0, lo1) = MACROAREAS[area]
        family = "" if idx >= len(labels) - n_isolates else families[rng.integers(len(families))]
        specs.append(LanguageSpec(
            code, label, float(rng.uniform(lo, hi)),
            float(base + delta / 2), float(base - delta / 2),
            family, area, round(float(rng.uniform(la0, la1)), 4),
            round(float(rng.uniform(lo0, lo1)), 4)))
    return specs


def records_for(specs: Sequence[LanguageSpec], unlabeled: Sequence[str] = ()) -> List[LanguageRecord]:
    hidden = set(unlabeled)
    return [LanguageRecord(s.code, s.family, s.macroarea, s.latitude, s.longitude,
                           None if s.code in hidden else s.label) for s in specs]


def write_suite(specs: Sequence[LanguageSpec], directory, n_sentences: int = 200,
                seed: int = 0, unlabeled: Sequence[str] = ()) -> Path:
    """Write one vertical corpus per spec plus ``languages.csv``.

    Corpora land in ``directory/corpora``; returns ``directory``.
    """
    directory = Path(directory)
    corpora = directory / "corpora"
    corpora.mkdir(parents=True, exist_ok=True)
    for i, spec in enumerate(specs):
        corpus = generate_corpus(spec, n_sentences, seed=seed * 1000 + i)
        with open(corpora / f"{spec.code}.txt", "w", encoding="utf-8", newline="\n") as fh:
            write_vertical(corpus, fh)
    with open(directory / "languages.csv", "w", encoding="utf-8", newline="") as fh:
        write_language_table(records_for(specs, unlabeled), fh)
    return directory


def regression_suite(n: int = 400, seed: int = 0, n1_weight: float = 1.0,
                     length_weight: float = 0.6, families: int = 8,
                     prefix: str = "r") -> Tuple[List[LanguageRecord], Dict[str, CorpusStats]]:
    """Records and stats whose SV/VS label depends on the log N1 ratio and the
    noun-minus-verb length gap only; family and area are drawn independently."""
    rng = np.random.default_rng(seed)
    codes = language_codes(n, prefix)
    areas = sorted(MACROAREAS)
    fams = [f"Fam{i:02d}" for i in range(families)]
    records, stats = [], {}
    for code in codes:
        log_n1 = rng.normal(0.6, 0.6)
        noun = rng.normal(6.0, 0.8)
        verb = rng.normal(6.0, 0.8)
        latent = n1_weight * log_n1 + length_weight * (noun - verb) + rng.normal(0.0, 0.5)
        label = OrderLabel.SV if latent > 0.35 else OrderLabel.VS
        area = areas[rng.integers(len(areas))]
        (la0, la1), (lo0, lo1) = MACROAREAS[area]
        records.append(LanguageRecord(code, fams[rng.integers(families)], area,
                                      float(rng.uniform(la0, la1)),
                                      float(rng.uniform(lo0, lo1)), label))
        stats[code] = CorpusStats(code, 100, n1_ratio_np=float(np.exp(log_n1)),
                                  noun_len_token=float(noun), verb_len_token=float(verb))
    return records, stats


def toy_corpus() -> Corpus:
    """Three sentences, two noun-first and one verb-first (N1 ratio 2.0)."""
    N, V, O = WordClass.NOUN, WordClass.VERB, WordClass.OTHER
    rows = [
        [("dogs", N), ("bark", V)],
        [("the", O), ("cat", N), ("sleeps", V)],
        [("runs", V), ("horse", N)],
    ]
    return Corpus("toy", [Sentence(str(i + 1), [Token(f, c) for f, c in r])
                          for i, r in enumerate(rows)])


FIXTURE_FAMILIES = (("Indo-European", 10), ("Austronesian", 8), ("Atlantic-Congo", 6),
                    ("Sino-Tibetan", 5), ("Otomanguean", 4), ("", 3))
FIXTURE_CLASSES = {OrderLabel.SV: 20, OrderLabel.VS: 10, OrderLabel.FREE: 6}
FIXTURE_SEED = 7
FIXTURE_SENTENCES = 80


def fixture_specs(seed: int = FIXTURE_SEED) -> List[LanguageSpec]:
    specs = language_suite(FIXTURE_CLASSES, seed=seed, prefix="f")
    families = [name for name, size in FIXTURE_FAMILIES for _ in range(size)]
    order = np.random.default_rng(seed + 1).permutation(len(specs))
    out = [replace(specs[i], family=families[j]) for j, i in enumerate(order)]
    return sorted(out, key=lambda s: s.code)


def fixture_unlabeled(specs: Sequence[LanguageSpec]) -> List[str]:
    """Codes whose label is hidden: the last two SV, two VS and one free."""
    hide = {OrderLabel.SV: 2, OrderLabel.VS: 2, OrderLabel.FREE: 1}
    hidden = []
    for label, k in hide.items():
        hidden += [s.code for s in specs if s.label is label][-k:]
    return sorted(hidden)


def write_fixtures(directory, seed: int = FIXTURE_SEED) -> Path:
    """The fixture tree shipped in ``ordolex/data/fixtures``."""
    directory = Path(directory)
    specs = fixture_specs(seed)
    write_suite(specs, directory, FIXTURE_SENTENCES, seed, fixture_unlabeled(specs))
    with open(directory / "dunn_languages.txt", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# languages shared with the phylogenetic sample\n")
        for s in specs:
            if s.family in ("Indo-European", "Austronesian"):
                fh.write(s.code + "\n")
    with open(directory / "toy.txt", "w", encoding="utf-8", newline="\n") as fh:
        write_vertical(toy_corpus(), fh)
    return directory
