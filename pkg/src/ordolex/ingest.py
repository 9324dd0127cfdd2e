"""Readers for tagged corpora (vertical TSV, CoNLL-U) and language tables."""

from __future__ import annotations

import csv
import enum
import io
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Mapping, Optional, TextIO, Union

from .corpus import Corpus, Sentence, Token, WordClass, is_language_code
from .errors import EmptyCorpus, OrdolexError, ParseError, RowError, SchemaError

UPOS_TAGS = {
    "NOUN": WordClass.NOUN,
    "PROPN": WordClass.PROPER_NOUN,
    "PRON": WordClass.PRONOUN,
    "VERB": WordClass.VERB,
    "AUX": WordClass.AUXILIARY,
}

# tags written back out by write_vertical
_CANONICAL_TAG = {
    WordClass.NOUN: "NOUN",
    WordClass.PROPER_NOUN: "PROPN",
    WordClass.PRONOUN: "PRON",
    WordClass.VERB: "VERB",
    WordClass.AUXILIARY: "AUX",
    WordClass.OTHER: "X",
}

_SENT_ID_RE = re.compile(r"^#\s*sent_id\s*=\s*(.+?)\s*$")


class TagMap:
    """Total mapping from source tags to :class:`WordClass`.

    Unknown tags map to ``WordClass.OTHER``. Lookup is exact first, then
    case-insensitive.
    """

    def __init__(self, mapping: Optional[Mapping[str, WordClass]] = None):
        self._map = dict(UPOS_TAGS if mapping is None else mapping)
        self._upper = {k.upper(): v for k, v in self._map.items()}

    def __getitem__(self, tag: str) -> WordClass:
        hit = self._map.get(tag)
        if hit is None:
            hit = self._upper.get(tag.upper(), WordClass.OTHER)
        return hit

    @classmethod
    def from_pairs(cls, pairs: Mapping[str, str]) -> "TagMap":
        """Build from ``{source_tag: WordClass name or value}``."""
        resolved = {}
        for tag, name in pairs.items():
            try:
                resolved[tag] = WordClass[name] if name in WordClass.__members__ else WordClass(name)
            except ValueError:
                raise SchemaError(f"unknown word class {name!r} for tag {tag!r}") from None
        return cls(resolved)


DEFAULT_TAG_MAP = TagMap()


class OrderLabel(str, enum.Enum):
    SV = "SV"
    VS = "VS"
    FREE = "free"

    @classmethod
    def parse(cls, text: str) -> Optional["OrderLabel"]:
        text = text.strip()
        if not text:
            return None
        for label in cls:
            if label.value.lower() == text.lower():
                return label
        raise ValueError(f"unknown order label {text!r}")

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class LanguageRecord:
    language_code: str
    family: str = ""
    macroarea: str = ""
    latitude: Optional[float] = None
    longitude: Optional[float] = None
    order_label: Optional[OrderLabel] = None

    @property
    def is_isolate(self) -> bool:
        return not self.family


def _lines(stream) -> Iterable[str]:
    for raw in stream:
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8")
        yield raw.rstrip("\r\n")


def _decode_guard(lines, source):
    try:
        yield from lines
    except UnicodeDecodeError as exc:
        raise ParseError(f"invalid UTF-8: {exc.reason}", source=source) from exc


def _finish(language_code, sentences, source):
    if not sentences:
        raise EmptyCorpus("no sentences in corpus", source=source)
    return Corpus(language_code, sentences)


def parse_vertical(stream, language_code: str, tag_map: TagMap = DEFAULT_TAG_MAP,
                   source: Optional[str] = None) -> Corpus:
    """Parse the one-token-per-line ``FORM<TAB>TAG`` format.

    Blank lines separate sentences; ``#`` lines are comments, except that a
    ``# sent_id = X`` comment names the following sentence.
    """
    sentences: List[Sentence] = []
    tokens: List[Token] = []
    pending_id = None

    def flush():
        nonlocal tokens, pending_id
        if tokens:
            sid = pending_id if pending_id is not None else str(len(sentences) + 1)
            sentences.append(Sentence(sid, tokens))
        tokens = []
        pending_id = None

    for lineno, line in enumerate(_decode_guard(_lines(stream), source), start=1):
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            m = _SENT_ID_RE.match(line)
            if m:
                if tokens:
                    flush()
                pending_id = m.group(1)
            continue
        fields = line.split("\t")
        if len(fields) != 2 or not fields[0].strip():
            raise ParseError(f"expected FORM<TAB>TAG, got {len(fields)} field(s)",
                             line=lineno, source=source)
        tokens.append(Token(fields[0], tag_map[fields[1].strip()]))
    flush()
    return _finish(language_code, sentences, source)


def parse_conllu_subset(stream, language_code: str, tag_map: TagMap = DEFAULT_TAG_MAP,
                        source: Optional[str] = None) -> Corpus:
    """Parse CoNLL-U, keeping only ID, FORM and UPOS.

    Multiword ranges (``3-4``) and empty nodes (``3.1``) contribute no token.
    """
    sentences: List[Sentence] = []
    tokens: List[Token] = []
    pending_id = None

    def flush():
        nonlocal tokens, pending_id
        if tokens:
            sid = pending_id if pending_id is not None else str(len(sentences) + 1)
            sentences.append(Sentence(sid, tokens))
        tokens = []
        pending_id = None

    for lineno, line in enumerate(_decode_guard(_lines(stream), source), start=1):
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            m = _SENT_ID_RE.match(line)
            if m:
                pending_id = m.group(1)
            continue
        fields = line.split("\t")
        if len(fields) < 4:
            raise ParseError(f"expected at least 4 tab-separated fields, got {len(fields)}",
                             line=lineno, source=source)
        tid = fields[0]
        if "-" in tid or "." in tid:
            continue
        tokens.append(Token(fields[1], tag_map[fields[3].strip()]))
    flush()
    return _finish(language_code, sentences, source)


def write_vertical(corpus: Corpus, stream: TextIO) -> None:
    for sentence in corpus.sentences:
        stream.write(f"# sent_id = {sentence.id}\n")
        for token in sentence.tokens:
            stream.write(f"{token.form}\t{_CANONICAL_TAG[token.word_class]}\n")
        stream.write("\n")


def dumps_vertical(corpus: Corpus) -> str:
    buf = io.StringIO()
    write_vertical(corpus, buf)
    return buf.getvalue()


CONLLU_SUFFIXES = (".conllu", ".conll")
VERTICAL_SUFFIXES = (".txt", ".tsv", ".vert")


def code_from_path(path: Union[str, Path]) -> str:
    """``eng.txt`` -> ``eng``; ``hbo_ptnk-ud-test.conllu`` -> ``hbo``."""
    stem = Path(path).name.split(".")[0]
    code = re.split(r"[-_]", stem)[0].lower()
    if not is_language_code(code):
        raise OrdolexError(f"cannot derive a 3-letter language code from {path}")
    return code


def read_corpus(path: Union[str, Path], language_code: Optional[str] = None,
                tag_map: TagMap = DEFAULT_TAG_MAP) -> Corpus:
    path = Path(path)
    code = language_code or code_from_path(path)
    parser = parse_conllu_subset if path.suffix.lower() in CONLLU_SUFFIXES else parse_vertical
    with open(path, "rb") as fh:
        return parser(fh, code, tag_map, source=str(path))


def find_corpora(directory: Union[str, Path]) -> List[Path]:
    """Corpus files directly inside ``directory`` sorted by name."""
    directory = Path(directory)
    if not directory.is_dir():
        raise OrdolexError(f"corpus directory not found: {directory}")
    suffixes = CONLLU_SUFFIXES + VERTICAL_SUFFIXES
    return sorted(p for p in directory.iterdir()
                  if p.is_file() and p.suffix.lower() in suffixes)


TABLE_COLUMNS = ("language_code", "family", "macroarea", "latitude", "longitude",
                 "order_label")


def _coord(text, lo, hi, name, row):
    text = (text or "").strip()
    if not text:
        return None
    try:
        value = float(text)
    except ValueError:
        raise RowError(f"unparseable {name} {text!r}", row) from None
    if not lo <= value <= hi:
        raise RowError(f"{name} {value} outside [{lo}, {hi}]", row)
    return value


def load_language_table(stream) -> List[LanguageRecord]:
    """Read the language metadata CSV.

    Blank family marks an isolate; blank order label marks an imputation
    target. Row numbers in errors count the header as row 1.
    """
    if not isinstance(stream, io.TextIOBase) and hasattr(stream, "read"):
        data = stream.read()
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        stream = io.StringIO(data)
    reader = csv.DictReader(stream)
    missing = [c for c in TABLE_COLUMNS if c not in (reader.fieldnames or ())]
    if missing:
        raise SchemaError(f"language table lacks column(s): {', '.join(missing)}")
    records = []
    for row_no, row in enumerate(reader, start=2):
        code = (row["language_code"] or "").strip()
        if not is_language_code(code):
            raise RowError(f"bad language code {code!r}", row_no)
        try:
            label = OrderLabel.parse(row["order_label"] or "")
        except ValueError as exc:
            raise RowError(str(exc), row_no) from None
        records.append(LanguageRecord(
            language_code=code,
            family=(row["family"] or "").strip(),
            macroarea=(row["macroarea"] or "").strip(),
            latitude=_coord(row["latitude"], -90.0, 90.0, "latitude", row_no),
            longitude=_coord(row["longitude"], -180.0, 180.0, "longitude", row_no),
            order_label=label,
        ))
    return records


def read_language_table(path: Union[str, Path]) -> List[LanguageRecord]:
    with open(path, encoding="utf-8", newline="") as fh:
        return load_language_table(fh)


def write_language_table(records: Iterable[LanguageRecord], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(TABLE_COLUMNS)
    for r in records:
        writer.writerow([
            r.language_code, r.family, r.macroarea,
            "" if r.latitude is None else repr(r.latitude),
            "" if r.longitude is None else repr(r.longitude),
            "" if r.order_label is None else r.order_label.value,
        ])
