"""In-memory model of word-class tagged corpora."""

from __future__ import annotations

import enum
import re
import unicodedata
from dataclasses import dataclass, field
from typing import Tuple

from .errors import OrdolexError

_CODE_RE = re.compile(r"^[a-z]{3}$")


class WordClass(enum.Enum):
    NOUN = "Noun"
    PROPER_NOUN = "ProperNoun"
    PRONOUN = "Pronoun"
    VERB = "Verb"
    AUXILIARY = "Auxiliary"
    OTHER = "Other"

    @property
    def is_argument(self) -> bool:
        return self in _ARGUMENTS

    @property
    def is_predicate(self) -> bool:
        return self is WordClass.VERB

    @property
    def is_noun_strict(self) -> bool:
        return self in _NOUNS

    @property
    def is_verb_strict(self) -> bool:
        return self is WordClass.VERB


_ARGUMENTS = frozenset({WordClass.NOUN, WordClass.PROPER_NOUN, WordClass.PRONOUN})
_NOUNS = frozenset({WordClass.NOUN, WordClass.PROPER_NOUN})


def nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


@dataclass(frozen=True)
class Token:
    form: str
    word_class: WordClass

    def __post_init__(self):
        form = nfc(self.form.strip())
        if not form:
            raise OrdolexError("token form is empty")
        object.__setattr__(self, "form", form)


@dataclass(frozen=True)
class Sentence:
    id: str
    tokens: Tuple[Token, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))


@dataclass(frozen=True)
class Corpus:
    language_code: str
    sentences: Tuple[Sentence, ...]

    def __post_init__(self):
        if not _CODE_RE.match(self.language_code):
            raise OrdolexError(
                f"language code must be 3 lowercase ASCII letters: {self.language_code!r}"
            )
        object.__setattr__(self, "sentences", tuple(self.sentences))

    def __len__(self):
        return len(self.sentences)

    def tokens(self):
        for sentence in self.sentences:
            yield from sentence.tokens


def token_length(token: Token) -> int:
    """Number of Unicode scalar values in the NFC form of ``token.form``."""
    return len(nfc(token.form))


def is_language_code(code: str) -> bool:
    return bool(_CODE_RE.match(code))
