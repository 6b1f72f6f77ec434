"""Documentation and URI word normalisation.

Shared pipeline for every rule that reads natural language: tokenisation on
camelCase and punctuation boundaries, acronym expansion, stop-word removal,
lemmatisation, and the CRUD verb lexicon.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass
from importlib import resources
from typing import TYPE_CHECKING

from .inflection import is_plural, lemmatize, singularize  # noqa: F401  (re-exported)
from .uri import split_words

if TYPE_CHECKING:
    from .io import AcronymDictionary

__all__ = [
    "ProcessedDoc",
    "CrudClass",
    "CrudLexicon",
    "crud_class_of",
    "preprocess",
    "tokenize",
    "default_stopwords",
    "lemmatize",
    "is_plural",
    "singularize",
]


@dataclass(frozen=True)
class ProcessedDoc:
    """Normalised documentation text: lemmatised lowercase tokens with stop
    words removed and acronyms expanded."""

    raw: str
    tokens: tuple[str, ...]


class CrudClass(enum.Enum):
    CREATE = "create"
    READ = "read"
    UPDATE = "update"
    DELETE = "delete"


_DEFAULT_CRUD_SETS: dict[CrudClass, frozenset[str]] = {
    CrudClass.CREATE: frozenset({
        "create", "make", "add", "new", "insert", "build", "generate",
        "register", "post",
    }),
    CrudClass.READ: frozenset({
        "read", "get", "fetch", "retrieve", "show", "view", "list",
        "search", "find", "query",
    }),
    CrudClass.UPDATE: frozenset({
        "update", "modify", "edit", "change", "set", "put", "patch",
    }),
    CrudClass.DELETE: frozenset({
        "delete", "remove", "destroy", "erase", "clear", "purge",
    }),
}


class CrudLexicon:
    """Four pairwise-disjoint word sets, one per CRUD action class."""

    def __init__(self, sets: dict[CrudClass, frozenset[str]] | None = None):
        self._sets = dict(sets) if sets is not None else dict(_DEFAULT_CRUD_SETS)
        self._index: dict[str, CrudClass] = {}
        for crud_class, words in self._sets.items():
            for word in words:
                if word != word.lower():
                    raise ValueError(f"CRUD lexicon entries must be lowercase: {word!r}")
                if word in self._index:
                    raise ValueError(
                        f"CRUD lexicon classes must be disjoint: {word!r} appears in "
                        f"both {self._index[word].value} and {crud_class.value}"
                    )
                self._index[word] = crud_class

    @classmethod
    def default(cls) -> "CrudLexicon":
        return cls()

    @classmethod
    def from_json_file(cls, path) -> "CrudLexicon":
        """Load an override lexicon from {"create": [...], "read": [...],
        "update": [...], "delete": [...]}."""
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValueError("CRUD lexicon file must be a JSON object")
        sets = {}
        for crud_class in CrudClass:
            words = data.get(crud_class.value, [])
            if not isinstance(words, list):
                raise ValueError(f"CRUD lexicon field {crud_class.value!r} must be a list")
            sets[crud_class] = frozenset(str(w) for w in words)
        return cls(sets)

    def class_of(self, word: str) -> CrudClass | None:
        """CRUD class of a lowercase lemma, or None for non-CRUD words."""
        return self._index.get(word)

    def words(self, crud_class: CrudClass) -> frozenset[str]:
        return self._sets[crud_class]


_COARSE_RE = re.compile(r"[^0-9A-Za-z]+")


def crud_class_of(word: str, lexicon: CrudLexicon) -> CrudClass | None:
    """CRUD class of a lowercase lemma under the lexicon, or None."""
    return lexicon.class_of(word)


def tokenize(text: str) -> list[str]:
    """Lowercase word tokens of free text; same splitting convention as URI
    segments (camelCase, digits and punctuation are boundaries)."""
    return list(split_words(text))


def default_stopwords() -> frozenset[str]:
    """Stop words shipped with the package; callers may substitute their own
    list."""
    data = resources.files("restlinguist.data").joinpath("stopwords.txt").read_text("utf-8")
    return frozenset(w.strip().lower() for w in data.splitlines() if w.strip())


def preprocess(
    text: str,
    stopwords: frozenset[str] | set[str] = frozenset(),
    acronyms: "AcronymDictionary | None" = None,
) -> ProcessedDoc:
    """Normalise documentation text into lemmatised tokens.

    Order: tokenise, expand acronyms (whole-token, so "IoT" expands but
    "riot" does not), drop stop words, lemmatise. A lemma that lands on a
    stop word or an acronym key is filtered or re-expanded so the output
    never contains either.
    """
    tokens: list[str] = []
    for coarse in _COARSE_RE.split(text):
        if not coarse:
            continue
        expansion = acronyms.expansion(coarse) if acronyms is not None else None
        if expansion is not None:
            tokens.extend(expansion)
        else:
            tokens.extend(split_words(coarse))
    tokens = [t for t in tokens if t not in stopwords]
    lemmas = [lemmatize(t) for t in tokens]
    if acronyms is not None:
        lemmas = acronyms.expand(lemmas)
    final = tuple(t for t in lemmas if t not in stopwords)
    return ProcessedDoc(raw=text, tokens=final)
