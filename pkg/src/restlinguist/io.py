"""Loading and validation of API collections, acronym dictionaries,
stop-word lists and oracle label files.

On-disk formats:

* Collection JSON: ``{"name": str, "entries": [{"id"?, "uri", "method",
  "documentation"?}, ...]}``. A file may carry several collections as
  ``{"apis": [collection, ...]}``.
* Acronym file: UTF-8 text, one ``acronym<TAB>expansion words`` per line,
  ``#`` comment lines ignored.
* Stop-word file: UTF-8 text, one word per line.
* Oracle JSON: ``{"<entry id>": {"<rule id>": "pattern"|"antipattern"}}``.

Loaders are pure given file contents and the loaded objects are immutable,
so they can be shared freely across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

from .rules import RuleId, Verdict
from .uri import HttpMethod

__all__ = [
    "ParseError",
    "ValidationError",
    "ApiEntry",
    "ApiCollection",
    "AcronymDictionary",
    "OracleLabels",
    "load_collection",
    "load_collections",
    "load_acronyms",
    "load_stopwords",
    "load_oracle",
    "collection_to_dict",
    "collection_to_json",
]


class ParseError(ValueError):
    """Input data file is malformed (bad JSON, bad schema, bad field value)."""


class ValidationError(ValueError):
    """Configuration-side input (oracle, acronyms, lexicon) violates its contract."""


@dataclass(frozen=True)
class ApiEntry:
    """One documented endpoint: URI, HTTP method and free-text documentation."""

    id: str
    uri: str
    method: HttpMethod
    documentation: str = ""


class AcronymDictionary:
    """Whole-token acronym expansions (e.g. hvac -> heating ventilation air
    conditioning). Matching is case-insensitive on whole tokens only, so an
    ``iot`` entry never fires inside ``riot``."""

    def __init__(self, mapping: dict[str, tuple[str, ...]] | None = None):
        self._mapping: dict[str, tuple[str, ...]] = dict(mapping or {})
        self._lookup = {key.casefold(): words for key, words in self._mapping.items()}

    def __len__(self) -> int:
        return len(self._mapping)

    def __contains__(self, token: str) -> bool:
        return token.casefold() in self._lookup

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AcronymDictionary) and self._mapping == other._mapping

    def items(self):
        return self._mapping.items()

    def expansion(self, token: str) -> tuple[str, ...] | None:
        return self._lookup.get(token.casefold())

    def expand(self, tokens: list[str]) -> list[str]:
        """Replace every token that matches an acronym with its expansion."""
        if not self._lookup:
            return list(tokens)
        out: list[str] = []
        for token in tokens:
            expansion = self._lookup.get(token.casefold())
            if expansion is None:
                out.append(token)
            else:
                out.extend(expansion)
        return out

    @classmethod
    def empty(cls) -> "AcronymDictionary":
        return cls({})


@dataclass(frozen=True)
class ApiCollection:
    """A named, ordered set of endpoint entries plus the lexicons used to
    analyse them."""

    name: str
    entries: tuple[ApiEntry, ...]
    acronyms: AcronymDictionary = field(default_factory=AcronymDictionary.empty)
    stopwords: frozenset[str] = frozenset()

    def entry_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.entries)

    def with_lexicons(
        self,
        acronyms: AcronymDictionary | None = None,
        stopwords: frozenset[str] | None = None,
    ) -> "ApiCollection":
        updated = self
        if acronyms is not None:
            updated = replace(updated, acronyms=acronyms)
        if stopwords is not None:
            updated = replace(updated, stopwords=frozenset(stopwords))
        return updated


@dataclass(frozen=True)
class OracleLabels:
    """Human-judged ground truth: (entry id, rule) -> verdict."""

    labels: tuple[tuple[str, RuleId, Verdict], ...]

    def __len__(self) -> int:
        return len(self.labels)

    def as_dict(self) -> dict[tuple[str, RuleId], Verdict]:
        return {(entry_id, rule): verdict for entry_id, rule, verdict in self.labels}

    def validate_against(self, collection: ApiCollection) -> None:
        known = set(collection.entry_ids())
        for entry_id, rule, _ in self.labels:
            if entry_id not in known:
                raise ValidationError(
                    f"oracle references unknown entry id {entry_id!r} "
                    f"(collection {collection.name!r})"
                )


def _read_json(path) -> object:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc


def _collection_from_dict(data: object, source: str) -> ApiCollection:
    if not isinstance(data, dict):
        raise ParseError(f"{source}: collection must be a JSON object")
    name = data.get("name")
    if not isinstance(name, str) or not name:
        raise ParseError(f"{source}: collection is missing a non-empty 'name'")
    raw_entries = data.get("entries")
    if not isinstance(raw_entries, list):
        raise ParseError(f"{source}: collection {name!r} is missing an 'entries' array")

    entries: list[ApiEntry] = []
    seen_ids: set[str] = set()
    for index, raw in enumerate(raw_entries, start=1):
        if not isinstance(raw, dict):
            raise ParseError(f"{source}: entry #{index} of {name!r} must be an object")
        entry_id = raw.get("id") or f"e{index}"
        if not isinstance(entry_id, str):
            raise ParseError(f"{source}: entry #{index} of {name!r} has a non-string id")
        uri = raw.get("uri")
        if not isinstance(uri, str) or not uri.strip():
            raise ParseError(f"{source}: entry {entry_id!r} has an empty or missing 'uri'")
        method_raw = raw.get("method")
        if not isinstance(method_raw, str):
            raise ParseError(f"{source}: entry {entry_id!r} has a missing 'method'")
        try:
            method = HttpMethod.parse(method_raw)
        except ValueError as exc:
            raise ParseError(f"{source}: entry {entry_id!r}: {exc}") from exc
        documentation = raw.get("documentation", "")
        if documentation is None:
            documentation = ""
        if not isinstance(documentation, str):
            raise ParseError(f"{source}: entry {entry_id!r} has non-string documentation")
        if entry_id in seen_ids:
            raise ParseError(f"{source}: duplicate entry id {entry_id!r} in {name!r}")
        seen_ids.add(entry_id)
        entries.append(ApiEntry(id=entry_id, uri=uri, method=method, documentation=documentation))

    if len(entries) != len(raw_entries):
        raise ParseError(f"{source}: collection {name!r} dropped entries while loading")
    return ApiCollection(name=name, entries=tuple(entries))


def load_collections(path) -> list[ApiCollection]:
    """All collections in a file (one, or several under an "apis" array)."""
    data = _read_json(path)
    if isinstance(data, dict) and "apis" in data:
        apis = data["apis"]
        if not isinstance(apis, list) or not apis:
            raise ParseError(f"{path}: 'apis' must be a non-empty array of collections")
        return [_collection_from_dict(item, str(path)) for item in apis]
    return [_collection_from_dict(data, str(path))]


def load_collection(path) -> ApiCollection:
    """The single collection in a file; rejects multi-collection files."""
    collections = load_collections(path)
    if len(collections) != 1:
        raise ParseError(
            f"{path}: expected a single collection but found {len(collections)}; "
            "use load_collections for multi-API files"
        )
    return collections[0]


def load_acronyms(path) -> AcronymDictionary:
    """Tab-separated acronym file -> dictionary. Rejects self-mappings,
    empty expansions and expansions that contain another acronym."""
    mapping: dict[str, tuple[str, ...]] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if "\t" not in line:
            raise ValidationError(
                f"{path}:{lineno}: expected 'acronym<TAB>expansion', got {line!r}"
            )
        acronym, expansion_text = line.split("\t", 1)
        acronym = acronym.strip()
        words = tuple(w.lower() for w in expansion_text.split() if w)
        if not acronym:
            raise ValidationError(f"{path}:{lineno}: empty acronym")
        if not words:
            raise ValidationError(f"{path}:{lineno}: empty expansion for {acronym!r}")
        if acronym.casefold() in {w.casefold() for w in words}:
            raise ValidationError(f"{path}:{lineno}: acronym {acronym!r} maps to itself")
        if acronym.casefold() in {k.casefold() for k in mapping}:
            raise ValidationError(f"{path}:{lineno}: duplicate acronym {acronym!r}")
        mapping[acronym] = words
    keys = {k.casefold() for k in mapping}
    for acronym, words in mapping.items():
        recursive = [w for w in words if w.casefold() in keys]
        if recursive:
            raise ValidationError(
                f"{path}: expansion of {acronym!r} contains other acronyms: {recursive}"
            )
    return AcronymDictionary(mapping)


def load_stopwords(path) -> frozenset[str]:
    """One word per line -> lowercased, deduplicated stop-word set."""
    text = Path(path).read_text(encoding="utf-8")
    return frozenset(w.strip().lower() for w in text.splitlines() if w.strip())


def load_oracle(path) -> OracleLabels:
    """Oracle JSON -> labels; every rule id must be one of the nine."""
    data = _read_json(path)
    if not isinstance(data, dict):
        raise ValidationError(f"{path}: oracle must be a JSON object keyed by entry id")
    labels: list[tuple[str, RuleId, Verdict]] = []
    for entry_id, rules in data.items():
        if not isinstance(rules, dict):
            raise ValidationError(f"{path}: oracle entry {entry_id!r} must map rule ids to verdicts")
        for rule_raw, verdict_raw in rules.items():
            try:
                rule = RuleId.parse(rule_raw)
            except ValueError as exc:
                raise ValidationError(f"{path}: oracle entry {entry_id!r}: {exc}") from exc
            try:
                verdict = Verdict.parse(str(verdict_raw))
            except ValueError as exc:
                raise ValidationError(f"{path}: oracle entry {entry_id!r}: {exc}") from exc
            labels.append((entry_id, rule, verdict))
    return OracleLabels(labels=tuple(labels))


def collection_to_dict(collection: ApiCollection) -> dict:
    """JSON-ready form of a collection; inverse of the collection loader."""
    entries = []
    for entry in collection.entries:
        item: dict[str, str] = {
            "id": entry.id,
            "uri": entry.uri,
            "method": entry.method.value,
        }
        if entry.documentation:
            item["documentation"] = entry.documentation
        entries.append(item)
    return {"name": collection.name, "entries": entries}


def collection_to_json(collection: ApiCollection) -> str:
    return json.dumps(collection_to_dict(collection), indent=2, ensure_ascii=False) + "\n"
