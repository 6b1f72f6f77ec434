"""Lexical model of REST resource URIs.

Parses a raw URI string into an ordered list of path nodes and exposes the
purely syntactic facts (case, separators, extensions, character classes,
version segments) that the rule engine consumes. Parsing is total: any
non-empty string yields a ``ResourceUri``; judging quality is the detectors'
job, not the parser's.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

__all__ = [
    "HttpMethod",
    "NodeKind",
    "UriNode",
    "ResourceUri",
    "CharCategory",
    "CharIssue",
    "parse_uri",
    "classify_node",
    "split_words",
    "detect_file_extension",
    "detect_version_segment",
    "scan_nonstandard_chars",
]


class HttpMethod(enum.Enum):
    GET = "GET"
    POST = "POST"
    PUT = "PUT"
    DELETE = "DELETE"
    PATCH = "PATCH"
    HEAD = "HEAD"
    OPTIONS = "OPTIONS"

    @classmethod
    def parse(cls, value: str) -> "HttpMethod":
        try:
            return cls[value.strip().upper()]
        except KeyError:
            valid = ", ".join(m.name for m in cls)
            raise ValueError(f"unknown HTTP method {value!r} (expected one of: {valid})") from None


class NodeKind(enum.Enum):
    LITERAL = "literal"
    TEMPLATE_PARAMETER = "template_parameter"


@dataclass(frozen=True)
class UriNode:
    """One slash-delimited path segment with its word decomposition."""

    raw: str
    kind: NodeKind
    words: tuple[str, ...]

    @property
    def is_template(self) -> bool:
        return self.kind is NodeKind.TEMPLATE_PARAMETER


@dataclass(frozen=True)
class ResourceUri:
    raw: str
    scheme_host: str | None
    nodes: tuple[UriNode, ...]
    has_trailing_slash: bool
    query: str | None

    @property
    def literal_nodes(self) -> tuple[UriNode, ...]:
        return tuple(n for n in self.nodes if n.kind is NodeKind.LITERAL)


class CharCategory(enum.Enum):
    NON_ASCII_LETTER = "non_ascii_letter"
    BLANK_SPACE = "blank_space"
    DOUBLE_HYPHEN = "double_hyphen"
    UNKNOWN_CHARACTER = "unknown_character"


@dataclass(frozen=True)
class CharIssue:
    position: int
    char: str
    category: CharCategory


# Word splitting: camelCase (lower->upper), letter<->digit transitions,
# underscores, hyphens and any other non-alphanumeric separator.
_CAMEL_RE = re.compile(r"(?<=[a-z])(?=[A-Z])|(?<=[a-zA-Z])(?=[0-9])|(?<=[0-9])(?=[a-zA-Z])")
_NONALNUM_RE = re.compile(r"[^a-zA-Z0-9]+")

_SCHEME_RE = re.compile(r"^[a-zA-Z][a-zA-Z0-9+.-]*://")
_ALLCAPS_PLACEHOLDER_RE = re.compile(r"^\$?[A-Z0-9]+(?:_[A-Z0-9]+)+$")
_VERSION_V_RE = re.compile(r"^[vV][0-9]+(?:\.[0-9]+)*$")
_VERSION_DOTTED_RE = re.compile(r"^[0-9]+(?:\.[0-9]+)+$")
_NUMERIC_RE = re.compile(r"^[0-9]+(?:\.[0-9]+)*$")

# Hosts are only recognised when they look like real dotted domains; a lone
# "name.ext" first segment must stay a path node so extension checks see it.
_TLD_TAIL = {
    "com", "net", "org", "io", "edu", "gov", "mil", "int", "info", "biz",
    "dev", "app", "cloud", "ai", "co", "uk", "us", "eu", "de", "se", "fr",
    "ca", "au", "jp", "cn", "in", "br", "ru", "ch", "nl", "es", "it", "fi",
    "no", "dk", "be", "at", "pl", "pt", "ie", "nz", "kr", "tw", "mx",
}

# Extensions a final "name.ext" node may carry; dotted digit runs such as
# "1.1" are version segments, never extensions.
KNOWN_EXTENSIONS = frozenset({
    "json", "xml", "html", "htm", "tiff", "jpg", "jpeg", "png", "gif",
    "pdf", "txt", "csv", "zip",
})

# Characters tolerated anywhere in a URI; blank space and "--" are reported
# under their own categories, everything else outside this set is unknown.
_ALLOWED_CHARS = frozenset(
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"
    "._~-/?=&{}[]:"
)


def split_words(segment: str) -> tuple[str, ...]:
    """Lowercase word tokens of a segment, split on camelCase boundaries,
    underscores, hyphens, digits and punctuation. Digits and punctuation are
    separators, not words."""
    spaced = _CAMEL_RE.sub(" ", segment)
    return tuple(p.lower() for p in _NONALNUM_RE.split(spaced) if p and p.isalpha())


def _is_template_segment(segment: str) -> bool:
    if len(segment) >= 2 and segment[0] == "{" and segment[-1] == "}":
        return True
    if len(segment) >= 2 and segment[0] == "[" and segment[-1] == "]":
        return True
    if _ALLCAPS_PLACEHOLDER_RE.match(segment):
        return True
    lowered = segment.lower()
    if lowered.endswith("_id") or lowered.endswith("-id"):
        return True
    return False


def classify_node(segment: str) -> UriNode:
    """Classify one path segment as a literal resource name or a template
    parameter and compute its word split.

    Template parameters are recognised by four conventions: brace wrapping
    ("{deviceId}"), bracket wrapping ("[device id]"), ALL_CAPS placeholder
    names ("THING_TOKEN") and the trailing id convention ("device_id").
    """
    kind = NodeKind.TEMPLATE_PARAMETER if _is_template_segment(segment) else NodeKind.LITERAL
    return UriNode(raw=segment, kind=kind, words=split_words(segment))


def _looks_like_host(candidate: str) -> bool:
    if candidate.count(".") < 2:
        return False
    tail = candidate.rsplit(".", 1)[-1].lower()
    return tail in _TLD_TAIL


def parse_uri(raw: str) -> ResourceUri:
    """Parse any non-empty string into a ResourceUri. Never raises on odd
    content; garbage simply becomes literal nodes."""
    if not raw or not raw.strip():
        raise ValueError("URI must be a non-empty string")

    rest = raw
    query: str | None = None
    if "?" in rest:
        rest, query = rest.split("?", 1)

    scheme_host: str | None = None
    match = _SCHEME_RE.match(rest)
    if match:
        after = rest[match.end():]
        host, sep, path = after.partition("/")
        scheme_host = rest[: match.end()] + host
        rest = sep + path
    elif not rest.startswith("/"):
        head, sep, path = rest.partition("/")
        if _looks_like_host(head):
            scheme_host = head
            rest = sep + path

    has_trailing_slash = rest.endswith("/") and rest != ""
    segments = [s for s in rest.split("/") if s]
    nodes = tuple(classify_node(s) for s in segments)
    return ResourceUri(
        raw=raw,
        scheme_host=scheme_host,
        nodes=nodes,
        has_trailing_slash=has_trailing_slash,
        query=query,
    )


def detect_file_extension(node: UriNode) -> str | None:
    """Extension of a "name.ext" segment when ext is a known file extension."""
    raw = node.raw
    if "." not in raw:
        return None
    name, _, ext = raw.rpartition(".")
    if not name or not ext:
        return None
    if ext.lower() in KNOWN_EXTENSIONS:
        return ext.lower()
    return None


def detect_version_segment(uri: ResourceUri) -> tuple[int, str] | None:
    """First path node carrying version information.

    Matches "v<digits>" with optional dotted tail ("v0", "v2.0"), bare
    dotted-numeric nodes ("1.1"), or a literal "version" node immediately
    followed by a numeric node. Returns (node index, version text) or None.
    """
    for i, node in enumerate(uri.nodes):
        raw = node.raw
        if _VERSION_V_RE.match(raw) or _VERSION_DOTTED_RE.match(raw):
            return (i, raw)
        if raw.lower() == "version" and i + 1 < len(uri.nodes):
            nxt = uri.nodes[i + 1].raw
            if _NUMERIC_RE.match(nxt):
                return (i, nxt)
    return None


def scan_nonstandard_chars(uri: ResourceUri) -> list[CharIssue]:
    """Per-character scan of the raw URI for non-standard content.

    Reports non-ASCII letters, blank spaces, double hyphens and unknown
    characters (anything outside the tolerated URI alphabet). Template
    delimiters are part of the tolerated alphabet, but their contents are
    scanned like any other text, so a space inside "[device id]" is flagged.
    """
    issues: list[CharIssue] = []
    raw = uri.raw
    for pos, ch in enumerate(raw):
        if ch == " ":
            issues.append(CharIssue(pos, ch, CharCategory.BLANK_SPACE))
        elif ch in _ALLOWED_CHARS:
            if ch == "-" and pos + 1 < len(raw) and raw[pos + 1] == "-":
                issues.append(CharIssue(pos, "--", CharCategory.DOUBLE_HYPHEN))
        elif ch.isalpha() and ord(ch) > 127:
            issues.append(CharIssue(pos, ch, CharCategory.NON_ASCII_LETTER))
        else:
            issues.append(CharIssue(pos, ch, CharCategory.UNKNOWN_CHARACTER))
    return issues
