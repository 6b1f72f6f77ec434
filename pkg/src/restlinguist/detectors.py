"""The nine lint rules.

Every detector consumes one endpoint entry (plus shared models where the
rule is semantic) and returns a Finding holding a binary verdict and
position-tied evidence. Detectors are pure functions of their inputs; the
batch runner may therefore evaluate rules concurrently without changing
any verdict.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from importlib import resources

from .io import ApiCollection, ApiEntry
from .rules import RuleId, Verdict
from .semantics import (
    DEFAULT_ITERATIONS,
    DEFAULT_SEED,
    DEFAULT_THRESHOLD,
    CooccurrenceSimilarity,
    SimilarityProvider,
    TopicModel,
    aggregate_node_topic_score,
    build_corpus,
    choose_k,
    node_topic_memberships,
    train_lda,
)
from .textpipe import CrudClass, CrudLexicon, default_stopwords, lemmatize, preprocess
from .inflection import is_plural
from .uri import (
    HttpMethod,
    NodeKind,
    ResourceUri,
    detect_file_extension,
    detect_version_segment,
    parse_uri,
    scan_nonstandard_chars,
)

__all__ = [
    "Evidence",
    "Finding",
    "AnalysisOptions",
    "RunResult",
    "detect_amorphous",
    "detect_contextless",
    "detect_crudy",
    "detect_non_hierarchical",
    "detect_pluralised",
    "detect_non_pertinent_doc",
    "detect_inconsistent_doc",
    "detect_unversioned",
    "detect_non_standard",
    "run_all",
    "hierarchy_pairs",
    "semantic_words",
]

ALL_RULES: tuple[RuleId, ...] = tuple(RuleId)

# Words shorter than this carry no usable semantics in a URI ("id", "co",
# "v2" remnants) and are excluded from topic and documentation matching.
MIN_SEMANTIC_WORD_LEN = 3


@dataclass(frozen=True)
class Evidence:
    """One human-readable reason, tied to a node index, token index or
    character offset where applicable."""

    message: str
    position: int | None = None

    def __str__(self) -> str:
        if self.position is None:
            return self.message
        return f"[{self.position}] {self.message}"


@dataclass(frozen=True)
class Finding:
    entry_id: str
    rule: RuleId
    verdict: Verdict
    evidence: tuple[Evidence, ...] = ()
    elapsed: float = 0.0

    @property
    def is_antipattern(self) -> bool:
        return self.verdict is Verdict.ANTIPATTERN


def _finding(entry: ApiEntry, rule: RuleId, antipattern: bool, evidence: list[Evidence]) -> Finding:
    verdict = Verdict.ANTIPATTERN if antipattern else Verdict.PATTERN
    if antipattern and not evidence:
        raise AssertionError(f"antipattern verdict for {rule.value} must carry evidence")
    return Finding(entry_id=entry.id, rule=rule, verdict=verdict, evidence=tuple(evidence))


# --------------------------------------------------------------------------
# syntactic rules

def _camel_exempt_upper(raw: str) -> bool:
    """True when raw contains an uppercase letter that is not an interior
    camelCase hump (i.e. not immediately preceded by a lowercase letter)."""
    for i, ch in enumerate(raw):
        if ch.isupper():
            if i == 0 or not raw[i - 1].islower():
                return True
    return False


def detect_amorphous(entry: ApiEntry, uri: ResourceUri) -> Finding:
    """Untidy URI shapes: stray upper case (camelCase is fine), file
    extensions, underscores, and a trailing slash. Template parameters are
    exempt from the case and underscore checks."""
    evidence: list[Evidence] = []
    for i, node in enumerate(uri.nodes):
        if node.kind is NodeKind.LITERAL:
            if _camel_exempt_upper(node.raw):
                evidence.append(Evidence(f"upper-case letters in node {node.raw!r}", i))
            if "_" in node.raw:
                evidence.append(Evidence(f"underscore in node {node.raw!r}", i))
        ext = detect_file_extension(node)
        if ext is not None:
            evidence.append(Evidence(f"file extension .{ext} in node {node.raw!r}", i))
    if uri.has_trailing_slash:
        evidence.append(Evidence("trailing slash"))
    return _finding(entry, RuleId.AMORPHOUS_URI, bool(evidence), evidence)


def detect_unversioned(entry: ApiEntry, uri: ResourceUri) -> Finding:
    """No version information anywhere in the URI path."""
    version = detect_version_segment(uri)
    if version is not None:
        return _finding(entry, RuleId.UNVERSIONED_URI, False, [])
    return _finding(
        entry,
        RuleId.UNVERSIONED_URI,
        True,
        [Evidence("no version segment in URI path")],
    )


def detect_non_standard(entry: ApiEntry, uri: ResourceUri) -> Finding:
    """Non-standard characters: non-ASCII letters, blank spaces, double
    hyphens, or unknown punctuation anywhere in the URI."""
    issues = scan_nonstandard_chars(uri)
    evidence = [
        Evidence(f"{issue.category.value} {issue.char!r}", issue.position)
        for issue in issues
    ]
    return _finding(entry, RuleId.NON_STANDARD_URI, bool(evidence), evidence)


# --------------------------------------------------------------------------
# lexicon rules

def detect_crudy(entry: ApiEntry, uri: ResourceUri, lexicon: CrudLexicon) -> Finding:
    """CRUD verbs (or synonyms) used as resource names. The HTTP method
    itself is never evidence; only literal node words count."""
    evidence: list[Evidence] = []
    for i, node in enumerate(uri.nodes):
        if node.kind is not NodeKind.LITERAL:
            continue
        for word in node.words:
            crud_class = lexicon.class_of(lemmatize(word))
            if crud_class is not None:
                evidence.append(
                    Evidence(f"CRUD term {word!r} ({crud_class.value}) in node {node.raw!r}", i)
                )
    return _finding(entry, RuleId.CRUDY_URI, bool(evidence), evidence)


def detect_pluralised(entry: ApiEntry, uri: ResourceUri) -> Finding:
    """Number agreement between the HTTP method and the final resource
    name: PUT/DELETE act on one resource (singular), POST on a collection
    (plural). Other methods are unaffected."""
    if entry.method not in (HttpMethod.PUT, HttpMethod.DELETE, HttpMethod.POST):
        return _finding(entry, RuleId.PLURALISED_NODES, False, [])
    candidates = [n for n in uri.nodes if n.kind is NodeKind.LITERAL and n.words]
    if uri.nodes and uri.nodes[-1].kind is NodeKind.LITERAL and uri.nodes[-1].words:
        target = uri.nodes[-1]
    elif candidates:
        target = candidates[-1]
    else:
        return _finding(entry, RuleId.PLURALISED_NODES, False, [])
    position = uri.nodes.index(target)
    word = target.words[-1]
    plural = is_plural(word)
    if entry.method in (HttpMethod.PUT, HttpMethod.DELETE) and plural:
        return _finding(
            entry,
            RuleId.PLURALISED_NODES,
            True,
            [Evidence(f"{entry.method.value} on plural resource name {word!r}", position)],
        )
    if entry.method is HttpMethod.POST and not plural:
        return _finding(
            entry,
            RuleId.PLURALISED_NODES,
            True,
            [Evidence(f"POST on singular resource name {word!r}", position)],
        )
    return _finding(entry, RuleId.PLURALISED_NODES, False, [])


_CONFLICTING_CLASSES: dict[HttpMethod, frozenset[CrudClass]] = {
    HttpMethod.POST: frozenset({CrudClass.DELETE, CrudClass.UPDATE, CrudClass.READ}),
    HttpMethod.DELETE: frozenset({CrudClass.CREATE, CrudClass.UPDATE, CrudClass.READ}),
    HttpMethod.PUT: frozenset({CrudClass.CREATE, CrudClass.DELETE, CrudClass.READ}),
    HttpMethod.GET: frozenset({CrudClass.DELETE, CrudClass.UPDATE, CrudClass.CREATE}),
}


def detect_inconsistent_doc(
    entry: ApiEntry,
    uri: ResourceUri,
    lexicon: CrudLexicon,
    stopwords: frozenset[str] = frozenset(),
    acronyms=None,
) -> Finding:
    """Documentation action verbs that contradict the HTTP method (e.g.
    POST documented as deleting something). Verbs that merely restate a
    word of the URI itself are taken as describing the endpoint, not as a
    contradiction."""
    conflicts = _CONFLICTING_CLASSES.get(entry.method)
    if conflicts is None:
        return _finding(entry, RuleId.INCONSISTENT_DOCUMENTATION, False, [])
    doc = preprocess(entry.documentation, stopwords, acronyms)
    uri_words = {lemmatize(word) for node in uri.nodes for word in node.words}
    evidence: list[Evidence] = []
    for position, token in enumerate(doc.tokens):
        if token in uri_words:
            continue
        crud_class = lexicon.class_of(token)
        if crud_class is not None and crud_class in conflicts:
            evidence.append(
                Evidence(
                    f"documentation says {token!r} ({crud_class.value}) "
                    f"but method is {entry.method.value}",
                    position,
                )
            )
    return _finding(entry, RuleId.INCONSISTENT_DOCUMENTATION, bool(evidence), evidence)


# --------------------------------------------------------------------------
# hierarchy rule

def hierarchy_pairs() -> frozenset[tuple[str, str]]:
    """Curated (general, specific) containment pairs between lemmas."""
    data = resources.files("restlinguist.data").joinpath("hierarchy_pairs.txt").read_text("utf-8")
    pairs = set()
    for line in data.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        general, specific = line.split()
        pairs.add((general, specific))
    return frozenset(pairs)


_HIERARCHY: frozenset[tuple[str, str]] | None = None


def _hierarchy() -> frozenset[tuple[str, str]]:
    global _HIERARCHY
    if _HIERARCHY is None:
        _HIERARCHY = hierarchy_pairs()
    return _HIERARCHY


def detect_non_hierarchical(
    entry: ApiEntry,
    uri: ResourceUri,
    relations: frozenset[tuple[str, str]] | None = None,
) -> Finding:
    """Adjacent literal nodes with a known containment relation in reversed
    order (specific before general). Pairs without a recorded relation are
    not evidence."""
    if relations is None:
        relations = _hierarchy()
    heads: list[tuple[int, str]] = []
    for i, node in enumerate(uri.nodes):
        if node.kind is NodeKind.LITERAL and node.words:
            heads.append((i, lemmatize(node.words[-1])))
    evidence: list[Evidence] = []
    for (i, first), (_, second) in zip(heads, heads[1:]):
        if (second, first) in relations:
            evidence.append(
                Evidence(
                    f"{first!r} is contained in {second!r}; general name should come first",
                    i,
                )
            )
    return _finding(entry, RuleId.NON_HIERARCHICAL_NODES, bool(evidence), evidence)


# --------------------------------------------------------------------------
# semantic rules

def semantic_words(uri: ResourceUri, include_templates: bool = True) -> list[str]:
    """Unique, order-preserving lemmas of the URI's node words for semantic
    matching. Template-parameter words are included (a "device_id"
    parameter contributes "device"); words shorter than three characters
    are dropped."""
    words: list[str] = []
    seen: set[str] = set()
    for node in uri.nodes:
        if node.kind is NodeKind.TEMPLATE_PARAMETER and not include_templates:
            continue
        for word in node.words:
            lemma = lemmatize(word)
            if len(lemma) < MIN_SEMANTIC_WORD_LEN:
                continue
            if lemma not in seen:
                seen.add(lemma)
                words.append(lemma)
    return words


def detect_contextless(
    entry: ApiEntry,
    uri: ResourceUri,
    model: TopicModel,
    provider: SimilarityProvider,
    threshold: float = DEFAULT_THRESHOLD,
) -> Finding:
    """Node words that do not share a semantic context.

    Each node word is assigned the topics it fits by similarity threshold,
    plus its single best-scoring topic when the word is known to the
    similarity space at all (a known word always has a closest topic). The
    URI is contextless when some adjacent word pair shares no topic, or
    when no word fits any topic. Per-topic whole-URI averages are attached
    as diagnostics.
    """
    words = semantic_words(uri)
    topic_lists = model.topic_word_lists() if isinstance(model, TopicModel) else model
    if not words:
        return _finding(entry, RuleId.CONTEXTLESS_RESOURCE_NAMES, False, [])

    memberships = node_topic_memberships(words, topic_lists, provider, threshold)
    by_word: dict[str, dict[int, float]] = {w: {} for w in words}
    for m in memberships:
        by_word[m.node][m.topic_index] = m.score

    topic_sets: dict[str, set[int]] = {}
    for word in words:
        scores = by_word[word]
        fitting = {t for t, score in scores.items() if score > threshold}
        best_score = max(scores.values(), default=0.0)
        if not fitting and best_score > 0.0:
            # a word known to the similarity space belongs at least to its
            # closest topic
            best = min(t for t, score in scores.items() if score == best_score)
            fitting = {best}
        topic_sets[word] = fitting

    evidence: list[Evidence] = []
    unrelated = [w for w in words if not topic_sets[w]]
    for i in range(len(words) - 1):
        first, second = words[i], words[i + 1]
        if not topic_sets[first] & topic_sets[second]:
            evidence.append(
                Evidence(
                    f"adjacent words {first!r} (topics {sorted(topic_sets[first])}) and "
                    f"{second!r} (topics {sorted(topic_sets[second])}) share no topic",
                    i,
                )
            )
    if unrelated and evidence:
        evidence.append(Evidence("words fitting no topic: " + ", ".join(unrelated)))
    if not evidence and all(not topic_sets[w] for w in words):
        evidence.append(Evidence("no node word fits any topic"))

    diagnostics = [
        Evidence(
            "whole-URI average similarity per topic: "
            + ", ".join(
                f"topic {t}: {aggregate_node_topic_score(words, list(topic_words), provider):.4f}"
                for t, topic_words in enumerate(topic_lists)
                if topic_words
            )
        )
    ]
    if evidence:
        return _finding(entry, RuleId.CONTEXTLESS_RESOURCE_NAMES, True, evidence + diagnostics)
    return _finding(entry, RuleId.CONTEXTLESS_RESOURCE_NAMES, False, diagnostics)


def detect_non_pertinent_doc(
    entry: ApiEntry,
    uri: ResourceUri,
    provider: SimilarityProvider,
    threshold: float = DEFAULT_THRESHOLD,
    stopwords: frozenset[str] = frozenset(),
    acronyms=None,
) -> Finding:
    """Documentation unrelated to the URI's own resource names: the mean
    over literal node lemmas of their best similarity against any
    documentation token must reach the threshold."""
    if not entry.documentation.strip():
        return _finding(
            entry,
            RuleId.NON_PERTINENT_DOCUMENTATION,
            True,
            [Evidence("no documentation")],
        )
    words = semantic_words(uri, include_templates=False)
    if not words:
        return _finding(entry, RuleId.NON_PERTINENT_DOCUMENTATION, False, [])
    doc = preprocess(entry.documentation, stopwords, acronyms)
    if not doc.tokens:
        return _finding(
            entry,
            RuleId.NON_PERTINENT_DOCUMENTATION,
            True,
            [Evidence("documentation is all stop words")],
        )
    per_word = [
        (word, max(provider.similarity(word, token) for token in doc.tokens))
        for word in words
    ]
    score = sum(s for _, s in per_word) / len(per_word)
    if score >= threshold:
        return _finding(entry, RuleId.NON_PERTINENT_DOCUMENTATION, False, [])
    evidence = [
        Evidence(
            f"URI words are unrelated to the documentation "
            f"(mean best similarity {score:.4f} < {threshold})"
        )
    ]
    for i, (word, s) in enumerate(per_word):
        evidence.append(Evidence(f"node word {word!r}: best similarity {s:.4f}", i))
    return _finding(entry, RuleId.NON_PERTINENT_DOCUMENTATION, True, evidence)


# --------------------------------------------------------------------------
# batch runner

@dataclass(frozen=True)
class AnalysisOptions:
    """Knobs shared by the batch runner and the CLI."""

    rules: tuple[RuleId, ...] = ALL_RULES
    threshold: float = DEFAULT_THRESHOLD
    topics_k: int | None = None
    seed: int = DEFAULT_SEED
    iterations: int = DEFAULT_ITERATIONS
    alpha: float | None = None
    beta: float = 0.01
    crud_lexicon: CrudLexicon = field(default_factory=CrudLexicon.default)
    relations: frozenset[tuple[str, str]] | None = None
    provider: SimilarityProvider | None = None
    model: TopicModel | None = None
    workers: int = 1


@dataclass
class RunResult:
    """Findings plus per-rule wall time and any semantic-stage failures."""

    findings: list[Finding]
    elapsed: dict[RuleId, float]
    failures: dict[RuleId, str]

    @property
    def ok(self) -> bool:
        return not self.failures

    def antipattern_count(self) -> int:
        return sum(1 for f in self.findings if f.is_antipattern)


_SEMANTIC_RULES = frozenset({RuleId.CONTEXTLESS_RESOURCE_NAMES, RuleId.NON_PERTINENT_DOCUMENTATION})


def run_all(collection: ApiCollection, options: AnalysisOptions | None = None) -> RunResult:
    """Run the selected rules over every entry of a collection.

    Syntactic rules always run; when the semantic model cannot be built
    (e.g. a corpus with no usable vocabulary) the semantic rules are
    reported as failures and everything else still completes. Per-rule wall
    time is captured around each rule's whole batch.
    """
    if options is None:
        options = AnalysisOptions()
    if not options.rules:
        raise ValueError("at least one rule must be selected")

    stopwords = collection.stopwords or default_stopwords()
    parsed: list[tuple[ApiEntry, ResourceUri]] = [
        (entry, parse_uri(entry.uri)) for entry in collection.entries
    ]

    failures: dict[RuleId, str] = {}
    provider: SimilarityProvider | None = options.provider
    model: TopicModel | None = options.model
    if any(rule in _SEMANTIC_RULES for rule in options.rules):
        corpus = build_corpus(collection)
        if provider is None:
            provider = CooccurrenceSimilarity.from_corpus(corpus)
        if model is None and RuleId.CONTEXTLESS_RESOURCE_NAMES in options.rules:
            k = options.topics_k or choose_k(collection, len(corpus.vocabulary))
            try:
                model = train_lda(
                    corpus,
                    k,
                    seed=options.seed,
                    iterations=options.iterations,
                    alpha=options.alpha,
                    beta=options.beta,
                )
            except ValueError as exc:
                failures[RuleId.CONTEXTLESS_RESOURCE_NAMES] = str(exc)

    def rule_batch(rule: RuleId) -> tuple[RuleId, list[Finding], float]:
        start = time.perf_counter()
        findings: list[Finding] = []
        for entry, uri in parsed:
            if rule is RuleId.AMORPHOUS_URI:
                findings.append(detect_amorphous(entry, uri))
            elif rule is RuleId.UNVERSIONED_URI:
                findings.append(detect_unversioned(entry, uri))
            elif rule is RuleId.NON_STANDARD_URI:
                findings.append(detect_non_standard(entry, uri))
            elif rule is RuleId.CRUDY_URI:
                findings.append(detect_crudy(entry, uri, options.crud_lexicon))
            elif rule is RuleId.PLURALISED_NODES:
                findings.append(detect_pluralised(entry, uri))
            elif rule is RuleId.INCONSISTENT_DOCUMENTATION:
                findings.append(
                    detect_inconsistent_doc(
                        entry, uri, options.crud_lexicon, stopwords, collection.acronyms
                    )
                )
            elif rule is RuleId.NON_HIERARCHICAL_NODES:
                findings.append(detect_non_hierarchical(entry, uri, options.relations))
            elif rule is RuleId.NON_PERTINENT_DOCUMENTATION:
                findings.append(
                    detect_non_pertinent_doc(
                        entry, uri, provider, options.threshold, stopwords, collection.acronyms
                    )
                )
            elif rule is RuleId.CONTEXTLESS_RESOURCE_NAMES:
                findings.append(
                    detect_contextless(entry, uri, model, provider, options.threshold)
                )
        elapsed = time.perf_counter() - start
        return rule, [replace(f, elapsed=elapsed) for f in findings], elapsed

    runnable = [
        rule for rule in options.rules
        if rule not in failures
    ]
    results: dict[RuleId, tuple[list[Finding], float]] = {}
    if options.workers > 1:
        with ThreadPoolExecutor(max_workers=options.workers) as pool:
            for rule, findings, elapsed in pool.map(rule_batch, runnable):
                results[rule] = (findings, elapsed)
    else:
        for rule in runnable:
            rule_, findings, elapsed = rule_batch(rule)
            results[rule_] = (findings, elapsed)

    ordered: list[Finding] = []
    elapsed_by_rule: dict[RuleId, float] = {}
    for rule in options.rules:
        if rule in results:
            findings, elapsed = results[rule]
            ordered.extend(findings)
            elapsed_by_rule[rule] = elapsed
    return RunResult(findings=ordered, elapsed=elapsed_by_rule, failures=failures)
