"""Acceptance suite.

One test per release criterion; each prints a "criterion N ...: PASS/FAIL"
line (visible with -s, and on failures in the captured output).
"""

import functools
import itertools
import json
import random
import time

import numpy as np
import pytest

from restlinguist.detectors import (
    AnalysisOptions,
    detect_amorphous,
    detect_crudy,
    detect_inconsistent_doc,
    detect_non_hierarchical,
    detect_non_standard,
    detect_pluralised,
    detect_unversioned,
    run_all,
)
from restlinguist.io import ApiCollection, ApiEntry
from restlinguist.report import (
    ConfusionMatrix,
    Magnitude,
    cliffs_delta,
    fit_time_growth,
    macro_metrics,
    wilcoxon_rank_sum,
)
from restlinguist.rules import RuleId, Verdict
from restlinguist.semantics import build_corpus, train_lda
from restlinguist.textpipe import CrudClass, CrudLexicon, default_stopwords
from restlinguist.uri import HttpMethod, parse_uri, scan_nonstandard_chars

from conftest import FIXTURES

LEXICON = CrudLexicon.default()
STOPWORDS = default_stopwords()


def criterion(number, name):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                result = fn(*args, **kwargs)
            except BaseException:
                print(f"criterion {number} ({name}): FAIL")
                raise
            print(f"criterion {number} ({name}): PASS")
            return result

        return wrapper

    return decorate


# --------------------------------------------------------------------------
# criterion 1: reference URI/method/documentation triples classify as stated

AP = Verdict.ANTIPATTERN
P = Verdict.PATTERN

REFERENCE_TRIPLES = [
    ("www.exampleAlbum.com/NEW_Customer/image01.tiff/", "GET", "", RuleId.AMORPHOUS_URI, AP),
    ("www.example.com/customers/1234", "GET", "", RuleId.AMORPHOUS_URI, P),
    ("/v0/api/auth/shortcode/create", "POST", "", RuleId.CRUDY_URI, AP),
    ("/trials/sessions/search", "GET", "", RuleId.CRUDY_URI, AP),
    ("/bulk/devices/remove", "POST",
     "Delete multiple devices. Delete multiple devices, each request can contain a maximum of 512 kB",
     RuleId.INCONSISTENT_DOCUMENTATION, AP),
    ("/bulk/devices/remove", "POST",
     "Remove multiple devices. Remove multiple devices, each request can contain a maximum of 512 kB",
     RuleId.INCONSISTENT_DOCUMENTATION, P),
    ("/v0/api/clients/", "GET", "Create a client. An account token or server token may be used.",
     RuleId.INCONSISTENT_DOCUMENTATION, AP),
    ("api.example.com/1.1/resourceid/view", "GET", "", RuleId.UNVERSIONED_URI, P),
    ("api.example.com/resourceid/view", "GET", "", RuleId.UNVERSIONED_URI, AP),
    ("api.example.com/museum/louvre/réception/", "GET", "", RuleId.NON_STANDARD_URI, AP),
    ("api.example.com/museum/louvre/reception/", "GET", "", RuleId.NON_STANDARD_URI, P),
    ("/devices/[device id]", "GET", "", RuleId.NON_STANDARD_URI, AP),
    ("/things/THING_TOKEN/resources/$MAGIC_RESOURCE", "GET", "", RuleId.NON_STANDARD_URI, AP),
    ("www.example.com/team/players", "DELETE", "", RuleId.PLURALISED_NODES, AP),
    ("www.examples1.com/professors/faculty/university", "GET", "", RuleId.NON_HIERARCHICAL_NODES, AP),
    ("www.examples2.com/university/faculty/professors", "GET", "", RuleId.NON_HIERARCHICAL_NODES, P),
]


def _classify(entry, rule):
    uri = parse_uri(entry.uri)
    if rule is RuleId.AMORPHOUS_URI:
        return detect_amorphous(entry, uri)
    if rule is RuleId.CRUDY_URI:
        return detect_crudy(entry, uri, LEXICON)
    if rule is RuleId.INCONSISTENT_DOCUMENTATION:
        return detect_inconsistent_doc(entry, uri, LEXICON, STOPWORDS)
    if rule is RuleId.UNVERSIONED_URI:
        return detect_unversioned(entry, uri)
    if rule is RuleId.NON_STANDARD_URI:
        return detect_non_standard(entry, uri)
    if rule is RuleId.PLURALISED_NODES:
        return detect_pluralised(entry, uri)
    if rule is RuleId.NON_HIERARCHICAL_NODES:
        return detect_non_hierarchical(entry, uri)
    raise AssertionError(rule)


@criterion(1, "reference classification suite")
def test_criterion_1_reference_classifications():
    start = time.perf_counter()
    for i, (uri, method, doc, rule, expected) in enumerate(REFERENCE_TRIPLES, start=1):
        entry = ApiEntry(id=f"r{i}", uri=uri, method=HttpMethod.parse(method), documentation=doc)
        finding = _classify(entry, rule)
        assert finding.verdict is expected, (uri, rule, finding.verdict)
    assert time.perf_counter() - start < 1.0


# --------------------------------------------------------------------------
# criterion 2: aggregation reproduces the reference similarity averages

@criterion(2, "similarity aggregation oracle")
def test_criterion_2_aggregation_oracle(table_provider, table_topics, similarity_fixture):
    from restlinguist.semantics import aggregate_node_topic_score

    start = time.perf_counter()
    for key in ("uri1", "uri2"):
        expected = similarity_fixture["expected_averages"][key]
        for t in range(3):
            score = aggregate_node_topic_score(
                expected["nodes"], table_topics[t], table_provider
            )
            assert score == pytest.approx(expected[str(t)], abs=1e-4), (key, t)
    assert time.perf_counter() - start < 1.0


# --------------------------------------------------------------------------
# criterion 3: confusion-matrix metrics reproduce the reference table

# (tp, fp, fn, tn, accuracy %, mcc or None)
REFERENCE_MATRIX_ROWS = {
    RuleId.AMORPHOUS_URI: (1, 3, 27, 60, 67, -0.03),
    RuleId.CONTEXTLESS_RESOURCE_NAMES: (6, 5, 15, 65, 78, 0.28),
    RuleId.CRUDY_URI: (3, 0, 3, 85, 97, 0.69),
    RuleId.NON_HIERARCHICAL_NODES: (0, 0, 14, 77, 85, None),
    RuleId.PLURALISED_NODES: (25, 6, 5, 55, 88, 0.73),
    RuleId.NON_PERTINENT_DOCUMENTATION: (8, 50, 4, 29, 41, 0.02),
    RuleId.UNVERSIONED_URI: (67, 0, 0, 24, 100, 1.00),
    RuleId.INCONSISTENT_DOCUMENTATION: (19, 7, 8, 57, 84, 0.60),
    RuleId.NON_STANDARD_URI: (2, 0, 10, 79, 89, 0.38),
}


@criterion(3, "accuracy and MCC oracle")
def test_criterion_3_metrics_oracle():
    start = time.perf_counter()
    matrices = {}
    for rule, (tp, fp, fn, tn, accuracy_pct, mcc) in REFERENCE_MATRIX_ROWS.items():
        matrix = ConfusionMatrix(tp=tp, fp=fp, fn=fn, tn=tn)
        matrices[rule] = matrix
        assert matrix.accuracy * 100 == pytest.approx(accuracy_pct, abs=0.5), rule
        if mcc is None:
            assert matrix.mcc is None, rule
        else:
            assert matrix.mcc == pytest.approx(mcc, abs=0.01), rule
    macro_accuracy, macro_mcc = macro_metrics(matrices)
    assert macro_accuracy == pytest.approx(0.81, abs=0.01)
    assert macro_mcc == pytest.approx(0.46, abs=0.01)
    assert time.perf_counter() - start < 1.0


# --------------------------------------------------------------------------
# criterion 4: effect sizes and significance decisions on the 19-collection
# reference counts

@criterion(4, "statistics oracle")
def test_criterion_4_statistics_oracle():
    data = json.loads((FIXTURES / "survey_counts.json").read_text("utf-8"))
    start = time.perf_counter()
    significant = not_significant = 0
    for rule, expected in data["expected"].items():
        xs = data["counts"][rule]["antipattern"]
        ys = data["counts"][rule]["pattern"]
        assert len(xs) == len(ys) == 19
        delta, magnitude = cliffs_delta(xs, ys)
        assert delta == pytest.approx(expected["delta"], abs=1e-6), rule
        assert magnitude is Magnitude(expected["magnitude"]), rule
        p = wilcoxon_rank_sum(xs, ys)
        reference_decision = expected["p_reference"] < 0.05
        assert (p < 0.05) == reference_decision, (rule, p, expected["p_reference"])
        if reference_decision:
            significant += 1
        else:
            not_significant += 1
    assert significant == 7
    assert not_significant == 2
    assert time.perf_counter() - start < 1.0


# --------------------------------------------------------------------------
# synthetic corpus used by criteria 5 and 7

_SYLLABLES = ["ba", "de", "ki", "lo", "mu", "na", "po", "ra", "su", "ta", "ve", "zo"]


def _word_pool(size):
    pool = ["".join(p) for p in itertools.product(_SYLLABLES, repeat=2)]
    pool += ["".join(p) for p in itertools.product(_SYLLABLES, repeat=3)]
    return pool[:size]


def synthetic_collection(n_entries, n_endpoints, pool_size=1200, seed=12345):
    rng = random.Random(seed)
    pool = _word_pool(pool_size)
    endpoints = pool[:n_endpoints]
    methods = [HttpMethod.GET, HttpMethod.POST, HttpMethod.PUT, HttpMethod.DELETE]
    entries = []
    themes = max(1, pool_size // 120)
    for i in range(n_entries):
        endpoint = endpoints[i % n_endpoints]
        segment_words = rng.sample(pool, 2)
        uri = f"/{endpoint}/{segment_words[0]}/{segment_words[1]}"
        theme = i % themes
        slice_ = pool[theme * 120:(theme + 1) * 120] or pool
        doc = " ".join(rng.choice(slice_) for _ in range(8 + i % 5))
        entries.append(
            ApiEntry(id=f"e{i + 1}", uri=uri, method=methods[i % 4], documentation=doc)
        )
    return ApiCollection(name=f"synthetic-{n_entries}", entries=tuple(entries))


# --------------------------------------------------------------------------
# criterion 5: topic-model property suite

@criterion(5, "topic model properties")
def test_criterion_5_lda_properties():
    start = time.perf_counter()
    collection = synthetic_collection(200, 5, pool_size=600)
    corpus = build_corpus(collection)
    models = [train_lda(corpus, 5, seed=42, iterations=1000) for _ in range(3)]
    for model in models[1:]:
        assert model.topics == models[0].topics
        assert np.array_equal(model.word_topic, models[0].word_topic)
    sums = models[0].word_topic.sum(axis=1)
    assert np.all(np.abs(sums - 1.0) <= 1e-9)

    degenerate = ApiCollection(
        name="one-word",
        entries=(ApiEntry(id="e1", uri="/alpha", method=HttpMethod.GET,
                          documentation="alpha alpha alpha"),),
    )
    model = train_lda(build_corpus(degenerate), 1, seed=42, iterations=100)
    assert model.topics[0][0] == ("alpha", 1.0)
    assert time.perf_counter() - start < 30.0


# --------------------------------------------------------------------------
# criterion 6: syntactic detectors against naive independent oracles

_EXTS = {"json", "xml", "html", "htm", "tiff", "jpg", "jpeg", "png", "gif",
         "pdf", "txt", "csv", "zip"}
_ALLOWED = set(
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789._~-/?=&{}[]:"
)
_UPPER_DIGIT = set("ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789")


def _naive_segments(raw):
    path = raw.split("?", 1)[0]
    return [s for s in path.split("/") if s], path.endswith("/") and path != ""


def _naive_is_template(seg):
    if len(seg) >= 2 and seg[0] == "{" and seg[-1] == "}":
        return True
    if len(seg) >= 2 and seg[0] == "[" and seg[-1] == "]":
        return True
    core = seg[1:] if seg.startswith("$") else seg
    parts = core.split("_")
    if len(parts) >= 2 and all(p and all(c in _UPPER_DIGIT for c in p) for p in parts):
        return True
    low = seg.lower()
    return low.endswith("_id") or low.endswith("-id")


def _naive_amorphous(raw):
    segments, trailing = _naive_segments(raw)
    if trailing:
        return True
    for seg in segments:
        if not _naive_is_template(seg):
            for k, ch in enumerate(seg):
                if ch.isupper() and (k == 0 or not seg[k - 1].islower()):
                    return True
            if "_" in seg:
                return True
        if "." in seg:
            name, _, ext = seg.rpartition(".")
            if name and ext and ext.lower() in _EXTS:
                return True
    return False


def _digit_groups(s, min_groups):
    groups = s.split(".")
    return len(groups) >= min_groups and all(g.isdigit() for g in groups)


def _naive_versioned(raw):
    segments, _ = _naive_segments(raw)
    for i, seg in enumerate(segments):
        if seg[:1] in ("v", "V") and _digit_groups(seg[1:], 1):
            return True
        if _digit_groups(seg, 2):
            return True
        if seg.lower() == "version" and i + 1 < len(segments) and _digit_groups(segments[i + 1], 1):
            return True
    return False


def _naive_scan(raw):
    issues = []
    for i, ch in enumerate(raw):
        if ch == " ":
            issues.append((i, " ", "blank_space"))
        elif ch in _ALLOWED:
            if ch == "-" and raw[i + 1:i + 2] == "-":
                issues.append((i, "--", "double_hyphen"))
        elif ch.isalpha() and ord(ch) > 127:
            issues.append((i, ch, "non_ascii_letter"))
        else:
            issues.append((i, ch, "unknown_character"))
    return issues


_SEGMENT_POOL = [
    "customers", "Devices", "NEW_Customer", "imAge01", "image01.tiff",
    "file.json", "report.pdf", "archive.unknown", "v1", "v2.0", "1.1", "12",
    "version", "{deviceId}", "[device id]", "THING_TOKEN", "$MAGIC_RESOURCE",
    "device_id", "réception", "naïve", "a--b", "a b", "x#y", "café.html",
    "UPPER", "mixedCase", "under_score", "semi:colon", "tilde~x", "plain",
    "team", "players", "a!b", "percent%20", "star*name", "at@host",
    "équipe", "x", "ALLCAPS", "trailing.", ".leading", "1.1.1", "v1.2.3",
]


@criterion(6, "syntactic detectors match naive oracles")
def test_criterion_6_brute_force_equivalence():
    rng = random.Random(99)
    start = time.perf_counter()
    for case in range(10_000):
        n = rng.randint(0, 5)
        parts = [rng.choice(_SEGMENT_POOL) for _ in range(n)]
        raw = "/" + "/".join(parts)
        if rng.random() < 0.3 and parts:
            raw += "/"
        if rng.random() < 0.2:
            raw += "?id=123"
        entry = ApiEntry(id="e1", uri=raw, method=HttpMethod.GET)
        uri = parse_uri(raw)

        amorphous = detect_amorphous(entry, uri).verdict is AP
        assert amorphous == _naive_amorphous(raw), raw

        versioned = detect_unversioned(entry, uri).verdict is P
        assert versioned == _naive_versioned(raw), raw

        issues = [(i.position, i.char, i.category.value) for i in scan_nonstandard_chars(uri)]
        assert issues == _naive_scan(raw), raw
    assert time.perf_counter() - start < 10.0


# --------------------------------------------------------------------------
# criterion 7: scale check on a 1,102-entry synthetic collection

TOTAL_RUNTIME_BUDGET_SEC = 1435.7  # reference budget for the full nine-rule run
PER_RULE_BUDGET_SEC = 60.0         # "order of seconds" per rule


@criterion(7, "scale and growth check")
def test_criterion_7_scale():
    # 150 distinct endpoints: subsample prefixes then expose more endpoints
    # (hence more topics and pairwise comparisons) as they grow, like real
    # collections do
    collection = synthetic_collection(1102, 150)
    options = AnalysisOptions()
    start = time.perf_counter()
    result = run_all(collection, options)
    total = time.perf_counter() - start
    assert result.ok, result.failures
    assert len(result.findings) == 9 * 1102 == 9918
    assert total < TOTAL_RUNTIME_BUDGET_SEC
    for rule, elapsed in result.elapsed.items():
        assert elapsed < PER_RULE_BUDGET_SEC, (rule, elapsed)

    contextless_only = AnalysisOptions(rules=(RuleId.CONTEXTLESS_RESOURCE_NAMES,))
    sizes = [25, 50, 100, 200]
    times = []
    for size in sizes:
        sub = ApiCollection(name=f"sub-{size}", entries=collection.entries[:size])
        best = min(_timed_run(sub, contextless_only) for _ in range(2))
        times.append(best)
    a, _, _ = fit_time_growth([float(s) for s in sizes], times)
    assert a >= 0.0, (sizes, times, a)


def _timed_run(collection, options):
    start = time.perf_counter()
    run_all(collection, options)
    return time.perf_counter() - start


# --------------------------------------------------------------------------
# criterion 8: documentation/method contradiction truth table

@criterion(8, "method/token-class truth table")
def test_criterion_8_truth_table():
    tokens = {
        CrudClass.CREATE: "create",
        CrudClass.READ: "fetch",
        CrudClass.UPDATE: "modify",
        CrudClass.DELETE: "erase",
    }
    conflicting = {
        HttpMethod.POST: {CrudClass.DELETE, CrudClass.UPDATE, CrudClass.READ},
        HttpMethod.DELETE: {CrudClass.CREATE, CrudClass.UPDATE, CrudClass.READ},
        HttpMethod.PUT: {CrudClass.CREATE, CrudClass.DELETE, CrudClass.READ},
        HttpMethod.GET: {CrudClass.DELETE, CrudClass.UPDATE, CrudClass.CREATE},
    }
    antipattern_cells = pattern_cells = 0
    for method, crud_class in itertools.product(conflicting, CrudClass):
        entry = ApiEntry(
            id="e1", uri="/widgets", method=method,
            documentation=f"Will {tokens[crud_class]} the widget data.",
        )
        finding = detect_inconsistent_doc(entry, parse_uri(entry.uri), LEXICON, STOPWORDS)
        expected = AP if crud_class in conflicting[method] else P
        assert finding.verdict is expected, (method, crud_class)
        if expected is AP:
            antipattern_cells += 1
        else:
            pattern_cells += 1
    assert antipattern_cells == 12
    assert pattern_cells == 4
