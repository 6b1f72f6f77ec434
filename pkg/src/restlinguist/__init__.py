"""Linter for the linguistic design quality of REST API endpoint collections.

Nine pattern/antipattern rules over URIs, HTTP methods and documentation:
syntactic checks (tidiness, versioning, character standards), lexicon
checks (CRUD terms, plural agreement, documentation consistency, node
hierarchy) and semantic checks backed by an LDA topic model with
second-order distributional similarity.
"""

from .detectors import (
    AnalysisOptions,
    Evidence,
    Finding,
    RunResult,
    run_all,
)
from .io import (
    AcronymDictionary,
    ApiCollection,
    ApiEntry,
    OracleLabels,
    ParseError,
    ValidationError,
    load_acronyms,
    load_collection,
    load_collections,
    load_oracle,
    load_stopwords,
)
from .report import (
    ApiSummary,
    ConfusionMatrix,
    Magnitude,
    StatTestResult,
    cliffs_delta,
    evaluate,
    export,
    fit_time_growth,
    summarize,
    wilcoxon_rank_sum,
)
from .rules import RuleId, Verdict
from .semantics import (
    Corpus,
    TopicModel,
    build_corpus,
    choose_k,
    train_lda,
)
from .uri import HttpMethod, ResourceUri, UriNode, parse_uri

__version__ = "0.1.0"

__all__ = [
    "AnalysisOptions",
    "AcronymDictionary",
    "ApiCollection",
    "ApiEntry",
    "ApiSummary",
    "ConfusionMatrix",
    "Corpus",
    "Evidence",
    "Finding",
    "HttpMethod",
    "Magnitude",
    "OracleLabels",
    "ParseError",
    "ResourceUri",
    "RuleId",
    "RunResult",
    "StatTestResult",
    "TopicModel",
    "UriNode",
    "ValidationError",
    "Verdict",
    "build_corpus",
    "choose_k",
    "cliffs_delta",
    "evaluate",
    "export",
    "fit_time_growth",
    "load_acronyms",
    "load_collection",
    "load_collections",
    "load_oracle",
    "load_stopwords",
    "parse_uri",
    "run_all",
    "summarize",
    "train_lda",
    "wilcoxon_rank_sum",
    "__version__",
]
