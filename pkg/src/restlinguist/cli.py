"""Command-line front end.

Subcommands: ``analyze`` (lint a collection file), ``eval`` (score findings
against an oracle), ``topics`` (train and export the topic model) and
``bench`` (timing study over subsampled collections).

Exit codes are the machine contract: 0 success, 1 input file unreadable or
malformed, 2 configuration or oracle error, 3 antipatterns found while
--fail-on-antipattern is set, 4 semantic-model failure (syntactic results
are still written).

Output on stdout is canonical: key-sorted JSON, newline-terminated, byte
identical across reruns with the same flags and inputs. Wall-clock timings
vary between runs, so they are reported as 0.0 unless --timings is given.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from dataclasses import dataclass, replace

from . import report as report_mod
from .detectors import ALL_RULES, AnalysisOptions, run_all
from .io import (
    ApiCollection,
    ParseError,
    ValidationError,
    load_acronyms,
    load_collection,
    load_collections,
    load_oracle,
    load_stopwords,
)
from .rules import RuleId
from .semantics import (
    DEFAULT_ITERATIONS,
    DEFAULT_SEED,
    DEFAULT_THRESHOLD,
    WordVectorSimilarity,
    build_corpus,
    choose_k,
    train_lda,
)
from .textpipe import CrudLexicon

__all__ = ["main", "build_parser", "Config"]

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_CONFIG_ERROR = 2
EXIT_ANTIPATTERNS = 3
EXIT_SEMANTIC_FAILURE = 4

SEED_ENV_VAR = "REST_LING_SEED"


@dataclass(frozen=True)
class Config:
    """Resolved CLI configuration."""

    threshold: float = DEFAULT_THRESHOLD
    topics_k: int | None = None
    seed: int = DEFAULT_SEED
    iterations: int = DEFAULT_ITERATIONS
    alpha: float | None = None
    beta: float = 0.01
    stopwords_path: str | None = None
    acronyms_path: str | None = None
    lexicon_path: str | None = None
    vectors_path: str | None = None
    rules: tuple[RuleId, ...] = ALL_RULES
    output_format: str = "json"
    out: str | None = None
    fail_on_antipattern: bool = False
    timings: bool = False
    workers: int = 1

    def validate(self) -> None:
        if not (0.0 < self.threshold < 1.0):
            raise ValidationError(f"threshold must be in (0, 1), got {self.threshold}")
        if self.iterations < 1:
            raise ValidationError("iterations must be at least 1")
        if not self.rules:
            raise ValidationError("at least one rule must be selected")
        if self.output_format not in ("json", "csv", "text"):
            raise ValidationError(f"unknown output format {self.output_format!r}")
        if self.topics_k is not None and self.topics_k < 1:
            raise ValidationError("topics-k must be at least 1")
        if self.alpha is not None and self.alpha <= 0:
            raise ValidationError("alpha must be positive")
        if self.beta <= 0:
            raise ValidationError("beta must be positive")
        if self.workers < 1:
            raise ValidationError("workers must be at least 1")


def _resolve_seed(arg_seed: int | None) -> int:
    if arg_seed is not None:
        return arg_seed
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValidationError(f"{SEED_ENV_VAR} must be an integer, got {env!r}") from None
    return DEFAULT_SEED


def _parse_rules(raw: str | None) -> tuple[RuleId, ...]:
    if raw is None:
        return ALL_RULES
    rules: list[RuleId] = []
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            rule = RuleId.parse(part)
        except ValueError as exc:
            raise ValidationError(str(exc)) from None
        if rule not in rules:
            rules.append(rule)
    if not rules:
        raise ValidationError("rule list must not be empty")
    return tuple(rules)


def config_from_args(args: argparse.Namespace) -> Config:
    config = Config(
        threshold=args.threshold,
        topics_k=args.topics_k,
        seed=_resolve_seed(args.seed),
        iterations=args.iterations,
        alpha=args.alpha,
        beta=args.beta,
        stopwords_path=args.stopwords,
        acronyms_path=args.acronyms,
        lexicon_path=args.lexicon,
        vectors_path=args.vectors,
        rules=_parse_rules(args.rules),
        output_format=args.format,
        out=args.out,
        fail_on_antipattern=getattr(args, "fail_on_antipattern", False),
        timings=getattr(args, "timings", False),
        workers=args.workers,
    )
    config.validate()
    return config


def _analysis_options(config: Config) -> AnalysisOptions:
    lexicon = (
        CrudLexicon.from_json_file(config.lexicon_path)
        if config.lexicon_path
        else CrudLexicon.default()
    )
    provider = (
        WordVectorSimilarity.from_file(config.vectors_path)
        if config.vectors_path
        else None
    )
    return AnalysisOptions(
        rules=config.rules,
        threshold=config.threshold,
        topics_k=config.topics_k,
        seed=config.seed,
        iterations=config.iterations,
        alpha=config.alpha,
        beta=config.beta,
        crud_lexicon=lexicon,
        provider=provider,
        workers=config.workers,
    )


def _load_lexicons(config: Config):
    acronyms = load_acronyms(config.acronyms_path) if config.acronyms_path else None
    stopwords = load_stopwords(config.stopwords_path) if config.stopwords_path else None
    return acronyms, stopwords


def _write_output(data: bytes, out: str | None) -> None:
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(out, "wb") as fh:
            fh.write(data)


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        config = config_from_args(args)
        options = _analysis_options(config)
        acronyms, stopwords = _load_lexicons(config)
    except (ValidationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    try:
        collections = load_collections(args.collection)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    reports = []
    failures: dict[str, dict[str, str]] = {}
    antipatterns = 0
    for collection in collections:
        collection = collection.with_lexicons(acronyms=acronyms, stopwords=stopwords)
        result = run_all(collection, options)
        antipatterns += result.antipattern_count()
        if result.failures:
            failures[collection.name] = {
                rule.value: message for rule, message in result.failures.items()
            }
        summary = report_mod.summarize(result, collection)
        if config.output_format == "json":
            reports.append(
                report_mod.report_dict(
                    summary, result.findings, include_timings=config.timings
                )
            )
        else:
            reports.append(
                report_mod.export(
                    summary,
                    result.findings,
                    config.output_format,
                    include_timings=config.timings,
                )
            )

    if config.output_format == "json":
        payload = reports[0] if len(reports) == 1 else {"apis": reports}
        _write_output(report_mod.canonical_json(payload), config.out)
    else:
        _write_output(b"".join(reports), config.out)

    for name, failed in failures.items():
        for rule, message in failed.items():
            print(f"warning: {name}: {rule}: {message}", file=sys.stderr)
    if failures:
        return EXIT_SEMANTIC_FAILURE
    if config.fail_on_antipattern and antipatterns > 0:
        return EXIT_ANTIPATTERNS
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    try:
        config = config_from_args(args)
        options = _analysis_options(config)
        acronyms, stopwords = _load_lexicons(config)
    except (ValidationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    try:
        collection = load_collection(args.collection)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    try:
        oracle = load_oracle(args.oracle)
        collection = collection.with_lexicons(acronyms=acronyms, stopwords=stopwords)
        oracle.validate_against(collection)
    except (ValidationError, OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    result = run_all(collection, options)
    matrices = report_mod.evaluate(result.findings, oracle)
    payload = report_mod.evaluation_to_dict(matrices)
    _write_output(report_mod.canonical_json(payload), config.out)
    if result.failures:
        for rule, message in result.failures.items():
            print(f"warning: {collection.name}: {rule.value}: {message}", file=sys.stderr)
        return EXIT_SEMANTIC_FAILURE
    return EXIT_OK


def cmd_topics(args: argparse.Namespace) -> int:
    try:
        config = config_from_args(args)
        acronyms, stopwords = _load_lexicons(config)
    except (ValidationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    try:
        collection = load_collection(args.collection)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    collection = collection.with_lexicons(acronyms=acronyms, stopwords=stopwords)

    corpus = build_corpus(collection)
    k = config.topics_k or choose_k(collection, len(corpus.vocabulary))
    try:
        model = train_lda(
            corpus, k, seed=config.seed, iterations=config.iterations,
            alpha=config.alpha, beta=config.beta,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC_FAILURE
    _write_output(model.to_json().encode("utf-8"), config.out)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        config = config_from_args(args)
        options = _analysis_options(config)
        acronyms, stopwords = _load_lexicons(config)
        sizes = [int(s) for s in args.sizes.split(",")] if args.sizes else []
        if not sizes or any(s < 1 for s in sizes):
            raise ValidationError("--sizes must be a comma-separated list of positive integers")
    except (ValidationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    try:
        collection = load_collection(args.collection)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    collection = collection.with_lexicons(acronyms=acronyms, stopwords=stopwords)

    rng = random.Random(config.seed)
    timings: list[dict[str, object]] = []
    per_rule_times: dict[RuleId, list[tuple[int, float]]] = {r: [] for r in config.rules}
    for size in sizes:
        sampled = [rng.choice(collection.entries) for _ in range(size)]
        entries = tuple(replace(entry, id=f"e{i + 1}") for i, entry in enumerate(sampled))
        sub = replace(collection, entries=entries)
        result = run_all(sub, options)
        for rule in config.rules:
            if rule in result.elapsed:
                elapsed = result.elapsed[rule]
                per_rule_times[rule].append((size, elapsed))
                timings.append(
                    {"rule_id": rule.value, "size": size, "elapsed_sec": elapsed}
                )

    fits: dict[str, dict[str, float]] = {}
    averages: dict[str, float] = {}
    for rule, measurements in per_rule_times.items():
        if not measurements:
            continue
        times = [t for _, t in measurements]
        averages[rule.value] = sum(times) / len(times)
        if len({s for s, _ in measurements}) >= 3:
            a, b, c = report_mod.fit_time_growth(
                [float(s) for s, _ in measurements], times
            )
            fits[rule.value] = {"a": a, "b": b, "c": c}

    if config.output_format == "csv":
        lines = ["rule_id,size,elapsed_sec"]
        lines += [f"{t['rule_id']},{t['size']},{t['elapsed_sec']:.6f}" for t in timings]
        _write_output(("\n".join(lines) + "\n").encode("utf-8"), config.out)
    else:
        payload = {
            "sizes": sizes,
            "timings": timings,
            "fit": fits,
            "average_sec": averages,
        }
        _write_output(report_mod.canonical_json(payload), config.out)
    return EXIT_OK


def _add_common_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD,
                        help="similarity threshold in (0,1) for the semantic rules")
    parser.add_argument("--topics-k", type=int, default=None, dest="topics_k",
                        help="override the topic count (default: distinct endpoints)")
    parser.add_argument("--seed", type=int, default=None,
                        help=f"RNG seed (falls back to ${SEED_ENV_VAR}, then {DEFAULT_SEED})")
    parser.add_argument("--iterations", type=int, default=DEFAULT_ITERATIONS,
                        help="Gibbs sampling iterations")
    parser.add_argument("--alpha", type=float, default=None,
                        help="symmetric document-topic prior (default: 50/k)")
    parser.add_argument("--beta", type=float, default=0.01,
                        help="symmetric topic-word prior")
    parser.add_argument("--stopwords", default=None, help="stop-word file (one word per line)")
    parser.add_argument("--acronyms", default=None, help="acronym file (acronym<TAB>expansion)")
    parser.add_argument("--lexicon", default=None, help="CRUD lexicon override JSON file")
    parser.add_argument("--vectors", default=None, help="pre-computed word-vector file")
    parser.add_argument("--rules", default=None,
                        help="comma-separated subset of rule ids (default: all nine)")
    parser.add_argument("--format", default="json", choices=["json", "csv", "text"],
                        help="output format")
    parser.add_argument("--out", default=None, help="write output to a file instead of stdout")
    parser.add_argument("--timings", action="store_true",
                        help="include real wall-clock timings (non-deterministic output)")
    parser.add_argument("--workers", type=int, default=1,
                        help="run rule batches in this many threads")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="restlinguist",
        description="Lint the linguistic design quality of REST API endpoint collections.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="run the lint rules over a collection file")
    p_analyze.add_argument("collection", help="collection JSON file")
    p_analyze.add_argument("--fail-on-antipattern", action="store_true",
                           dest="fail_on_antipattern",
                           help="exit 3 when any antipattern verdict exists")
    _add_common_options(p_analyze)
    p_analyze.set_defaults(func=cmd_analyze)

    p_eval = sub.add_parser("eval", help="score findings against an oracle label file")
    p_eval.add_argument("collection", help="collection JSON file (single API)")
    p_eval.add_argument("oracle", help="oracle JSON file")
    _add_common_options(p_eval)
    p_eval.set_defaults(func=cmd_eval)

    p_topics = sub.add_parser("topics", help="train and export the topic model")
    p_topics.add_argument("collection", help="collection JSON file (single API)")
    _add_common_options(p_topics)
    p_topics.set_defaults(func=cmd_topics)

    p_bench = sub.add_parser("bench", help="measure per-rule detection times over subsamples")
    p_bench.add_argument("collection", help="collection JSON file (single API)")
    p_bench.add_argument("--sizes", default=None,
                         help="comma-separated subsample sizes, e.g. 10,20,40")
    _add_common_options(p_bench)
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
