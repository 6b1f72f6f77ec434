"""Aggregation, evaluation metrics, statistics and report export.

Summaries mirror the rule engine's per-collection counts; evaluation
scores findings against human oracle labels (antipattern is the positive
class); the statistics compare per-collection antipattern and pattern
count vectors with a two-tailed rank-sum test and Cliff's delta effect
size.
"""

from __future__ import annotations

import csv
import enum
import io as _stdlib_io
import json
import math
from dataclasses import dataclass

import numpy as np

from .detectors import Finding, RunResult
from .io import ApiCollection, OracleLabels
from .rules import RuleId, Verdict

__all__ = [
    "ApiSummary",
    "RuleSummary",
    "ConfusionMatrix",
    "Magnitude",
    "StatTestResult",
    "summarize",
    "evaluate",
    "macro_metrics",
    "evaluation_to_dict",
    "wilcoxon_rank_sum",
    "cliffs_delta",
    "compare_samples",
    "fit_time_growth",
    "export",
]


@dataclass(frozen=True)
class RuleSummary:
    antipattern: int
    pattern: int
    pct_antipattern: float
    elapsed_sec: float


@dataclass(frozen=True)
class ApiSummary:
    """Per-rule verdict counts for one collection."""

    api: str
    total_entries: int
    rules: dict[RuleId, RuleSummary]

    def to_dict(self, include_timings: bool = True) -> dict:
        return {
            "api": self.api,
            "total_entries": self.total_entries,
            "rules": {
                rule.value: {
                    "antipattern": rs.antipattern,
                    "pattern": rs.pattern,
                    "pct_antipattern": rs.pct_antipattern,
                    "elapsed_sec": rs.elapsed_sec if include_timings else 0.0,
                }
                for rule, rs in self.rules.items()
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ApiSummary":
        rules = {
            RuleId.parse(rule): RuleSummary(
                antipattern=block["antipattern"],
                pattern=block["pattern"],
                pct_antipattern=block["pct_antipattern"],
                elapsed_sec=block.get("elapsed_sec", 0.0),
            )
            for rule, block in data["rules"].items()
        }
        return cls(api=data["api"], total_entries=data["total_entries"], rules=rules)


def summarize(result: RunResult, collection: ApiCollection) -> ApiSummary:
    """Count verdicts per rule; percentages are rounded to two decimals."""
    known = set(collection.entry_ids())
    for finding in result.findings:
        if finding.entry_id not in known:
            raise ValueError(
                f"finding references unknown entry id {finding.entry_id!r}"
            )
    total = len(collection.entries)
    rules: dict[RuleId, RuleSummary] = {}
    by_rule: dict[RuleId, list[Finding]] = {}
    for finding in result.findings:
        by_rule.setdefault(finding.rule, []).append(finding)
    for rule, findings in by_rule.items():
        anti = sum(1 for f in findings if f.verdict is Verdict.ANTIPATTERN)
        pattern = len(findings) - anti
        pct = round(100.0 * anti / total, 2) if total else 0.0
        rules[rule] = RuleSummary(
            antipattern=anti,
            pattern=pattern,
            pct_antipattern=pct,
            elapsed_sec=result.elapsed.get(rule, 0.0),
        )
    return ApiSummary(api=collection.name, total_entries=total, rules=rules)


# --------------------------------------------------------------------------
# evaluation against an oracle

@dataclass(frozen=True)
class ConfusionMatrix:
    """Binary confusion counts with antipattern as the positive class."""

    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    @property
    def accuracy(self) -> float | None:
        if self.total == 0:
            return None
        return (self.tp + self.tn) / self.total

    @property
    def mcc(self) -> float | None:
        """Matthews correlation coefficient; None when any marginal sum is
        zero (the coefficient is undefined there)."""
        marginals = (
            (self.tp + self.fp),
            (self.tp + self.fn),
            (self.tn + self.fp),
            (self.tn + self.fn),
        )
        if any(m == 0 for m in marginals):
            return None
        numerator = self.tp * self.tn - self.fp * self.fn
        denominator = math.sqrt(math.prod(float(m) for m in marginals))
        return numerator / denominator


def evaluate(findings: list[Finding], oracle: OracleLabels) -> dict[RuleId, ConfusionMatrix]:
    """Score findings against the oracle; only labelled (entry, rule) pairs
    are counted."""
    labels = oracle.as_dict()
    predicted = {(f.entry_id, f.rule): f.verdict for f in findings}
    counts: dict[RuleId, dict[str, int]] = {}
    for (entry_id, rule), actual in labels.items():
        verdict = predicted.get((entry_id, rule))
        if verdict is None:
            continue
        cell = counts.setdefault(rule, {"tp": 0, "fp": 0, "fn": 0, "tn": 0})
        if verdict is Verdict.ANTIPATTERN and actual is Verdict.ANTIPATTERN:
            cell["tp"] += 1
        elif verdict is Verdict.ANTIPATTERN and actual is Verdict.PATTERN:
            cell["fp"] += 1
        elif verdict is Verdict.PATTERN and actual is Verdict.ANTIPATTERN:
            cell["fn"] += 1
        else:
            cell["tn"] += 1
    return {rule: ConfusionMatrix(**cell) for rule, cell in counts.items()}


def macro_metrics(matrices: dict[RuleId, ConfusionMatrix]) -> tuple[float | None, float | None]:
    """Macro-averaged (accuracy, MCC) across rules; rules with undefined
    MCC are excluded from the MCC mean, and (None, None) is returned for an
    empty evaluation."""
    accuracies = [m.accuracy for m in matrices.values() if m.accuracy is not None]
    mccs = [m.mcc for m in matrices.values() if m.mcc is not None]
    macro_accuracy = sum(accuracies) / len(accuracies) if accuracies else None
    macro_mcc = sum(mccs) / len(mccs) if mccs else None
    return macro_accuracy, macro_mcc


def evaluation_to_dict(matrices: dict[RuleId, ConfusionMatrix]) -> dict:
    macro_accuracy, macro_mcc = macro_metrics(matrices)
    out: dict[str, object] = {}
    for rule, matrix in sorted(matrices.items(), key=lambda kv: kv[0].value):
        out[rule.value] = {
            "tp": matrix.tp,
            "fp": matrix.fp,
            "fn": matrix.fn,
            "tn": matrix.tn,
            "accuracy": matrix.accuracy,
            "mcc": matrix.mcc,
        }
    out["macro"] = {"accuracy": macro_accuracy, "mcc": macro_mcc}
    return out


# --------------------------------------------------------------------------
# statistics

class Magnitude(enum.Enum):
    NEGLIGIBLE = "negligible"
    SMALL = "small"
    MEDIUM = "medium"
    LARGE = "large"


@dataclass(frozen=True)
class StatTestResult:
    p_value: float
    delta: float
    magnitude: Magnitude


def wilcoxon_rank_sum(xs: list[float], ys: list[float]) -> float:
    """Two-tailed rank-sum p-value via the normal approximation with tie
    and continuity corrections. Identical pooled samples give 1.0."""
    if not xs or not ys:
        raise ValueError("both samples must be non-empty")
    pooled = sorted(list(xs) + list(ys))
    n1, n2 = len(xs), len(ys)
    n = n1 + n2
    rank_of: dict[float, float] = {}
    tie_term = 0.0
    i = 0
    while i < n:
        j = i
        while j < n and pooled[j] == pooled[i]:
            j += 1
        size = j - i
        rank_of[pooled[i]] = (i + 1 + j) / 2.0
        tie_term += size**3 - size
        i = j
    w = sum(rank_of[x] for x in xs)
    mean = n1 * (n + 1) / 2.0
    variance = n1 * n2 / 12.0 * ((n + 1) - tie_term / (n * (n - 1)))
    if variance <= 0.0:
        return 1.0
    diff = w - mean
    correction = 0.5 if diff > 0 else -0.5 if diff < 0 else 0.0
    z = (diff - correction) / math.sqrt(variance)
    p = math.erfc(abs(z) / math.sqrt(2.0))
    return min(max(p, 5e-324), 1.0)


def _magnitude(delta: float) -> Magnitude:
    size = abs(delta)
    if size < 0.147:
        return Magnitude.NEGLIGIBLE
    if size < 0.33:
        return Magnitude.SMALL
    if size < 0.474:
        return Magnitude.MEDIUM
    return Magnitude.LARGE


def cliffs_delta(xs: list[float], ys: list[float]) -> tuple[float, Magnitude]:
    """Cliff's delta effect size in [-1, 1] with its magnitude label."""
    if not xs or not ys:
        raise ValueError("both samples must be non-empty")
    greater = less = 0
    for x in xs:
        for y in ys:
            if x > y:
                greater += 1
            elif x < y:
                less += 1
    delta = (greater - less) / (len(xs) * len(ys))
    return delta, _magnitude(delta)


def compare_samples(xs: list[float], ys: list[float]) -> StatTestResult:
    delta, magnitude = cliffs_delta(xs, ys)
    return StatTestResult(p_value=wilcoxon_rank_sum(xs, ys), delta=delta, magnitude=magnitude)


def fit_time_growth(sizes: list[float], times: list[float]) -> tuple[float, float, float]:
    """Least-squares quadratic fit of detection time against input size;
    returns (a, b, c) for y = ax^2 + bx + c."""
    if len(sizes) != len(times):
        raise ValueError("sizes and times must have equal length")
    if len(set(sizes)) < 3:
        raise ValueError("need at least 3 distinct sizes for a quadratic fit")
    a, b, c = np.polyfit(np.asarray(sizes, float), np.asarray(times, float), 2)
    return float(a), float(b), float(c)


# --------------------------------------------------------------------------
# export

def findings_to_rows(findings: list[Finding]) -> list[dict[str, str]]:
    return [
        {
            "entry_id": f.entry_id,
            "rule_id": f.rule.value,
            "verdict": f.verdict.value,
            "evidence": "; ".join(str(e) for e in f.evidence),
        }
        for f in findings
    ]


def report_dict(
    summary: ApiSummary,
    findings: list[Finding],
    include_timings: bool = True,
) -> dict:
    data = summary.to_dict(include_timings=include_timings)
    data["findings"] = findings_to_rows(findings)
    return data


def canonical_json(data: object) -> bytes:
    return (json.dumps(data, sort_keys=True, ensure_ascii=False) + "\n").encode("utf-8")


def _findings_csv(findings: list[Finding]) -> bytes:
    buffer = _stdlib_io.StringIO()
    writer = csv.DictWriter(
        buffer,
        fieldnames=["entry_id", "rule_id", "verdict", "evidence"],
        lineterminator="\n",
    )
    writer.writeheader()
    for row in findings_to_rows(findings):
        writer.writerow(row)
    return buffer.getvalue().encode("utf-8")


def _summary_text(summary: ApiSummary) -> bytes:
    lines = [f"API: {summary.api}  (entries: {summary.total_entries})"]
    header = f"{'rule':<32}{'antipattern':>12}{'pattern':>10}{'% anti':>9}{'sec':>10}"
    lines.append(header)
    lines.append("-" * len(header))
    for rule in RuleId:
        if rule not in summary.rules:
            continue
        rs = summary.rules[rule]
        lines.append(
            f"{rule.value:<32}{rs.antipattern:>12}{rs.pattern:>10}"
            f"{rs.pct_antipattern:>9.2f}{rs.elapsed_sec:>10.3f}"
        )
    return ("\n".join(lines) + "\n").encode("utf-8")


def export(
    summary: ApiSummary,
    findings: list[Finding],
    fmt: str = "json",
    include_timings: bool = True,
) -> bytes:
    """Render a report as canonical JSON, flat CSV (one finding per row) or
    a human-readable table."""
    if fmt == "json":
        return canonical_json(report_dict(summary, findings, include_timings))
    if fmt == "csv":
        return _findings_csv(findings)
    if fmt == "text":
        return _summary_text(summary)
    raise ValueError(f"unknown format {fmt!r} (expected json, csv or text)")
