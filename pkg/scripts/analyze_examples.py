#!/usr/bin/env python3
"""Run the full rule engine over the bundled example collection, print the
per-rule summary table, and score the findings against the bundled oracle
labels."""

import json
import sys
from pathlib import Path

from restlinguist.detectors import AnalysisOptions, run_all
from restlinguist.io import load_collection, load_oracle
from restlinguist.report import evaluate, evaluation_to_dict, export, summarize

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def main() -> int:
    collection = load_collection(FIXTURES / "example_collection.json")
    result = run_all(collection, AnalysisOptions())
    if result.failures:
        for rule, message in result.failures.items():
            print(f"warning: {rule.value}: {message}", file=sys.stderr)

    summary = summarize(result, collection)
    sys.stdout.write(export(summary, result.findings, "text").decode("utf-8"))

    oracle = load_oracle(FIXTURES / "example_oracle.json")
    matrices = evaluate(result.findings, oracle)
    print("\nevaluation against the bundled oracle labels:")
    print(json.dumps(evaluation_to_dict(matrices), indent=2, sort_keys=True))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
