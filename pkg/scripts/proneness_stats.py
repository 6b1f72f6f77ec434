#!/usr/bin/env python3
"""Pattern-vs-antipattern proneness comparison.

For every rule, compares the per-collection antipattern and pattern count
vectors of the bundled 19-collection reference dataset with a two-tailed
rank-sum test and Cliff's delta, printing one row per rule.
"""

import json
from pathlib import Path

from restlinguist.report import cliffs_delta, wilcoxon_rank_sum

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def main() -> int:
    data = json.loads((FIXTURES / "survey_counts.json").read_text("utf-8"))
    print(f"{'rule':<32}{'delta':>12}  {'magnitude':<12}{'p-value':>12}  decision")
    for rule, counts in data["counts"].items():
        xs = counts["antipattern"]
        ys = counts["pattern"]
        delta, magnitude = cliffs_delta(xs, ys)
        p = wilcoxon_rank_sum(xs, ys)
        decision = "significant" if p < 0.05 else "not significant"
        print(f"{rule:<32}{delta:>+12.7f}  {magnitude.value:<12}{p:>12.3g}  {decision}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
