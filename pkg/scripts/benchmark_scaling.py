#!/usr/bin/env python3
"""Detection-time scaling study.

Generates a synthetic collection whose endpoint variety grows with size,
measures per-rule wall time at increasing subsample sizes, and fits a
quadratic growth curve per rule. The semantic rules dominate and grow
superlinearly (larger samples expose more endpoints, hence more topics and
more pairwise comparisons); the purely syntactic rules stay flat.
"""

import argparse
import itertools
import random

from restlinguist.detectors import AnalysisOptions, run_all
from restlinguist.io import ApiCollection, ApiEntry
from restlinguist.report import fit_time_growth
from restlinguist.rules import RuleId
from restlinguist.uri import HttpMethod

SYLLABLES = ["ba", "de", "ki", "lo", "mu", "na", "po", "ra", "su", "ta", "ve", "zo"]


def word_pool(size):
    pool = ["".join(p) for p in itertools.product(SYLLABLES, repeat=2)]
    pool += ["".join(p) for p in itertools.product(SYLLABLES, repeat=3)]
    return pool[:size]


def synthetic_collection(n_entries, n_endpoints, seed=12345):
    rng = random.Random(seed)
    pool = word_pool(1200)
    endpoints = pool[:n_endpoints]
    methods = [HttpMethod.GET, HttpMethod.POST, HttpMethod.PUT, HttpMethod.DELETE]
    entries = []
    for i in range(n_entries):
        words = rng.sample(pool, 2)
        uri = f"/{endpoints[i % n_endpoints]}/{words[0]}/{words[1]}"
        theme = i % 10
        doc = " ".join(rng.choice(pool[theme * 120:(theme + 1) * 120]) for _ in range(8 + i % 5))
        entries.append(ApiEntry(id=f"e{i + 1}", uri=uri, method=methods[i % 4], documentation=doc))
    return ApiCollection(name=f"synthetic-{n_entries}", entries=tuple(entries))


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="25,50,100,200,400")
    parser.add_argument("--endpoints", type=int, default=150)
    parser.add_argument("--iterations", type=int, default=1000)
    parser.add_argument("--repeats", type=int, default=2)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    parent = synthetic_collection(max(sizes), args.endpoints)
    options = AnalysisOptions(iterations=args.iterations)

    per_rule: dict[RuleId, list[float]] = {rule: [] for rule in RuleId}
    print(f"{'size':>6}  " + "  ".join(f"{r.value[:14]:>14}" for r in RuleId))
    for size in sizes:
        sub = ApiCollection(name=f"sub-{size}", entries=parent.entries[:size])
        best: dict[RuleId, float] = {}
        for _ in range(args.repeats):
            result = run_all(sub, options)
            for rule, elapsed in result.elapsed.items():
                best[rule] = min(best.get(rule, float("inf")), elapsed)
        for rule in RuleId:
            per_rule[rule].append(best.get(rule, 0.0))
        print(f"{size:>6}  " + "  ".join(f"{best.get(r, 0.0):>14.4f}" for r in RuleId))

    print("\nquadratic fit y = a*x^2 + b*x + c per rule:")
    for rule in RuleId:
        a, b, c = fit_time_growth([float(s) for s in sizes], per_rule[rule])
        print(f"  {rule.value:<32} a={a:+.3e}  b={b:+.3e}  c={c:+.3e}")

    print("\naverage per-rule seconds over all sizes:")
    for rule in RuleId:
        timings = per_rule[rule]
        print(f"  {rule.value:<32} {sum(timings) / len(timings):.4f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
