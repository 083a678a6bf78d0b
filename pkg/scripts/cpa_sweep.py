#!/usr/bin/env python3
"""Exhaustive sweep of the one-query distinguisher over a bounded key space.

Plays the key-distinguishing game for every ordered pair of distinct key
sets with indices <= --max-index and |S| <= --max-size, both hidden bits,
and reports the success rate (which should be exactly 1.0), the query
count, and the distribution of chosen probe indices.
"""

import argparse
from collections import Counter
from itertools import combinations

from brc.attacks import run_cpa_experiment
from brc.burnside import KeySet


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-index", type=int, default=8)
    parser.add_argument("--max-size", type=int, default=3)
    args = parser.parse_args()

    key_space = [
        KeySet(combo)
        for size in range(1, args.max_size + 1)
        for combo in combinations(range(1, args.max_index + 1), size)
    ]
    total = 0
    correct = 0
    queries = 0
    probes: Counter[int] = Counter()
    for s0 in key_space:
        for s1 in key_space:
            if s0 == s1:
                continue
            for hidden in (0, 1):
                result, experiment = run_cpa_experiment(s0, s1, hidden)
                total += 1
                correct += result.guess == hidden
                queries += experiment.queries
                probes[result.probe] += 1

    print(f"key space      : {len(key_space)} sets (indices <= {args.max_index}, |S| <= {args.max_size})")
    print(f"experiments    : {total} (ordered pairs x both hidden bits)")
    print(f"success rate   : {correct / total:.6f} ({correct}/{total})")
    print(f"queries/game   : {queries / total:.3f}")
    print("probe histogram:")
    for probe, count in sorted(probes.items()):
        print(f"  D{probe:<3} {count}")
    return 0 if correct == total else 1


if __name__ == "__main__":
    raise SystemExit(main())
