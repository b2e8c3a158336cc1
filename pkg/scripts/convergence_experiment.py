#!/usr/bin/env python3
"""Convergence sweep: run the simulated-user loop across seeds and targets.

    python scripts/convergence_experiment.py [--seeds 20] [--generations 30]
        [--target "(sin y)" --target "(sin (add y time))" ...]

Prints one row per (target, seed) with initial/final pick distance, plus a
per-target summary of how often the final pick improved on the initial one.
"""

import argparse
from collections import defaultdict

from evoshape.simulate import run_simulation

DEFAULT_TARGETS = ["(sin y)", "(sin (add y time))", "(mul x 0.5)"]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seeds", type=int, default=20)
    parser.add_argument("--generations", type=int, default=30)
    parser.add_argument("--target", action="append", dest="targets")
    args = parser.parse_args()
    targets = args.targets or DEFAULT_TARGETS

    summary = defaultdict(lambda: [0, 0, 0])  # improved, solved, total
    print(f"{'target':<24} {'seed':>4} {'initial':>14} {'final':>14}")
    for target in targets:
        for seed in range(args.seeds):
            trace = run_simulation(target, args.generations, seed)
            first = trace.rows[0].chosen_best_distance
            last = trace.rows[-1].chosen_best_distance
            print(f"{target:<24} {seed:>4} {first:>14.2f} {last:>14.2f}")
            stats = summary[target]
            stats[0] += last < first
            stats[1] += last == 0.0
            stats[2] += 1

    print()
    for target, (improved, solved, total) in summary.items():
        print(f"{target}: improved {improved}/{total}, "
              f"exact matches {solved}/{total}")


if __name__ == "__main__":
    main()
