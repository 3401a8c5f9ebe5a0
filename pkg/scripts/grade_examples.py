#!/usr/bin/env python3
"""Survey every named example order: reducedness, connectedness, universal
grading, and torsion units, printed as one table row per fixture."""

import time

from gradus import (
    RunConfig,
    example_names,
    example_order,
    is_connected,
    is_reduced,
    roots_of_unity,
    universal_grading,
)


def main():
    config = RunConfig()
    header = f"{'name':10s} {'rank':>4s} {'red':>4s} {'conn':>5s} {'grading group':>16s} {'pieces':>7s} {'roots':>6s} {'secs':>7s}"
    print(header)
    print("-" * len(header))
    for name in example_names():
        a = example_order(name)
        t0 = time.perf_counter()
        reduced = is_reduced(a)
        if not reduced or a.rank == 0:
            print(f"{name:10s} {a.rank:4d} {'no':>4s} {'-':>5s} {'-':>16s} {'-':>7s} {'-':>6s} {time.perf_counter() - t0:7.2f}")
            continue
        connected = is_connected(a, config)
        go = universal_grading(a, config)
        factors = go.grading.group.invariant_factors
        label = "x".join(f"C{d}" for d in factors) if factors else "trivial"
        count = roots_of_unity(a, config).count
        dt = time.perf_counter() - t0
        print(
            f"{name:10s} {a.rank:4d} {'yes':>4s} {('yes' if connected else 'no'):>5s} "
            f"{label:>16s} {len(go.grading.pieces):7d} {count:6d} {dt:7.2f}"
        )


if __name__ == "__main__":
    main()
