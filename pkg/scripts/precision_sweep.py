#!/usr/bin/env python3
"""Recompute the universal grading of one fixture over a grid of precisions
and seeds and report whether every run produced the identical grading."""

import argparse

from gradus import RunConfig, example_order, universal_grading


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("name", nargs="?", default="kummer6")
    ap.add_argument("--precisions", type=int, nargs="+", default=[128, 192, 256])
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2, 3])
    args = ap.parse_args()

    a = example_order(args.name)
    reference = None
    agree = True
    for p in args.precisions:
        for s in args.seeds:
            go = universal_grading(a, RunConfig(precision=p, seed=s))
            key = (go.grading.group.invariant_factors, go.grading.pieces)
            if reference is None:
                reference = key
                factors = key[0] or "trivial"
                print(f"{args.name}: grading group invariant factors {factors}")
            status = "ok" if key == reference else "MISMATCH"
            agree &= key == reference
            print(f"  precision {p:4d}  seed {s}  {status}")
    print("all runs identical" if agree else "RUNS DISAGREE")
    return 0 if agree else 1


if __name__ == "__main__":
    raise SystemExit(main())
