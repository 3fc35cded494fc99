#!/usr/bin/env python3
"""Wall time of every pipeline stage for one built-in example.

    python3 scripts/time_stages.py 3.22 [trials]

Timings go to stdout only; they are never part of the JSON output.
"""
import argparse
import time

from hilbred import pipeline
from hilbred.corpus import by_name


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("example")
    ap.add_argument("trials", type=int, nargs="?", default=2)
    args = ap.parse_args()

    stage = pipeline._stage

    def timed(block, name, fn):
        t = time.perf_counter()
        out = stage(block, name, fn)
        print(f"{name:28s} {time.perf_counter() - t:8.2f}s", flush=True)
        return out

    pipeline._stage = timed
    ex = by_name(args.example)
    t = time.perf_counter()
    block = pipeline.analyze_ideal(ex.ideal(), pipeline.AnalysisConfig(trials=args.trials), name=ex.name)
    print(f"{'total':28s} {time.perf_counter() - t:8.2f}s")
    if block["errors"]:
        print("errors:", block["errors"])


if __name__ == "__main__":
    main()
