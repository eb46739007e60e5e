"""Randomized search for KP-class graphs meeting the KP theorem hypotheses.

Samples alternate between growth from C7 and unconstrained in-class growth.
Every sample meeting all hypotheses must have a universal clique or be
isomorphic to F1; anything else is printed in graph6 as a counterexample.

    python scripts/kp_search.py --samples 100000 --seed 7
"""
from __future__ import annotations

import argparse
import random
import sys
import time
from collections import Counter
from dataclasses import dataclass

from p7c5 import detect, formats, streams
from p7c5.theorems import verify_structure


@dataclass
class KPSearchConfig:
    samples: int = 100_000
    seed: int = 0
    max_n: int = 13
    report_every: int = 10_000


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=KPSearchConfig.samples)
    ap.add_argument("--seed", type=int, default=KPSearchConfig.seed)
    ap.add_argument("--max-n", type=int, default=KPSearchConfig.max_n)
    args = ap.parse_args(argv)
    cfg = KPSearchConfig(args.samples, args.seed, args.max_n)
    rng = random.Random(cfg.seed)
    kp = detect.CLASSES["KP"]
    tally = Counter()
    bad = 0
    t0 = time.time()
    for i in range(1, cfg.samples + 1):
        if i % 2:
            g = streams.grow_from_c7(rng, kp, rng.randint(8, cfg.max_n))
        else:
            g = streams.grow_in_class(rng, kp, rng.randint(5, cfg.max_n))
        v = verify_structure(g, "KP")
        tally[v.first_failure or "all hold"] += 1
        if v.violated:
            bad += 1
            print(f"COUNTEREXAMPLE {formats.emit_graph6(g).decode()}")
        elif v.hypotheses_hold:
            tally["universal clique" if "K" in v.details else "F1"] += 1
        if i % cfg.report_every == 0:
            print(f"{i} samples, {time.time() - t0:.0f}s, {dict(tally)}", flush=True)
    print(f"done: {cfg.samples} samples, {bad} counterexamples")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
