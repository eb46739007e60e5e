"""Exhaustive check of the PAW structure theorem on small connected graphs.

Every connected imperfect (P7, C5, paw)-free graph should be a blowup of C7.
Graphs come from the built-in isomorph-free enumerator (n <= 8) or from a
graph6 file, e.g. the output of ``geng -c 9``.

    python scripts/exhaustive_paw.py --max-n 8
    geng -c 9 | python scripts/exhaustive_paw.py --graph6 -
"""
from __future__ import annotations

import argparse
import sys
import time
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Optional

from p7c5 import detect, formats, streams
from p7c5.graph import Graph
from p7c5.theorems import verify_structure


@dataclass
class PawConfig:
    max_n: int = 8
    graph6: Optional[str] = None


def source(cfg: PawConfig) -> Iterator[Graph]:
    if cfg.graph6 is None:
        for n in range(1, cfg.max_n + 1):
            yield from streams.connected_graphs(n)
        return
    fh = sys.stdin if cfg.graph6 == "-" else open(cfg.graph6)
    with fh:
        for rec in formats.read_graphs(fh, "g6", cfg.graph6):
            yield rec.graph


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=PawConfig.max_n)
    ap.add_argument("--graph6", help="read graphs from this graph6 file ('-' for stdin)")
    args = ap.parse_args(argv)
    cfg = PawConfig(args.max_n, args.graph6)
    seen, positives, failures = Counter(), Counter(), []
    t0 = time.time()
    for g in source(cfg):
        seen[g.n] += 1
        if not detect.class_membership(g, "PAW").member or detect.is_perfect(g):
            continue
        v = verify_structure(g, "PAW")
        if v.conclusion_holds:
            positives[g.n] += 1
            print(f"n={g.n} {formats.emit_graph6(g).decode()} {v.certificate}")
        else:
            failures.append(g)
            print(f"COUNTEREXAMPLE {formats.emit_graph6(g).decode()} {v.certificate}")
    for n in sorted(seen):
        print(f"n={n}: {seen[n]} connected graphs, {positives[n]} blowups of C7")
    print(f"{len(failures)} counterexamples, {time.time() - t0:.1f}s")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
