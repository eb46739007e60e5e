"""Bounded search for graphs meeting the DIAMOND structure-theorem hypotheses.

Start from C7 and add up to ``max_extra`` vertices, each attached to the hole
by one of the 28 templates (A_i, B_i, Bbar_i, D_i), with every edge set among
the extra vertices. Branches that create an induced P7, C5 or diamond through
the newest vertex are pruned. Survivors that satisfy all hypotheses are printed
once per isomorphism class, with the families they match.

    python scripts/attachment_search.py --max-extra 4
"""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from p7c5 import detect
from p7c5.graph import Graph, build
from p7c5.hole_structure import IDX, template
from p7c5.isomorphism import canonical_form
from p7c5.theorems import verify_structure

KINDS = ("A", "B", "Bbar", "D")


@dataclass
class SearchConfig:
    max_extra: int = 4
    verbose: bool = False


def shapes() -> list[tuple[str, list[int]]]:
    return [(f"{k}{i}", sorted(p - 1 for p in template(k, i))) for k in KINDS for i in IDX]


def grow(g: Graph, tail: list[str], start: int, cfg: SearchConfig, out: dict, stats: dict) -> None:
    if tail:
        v = verify_structure(g, "DIAMOND")
        stats["checked"] += 1
        if v.hypotheses_hold:
            key = canonical_form(g)
            if key not in out:
                out[key] = (list(tail), v.details.get("matches", []), g)
    if len(tail) == cfg.max_extra:
        return
    options = shapes()
    n = g.n
    extras = list(range(7, n))
    for s in range(start, len(options)):
        name, hole_nbrs = options[s]
        for mask in range(1 << len(extras)):
            nbrs = hole_nbrs + [x for j, x in enumerate(extras) if mask >> j & 1]
            h = build(n + 1, g.edges() + [(n, u) for u in nbrs])
            if any(detect.contains_through(h, p, n) for p in detect.CLASSES["DIAMOND"]):
                stats["pruned"] += 1
                continue
            grow(h, tail + [name], s, cfg, out, stats)


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-extra", type=int, default=SearchConfig.max_extra)
    ap.add_argument("--verbose", action="store_true")
    args = ap.parse_args(argv)
    cfg = SearchConfig(args.max_extra, args.verbose)
    c7 = build(7, [(i, (i + 1) % 7) for i in range(7)])
    found: dict = {}
    stats = {"checked": 0, "pruned": 0}
    t0 = time.time()
    grow(c7, [], 0, cfg, found, stats)
    print(f"checked {stats['checked']} graphs, pruned {stats['pruned']} branches in {time.time() - t0:.1f}s")
    for tail, matches, g in sorted(found.values(), key=lambda r: (r[2].n, r[0])):
        label = " = ".join(matches) if matches else "no family match"
        print(f"n={g.n} extras {' '.join(tail)}: {label}")
        if cfg.verbose:
            print("   ", g.edges())


if __name__ == "__main__":
    main()
