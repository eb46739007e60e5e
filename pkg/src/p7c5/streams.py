"""Graph streams: exhaustive isomorph-free enumeration and seeded samplers."""
from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterator, Sequence

from . import detect
from .graph import Graph, build, cycle, is_connected
from .isomorphism import canonical_form


@lru_cache(maxsize=None)
def _level(n: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    forms = set()
    for parent in _level(n - 1):
        base = list(parent)
        top = 1 << (n - 1)
        for nb in range(1 << (n - 1)):
            adj = [m | top if (nb >> v) & 1 else m for v, m in enumerate(base)]
            adj.append(nb)
            forms.add(canonical_form(Graph(n, tuple(adj))))
    return tuple(sorted(forms))


def all_graphs(n: int) -> Iterator[Graph]:
    """Every graph on ``n`` vertices, one per isomorphism class.

    Built by vertex extension of the previous level and deduplicated by
    canonical form; practical up to n = 9.
    """
    for form in _level(n):
        yield Graph(n, form)


def connected_graphs(n: int) -> Iterator[Graph]:
    for g in all_graphs(n):
        if is_connected(g):
            yield g


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return build(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def extend(g: Graph, neighbors: int) -> Graph:
    """``g`` plus a new vertex ``g.n`` adjacent to the mask ``neighbors``."""
    top = 1 << g.n
    adj = tuple(m | top if (neighbors >> v) & 1 else m for v, m in enumerate(g.adj))
    return Graph(g.n + 1, adj + (neighbors,))


def grow_in_class(
    rng: random.Random,
    forbidden: Sequence[detect.Pattern],
    target_n: int,
    start: Graph | None = None,
    p: float = 0.4,
    tries: int = 30,
) -> Graph:
    """Random graph free of ``forbidden``, grown one vertex at a time.

    Each new vertex gets a random neighbourhood (edge probability ``p``); a
    proposal that creates a forbidden pattern through the new vertex is
    rejected and redrawn, and after ``tries`` rejections the new vertex is
    made a twin of a random existing vertex, re-checked the same way. Growth
    stops early if no proposal survives.
    """
    g = start if start is not None else build(1, [])
    while g.n < target_n:
        grown = None
        for _ in range(tries):
            nb = 0
            for v in range(g.n):
                if rng.random() < p:
                    nb |= 1 << v
            cand = extend(g, nb)
            if not any(detect.contains_through(cand, q, g.n) for q in forbidden):
                grown = cand
                break
        if grown is None:
            u = rng.randrange(g.n)
            nb = g.adj[u] | ((1 << u) if rng.random() < 0.5 else 0)
            cand = extend(g, nb)
            if any(detect.contains_through(cand, q, g.n) for q in forbidden):
                break
            grown = cand
        g = grown
    return g


def grow_from_c7(rng: random.Random, forbidden: Sequence[detect.Pattern], target_n: int, p: float = 0.4) -> Graph:
    """Class-preserving growth seeded with a 7-hole on vertices 0..6."""
    return grow_in_class(rng, forbidden, target_n, start=cycle(7), p=p)
