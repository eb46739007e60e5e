"""Reduction primitives: comparable pairs, universal cliques, clique cutsets,
homogeneous sets and false-twin quotients."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .graph import Graph, GraphError, bits, components_masks, to_mask, to_set

REMOVE_COMPARABLE = "REMOVE_COMPARABLE"
EXTRACT_UNIVERSAL_CLIQUE = "EXTRACT_UNIVERSAL_CLIQUE"
SPLIT_CLIQUE_CUTSET = "SPLIT_CLIQUE_CUTSET"
CONTRACT_HOMOGENEOUS = "CONTRACT_HOMOGENEOUS"


@dataclass(frozen=True)
class ReductionStep:
    """One reduction, with vertex ids of the graph it was computed on.

    ``on`` is the vertex set (in the caller's labelling) of the graph the step
    applies to; ``payload`` holds the step's sets, e.g. ``{"x": 3, "y": 5}``
    for a comparable pair with x dominated by y.
    """

    kind: str
    on: frozenset[int]
    payload: dict = field(default_factory=dict, compare=False)


def find_comparable_pair(g: Graph) -> Optional[tuple[int, int]]:
    """Lexicographically least nonadjacent ``(u, v)`` with N(u) contained in N(v)."""
    adj = g.adj
    for u in range(g.n):
        nu = adj[u]
        for v in range(g.n):
            if v == u or (nu >> v) & 1:
                continue
            if nu & ~adj[v] == 0:
                return u, v
    return None


def universal_mask(g: Graph) -> int:
    """Vertices adjacent to every other vertex."""
    full = g.full
    return to_mask(v for v in range(g.n) if g.adj[v] | (1 << v) == full)


def find_universal_clique(g: Graph) -> Optional[frozenset[int]]:
    """The maximal universal clique (all universal vertices), or None.

    On a complete graph this is the whole vertex set.
    """
    m = universal_mask(g)
    return to_set(m) if m else None


def find_clique_cutset(g: Graph) -> Optional[frozenset[int]]:
    """A clique whose removal disconnects ``g``, or None.

    Minimal separators are generated from the components of G - N[x] and
    closed under the standard extension step; the first clique separator in
    this deterministic order is returned. Every clique cutset contains a
    clique minimal separator, so the search is complete.
    """
    if g.n and len(components_masks(g)) != 1:
        raise GraphError("find_clique_cutset needs a connected graph")
    s = _first_clique_minimal_separator(g)
    return to_set(s) if s is not None else None


def _is_full_component_sep(g: Graph, s: int) -> bool:
    """True when G - s has at least two components each seeing all of s."""
    full_count = 0
    for comp in components_masks(g, g.full & ~s):
        nb = 0
        for v in bits(comp):
            nb |= g.adj[v]
        if nb & s == s:
            full_count += 1
    return full_count >= 2


def _first_clique_minimal_separator(g: Graph) -> Optional[int]:
    seen: set[int] = set()
    queue: list[int] = []

    def push(sep: int) -> Optional[int]:
        if sep in seen or sep == 0:
            return None
        seen.add(sep)
        if not _is_full_component_sep(g, sep):
            return None
        if g.is_clique(sep):
            return sep
        queue.append(sep)
        return None

    for x in range(g.n):
        closed = g.adj[x] | (1 << x)
        for comp in components_masks(g, g.full & ~closed):
            nb = 0
            for v in bits(comp):
                nb |= g.adj[v]
            hit = push(nb & g.adj[x])
            if hit is not None:
                return hit
    while queue:
        sep = queue.pop(0)
        for x in bits(sep):
            removed = sep | g.adj[x]
            for comp in components_masks(g, g.full & ~removed):
                nb = 0
                for v in bits(comp):
                    nb |= g.adj[v]
                hit = push(nb & removed)
                if hit is not None:
                    return hit
    return None


def _module_closure(g: Graph, seed: int) -> int:
    """Least module containing ``seed``: add splitters until none remain."""
    adj = g.adj
    s = seed
    while True:
        outside = g.full & ~s
        grow = 0
        for x in bits(outside):
            hit = adj[x] & s
            if hit and hit != s:
                grow |= 1 << x
        if not grow:
            return s
        s |= grow


def find_homogeneous_set(g: Graph) -> Optional[frozenset[int]]:
    """A smallest homogeneous set, or None when ``g`` is prime.

    Every inclusion-minimal module of size >= 2 is the closure of some pair,
    so the pair closures cover them; ties go to the lexicographically least
    vertex tuple.
    """
    m = _smallest_module(g, lambda s: True)
    return to_set(m) if m is not None else None


def _smallest_module(g: Graph, accept) -> Optional[int]:
    best = None
    best_key = None
    for u in range(g.n):
        for v in range(u + 1, g.n):
            s = _module_closure(g, (1 << u) | (1 << v))
            if s == g.full or not accept(s):
                continue
            key = (s.bit_count(), tuple(bits(s)))
            if best_key is None or key < best_key:
                best, best_key = s, key
    return best


def find_nonclique_homogeneous_set(g: Graph) -> Optional[frozenset[int]]:
    m = _smallest_module(g, lambda s: not g.is_clique(s))
    return to_set(m) if m is not None else None


def is_homogeneous(g: Graph, s: frozenset[int]) -> bool:
    mask = to_mask(s)
    if not 1 < len(s) < g.n:
        return False
    for x in bits(g.full & ~mask):
        hit = g.adj[x] & mask
        if hit and hit != mask:
            return False
    return True


@dataclass(frozen=True)
class TwinQuotient:
    classes: tuple[frozenset[int], ...]
    quotient: Graph

    def class_of(self, v: int) -> int:
        for i, c in enumerate(self.classes):
            if v in c:
                return i
        raise KeyError(v)


def twin_quotient(g: Graph) -> TwinQuotient:
    """Classes of false twins (nonadjacent, equal neighbourhoods), ordered by
    least member, and the quotient graph on those classes."""
    by_nb: dict[int, list[int]] = {}
    for v in range(g.n):
        by_nb.setdefault(g.adj[v], []).append(v)
    classes = sorted((frozenset(vs) for vs in by_nb.values()), key=min)
    index = {}
    for i, c in enumerate(classes):
        for v in c:
            index[v] = i
    adj = [0] * len(classes)
    for i, c in enumerate(classes):
        rep = min(c)
        for u in bits(g.adj[rep]):
            adj[i] |= 1 << index[u]
    return TwinQuotient(tuple(classes), Graph(len(classes), tuple(adj)))


def expand_quotient(tq: TwinQuotient) -> Graph:
    """Rebuild a graph from a twin quotient: classes become stable sets,
    adjacent classes become complete to each other."""
    n = sum(len(c) for c in tq.classes)
    adj = [0] * n
    masks = [to_mask(c) for c in tq.classes]
    for i, c in enumerate(tq.classes):
        nb = 0
        for j in bits(tq.quotient.adj[i]):
            nb |= masks[j]
        for v in c:
            adj[v] = nb
    return Graph(n, tuple(adj))
