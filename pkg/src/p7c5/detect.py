"""Induced-subgraph detection for the forbidden patterns, and perfection testing."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Optional

from .graph import Graph, bits, build, complement, cycle, path, relabel

PERFECT_LIMIT = 32


class TooLarge(ValueError):
    """Raised when a graph exceeds a configured exact-search limit."""


@dataclass(frozen=True)
class Pattern:
    tag: str
    t: Optional[int] = None

    def __post_init__(self) -> None:
        if self.tag not in _TAGS:
            raise ValueError(f"unknown pattern tag {self.tag!r}")
        if self.tag == "PATH" and (self.t is None or self.t < 1):
            raise ValueError("PATH(t) requires t >= 1")
        if self.tag == "HOLE" and (self.t is None or self.t < 4):
            raise ValueError("HOLE(t) requires t >= 4")

    @property
    def name(self) -> str:
        if self.tag == "PATH":
            return f"p{self.t}"
        if self.tag == "HOLE":
            return f"c{self.t}"
        return self.tag.lower().replace("_", "-")

    def __str__(self) -> str:
        return self.name

    def graph(self) -> Graph:
        """The pattern as a graph; undefined for the odd hole/antihole families."""
        return _pattern_graph(self)


# Labellings are chosen so each vertex has a neighbour among earlier ones;
# the backtracking search assigns pattern vertices in this order.
_FIXED_EDGES = {
    "DIAMOND": (4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]),
    "PAW": (4, [(0, 1), (0, 2), (1, 2), (0, 3)]),
    "KITE": (5, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 4)]),
    "PARAGLIDER": (5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (3, 4)]),
    "GEM": (5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)]),
    "BULL": (5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)]),
}
_TAGS = set(_FIXED_EDGES) | {"PATH", "HOLE", "ODD_HOLE", "ODD_ANTIHOLE"}


def PATH(t: int) -> Pattern:
    return Pattern("PATH", t)


def HOLE(t: int) -> Pattern:
    return Pattern("HOLE", t)


DIAMOND = Pattern("DIAMOND")
PAW = Pattern("PAW")
KITE = Pattern("KITE")
PARAGLIDER = Pattern("PARAGLIDER")
GEM = Pattern("GEM")
BULL = Pattern("BULL")
ODD_HOLE = Pattern("ODD_HOLE")
ODD_ANTIHOLE = Pattern("ODD_ANTIHOLE")
P7 = PATH(7)
C5 = HOLE(5)

ALL_PATTERNS = (P7, C5, ODD_HOLE, ODD_ANTIHOLE, DIAMOND, PAW, KITE, PARAGLIDER, GEM, BULL)

_BY_NAME = {p.name: p for p in ALL_PATTERNS}


def parse_pattern(text: str) -> Pattern:
    key = text.strip().lower()
    if key in _BY_NAME:
        return _BY_NAME[key]
    if key[:1] == "p" and key[1:].isdigit():
        return PATH(int(key[1:]))
    if key[:1] == "c" and key[1:].isdigit():
        return HOLE(int(key[1:]))
    raise ValueError(f"unknown pattern {text!r}")


@lru_cache(maxsize=None)
def _pattern_graph(p: Pattern) -> Graph:
    if p.tag == "PATH":
        return path(p.t)
    if p.tag == "HOLE":
        return cycle(p.t)
    if p.tag in _FIXED_EDGES:
        n, edges = _FIXED_EDGES[p.tag]
        return build(n, edges)
    raise ValueError(f"{p.name} has no single pattern graph")


@dataclass(frozen=True)
class Embedding:
    """``image[i]`` is the host vertex playing pattern vertex ``i``.

    For the odd hole (antihole) families the image lists the cycle in order
    (in the complement, for antiholes).
    """

    pattern: Pattern
    image: tuple[int, ...]


def verify_embedding(g: Graph, e: Embedding) -> bool:
    """Re-check an embedding edge by edge against the host."""
    img = e.image
    if len(set(img)) != len(img) or any(not 0 <= v < g.n for v in img):
        return False
    if e.pattern.tag in ("ODD_HOLE", "ODD_ANTIHOLE"):
        k = len(img)
        if k < 5 or k % 2 == 0:
            return False
        host = g if e.pattern.tag == "ODD_HOLE" else complement(g)
        ref = cycle(k)
    else:
        host = g
        ref = e.pattern.graph()
        if len(img) != ref.n:
            return False
    for i in range(len(img)):
        for j in range(i + 1, len(img)):
            if host.has_edge(img[i], img[j]) != ref.has_edge(i, j):
                return False
    return True


def _search(g: Graph, pat: Graph, anchor: Optional[int] = None) -> Optional[tuple[int, ...]]:
    """Backtracking induced embedding search; first hit is lexicographically least.

    With ``anchor`` set, only embeddings whose image contains that vertex are
    considered (and the lexicographic guarantee is dropped).
    """
    if anchor is not None:
        return _search_anchored(g, pat, anchor)
    k = pat.n
    if k > g.n:
        return None
    if k == 0:
        return ()
    img = [0] * k
    return tuple(img) if _extend(g, pat, img, 0, 0) else None


def _extend(g: Graph, pat: Graph, img: list[int], depth: int, used: int) -> bool:
    return _grow(g.adj, g.full, pat.adj, pat.n, img, depth, used)


def _grow(gadj, full, padj, k, img, depth, used) -> bool:
    if depth == k:
        return True
    cand = full & ~used
    pm = padj[depth]
    for j in range(depth):
        if (pm >> j) & 1:
            cand &= gadj[img[j]]
        else:
            cand &= ~gadj[img[j]]
        if not cand:
            return False
    while cand:
        low = cand & -cand
        img[depth] = low.bit_length() - 1
        if _grow(gadj, full, padj, k, img, depth + 1, used | low):
            return True
        cand ^= low
    return False


@lru_cache(maxsize=None)
def _rooted_copies(pat: Graph) -> tuple[tuple[Graph, tuple[int, ...]], ...]:
    """One relabelling of ``pat`` per automorphism orbit of its vertices.

    Each copy puts an orbit representative first and the rest in BFS order
    (so every later vertex has an earlier neighbour when ``pat`` is
    connected); the tuple maps new positions back to old ones.
    """
    k = pat.n
    autos = [p for p in permutations(range(k))
             if all(pat.has_edge(p[u], p[v]) == pat.has_edge(u, v) for u in range(k) for v in range(u + 1, k))]
    seen: set[int] = set()
    out = []
    for root in range(k):
        if root in seen:
            continue
        seen.update(p[root] for p in autos)
        order = [root]
        for v in order:
            order.extend(u for u in sorted(pat.neighbors(v)) if u not in order)
        order.extend(u for u in range(k) if u not in order)
        out.append((relabel(pat, order), tuple(order)))
    return tuple(out)


def _search_anchored(g: Graph, pat: Graph, anchor: int) -> Optional[tuple[int, ...]]:
    if pat.n > g.n:
        return None
    for copy, order in _rooted_copies(pat):
        img = [0] * copy.n
        img[0] = anchor
        if _extend(g, copy, img, 1, 1 << anchor):
            out = [0] * copy.n
            for new, old in enumerate(order):
                out[old] = img[new]
            return tuple(out)
    return None


def find_odd_hole(g: Graph) -> Optional[tuple[int, ...]]:
    """An induced odd cycle of length >= 5, listed in cycle order, or None.

    Holes are enumerated by their least vertex ``s``: induced paths from
    ``s`` through larger vertices are grown until they close back to ``s``.
    """
    adj = g.adj
    for s in range(g.n):
        above = g.full & ~((1 << (s + 1)) - 1)
        ns = adj[s] & above
        for p1 in bits(ns):
            found = _grow_hole(adj, ns, above, [s, p1], (1 << s) | (1 << p1), 0)
            if found:
                return found
    return None


def _grow_hole(adj, ns, above, walk, on_path, blocked):
    # ``blocked``: neighbours of interior path vertices (all but s and the end).
    end = walk[-1]
    cand = adj[end] & above & ~on_path & ~blocked
    for c in bits(cand):
        if (ns >> c) & 1:
            length = len(walk) + 1
            if length >= 5 and length % 2 == 1 and c > walk[1]:
                return (*walk, c)
            continue
        found = _grow_hole(adj, ns, above, walk + [c], on_path | (1 << c), blocked | adj[end])
        if found:
            return found
    return None


def find_induced(g: Graph, p: Pattern) -> Optional[Embedding]:
    """Witness embedding of ``p`` as an induced subgraph of ``g``, or None."""
    if p.tag == "ODD_HOLE":
        cyc = find_odd_hole(g)
        return Embedding(p, cyc) if cyc else None
    if p.tag == "ODD_ANTIHOLE":
        cyc = find_odd_hole(complement(g))
        return Embedding(p, cyc) if cyc else None
    img = _search(g, p.graph())
    return Embedding(p, img) if img is not None else None


def contains_through(g: Graph, p: Pattern, v: int) -> Optional[Embedding]:
    """Like :func:`find_induced` but only occurrences using vertex ``v``."""
    if p.tag in ("ODD_HOLE", "ODD_ANTIHOLE"):
        e = find_induced(g, p)
        return e if e is not None and v in e.image else None
    img = _search(g, p.graph(), anchor=v)
    return Embedding(p, img) if img is not None else None


def is_perfect(g: Graph, limit: int = PERFECT_LIMIT) -> bool:
    """Perfection via the odd hole / odd antihole characterisation."""
    if g.n > limit:
        raise TooLarge(f"perfection check limited to {limit} vertices, got {g.n}")
    return find_odd_hole(g) is None and find_odd_hole(complement(g)) is None


CLASSES = {
    "KP": (P7, C5, KITE, PARAGLIDER),
    "DIAMOND": (P7, C5, DIAMOND),
    "PAW": (P7, C5, PAW),
    "BULL": (P7, C5, BULL),
}


@dataclass(frozen=True)
class Membership:
    member: bool
    witness: Optional[Embedding] = None


def class_membership(g: Graph, cls: str) -> Membership:
    """Test membership in one of the (P7, C5, H)-free classes.

    ``cls`` is one of KP (kite and paraglider), DIAMOND, PAW or BULL. A
    non-member comes with a witness of the first forbidden pattern found,
    checking the small patterns before P7.
    """
    try:
        forbidden = CLASSES[cls.upper()]
    except KeyError:
        raise ValueError(f"unknown class {cls!r}") from None
    for p in sorted(forbidden, key=lambda q: q.graph().n):
        e = find_induced(g, p)
        if e is not None:
            return Membership(False, e)
    return Membership(True)
