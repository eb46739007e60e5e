"""Immutable simple graphs over dense vertex ids with bitmask adjacency."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

MAX_VERTICES = 1024


class GraphError(ValueError):
    pass


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def to_set(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is an int bitmask of the neighbours of ``v``. Instances are
    immutable and hashable; construct them with :func:`build` or
    :meth:`from_masks`.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match n")

    @classmethod
    def from_masks(cls, masks: Iterable[int], check: bool = True) -> Graph:
        adj = tuple(masks)
        g = cls(len(adj), adj)
        if check:
            full = (1 << g.n) - 1
            for v, m in enumerate(adj):
                if m & ~full or (m >> v) & 1:
                    raise GraphError(f"bad adjacency mask at vertex {v}")
                for u in bits(m):
                    if not (adj[u] >> v) & 1:
                        raise GraphError(f"asymmetric adjacency {v}-{u}")
        return g

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def neighbors(self, v: int) -> frozenset[int]:
        return to_set(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def m(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def is_clique(self, mask: int) -> bool:
        return all(mask & ~(1 << v) & ~self.adj[v] == 0 for v in bits(mask))

    def is_stable(self, mask: int) -> bool:
        return all(self.adj[v] & mask == 0 for v in bits(mask))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def build(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph on ``n`` vertices; duplicate pairs collapse."""
    if not 0 <= n <= MAX_VERTICES:
        raise GraphError(f"vertex count {n} outside 0..{MAX_VERTICES}")
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def cycle(n: int) -> Graph:
    return build(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return build(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    return build(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def empty(n: int) -> Graph:
    return Graph(n, (0,) * n)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build(10, outer + spokes + inner)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shifted = tuple(m << g.n for m in h.adj)
    return Graph(g.n + h.n, g.adj + shifted)


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} outside 0..{g.n - 1}")


def neighborhood_sets(g: Graph, v: int) -> tuple[frozenset[int], frozenset[int]]:
    """Return ``(N(v), M(v))``: neighbours and non-neighbours other than v."""
    _check_vertex(g, v)
    nb = g.adj[v]
    return to_set(nb), to_set(g.full & ~nb & ~(1 << v))


def set_neighborhood(g: Graph, mask: int) -> int:
    """N(X): vertices outside X with a neighbour in X, as a mask."""
    out = 0
    for v in bits(mask):
        out |= g.adj[v]
    return out & ~mask


def set_non_neighborhood(g: Graph, mask: int) -> int:
    """M(X) = V minus (X and N(X)), as a mask."""
    return g.full & ~mask & ~set_neighborhood(g, mask)


def induced(g: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on ``vertices``.

    Returns the subgraph (relabelled to ``0..k-1`` in increasing order of the
    original ids) and the tuple mapping new ids back to original ids.
    """
    keep = sorted(set(vertices))
    for v in keep:
        _check_vertex(g, v)
    pos = {v: i for i, v in enumerate(keep)}
    adj = []
    for v in keep:
        m = 0
        for u in bits(g.adj[v]):
            i = pos.get(u)
            if i is not None:
                m |= 1 << i
        adj.append(m)
    return Graph(len(keep), tuple(adj)), tuple(keep)


def induced_mask(g: Graph, mask: int) -> tuple[Graph, tuple[int, ...]]:
    return induced(g, bits(mask))


def remove(g: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    gone = to_mask(vertices)
    return induced_mask(g, g.full & ~gone)


def complement(g: Graph) -> Graph:
    full = g.full
    return Graph(g.n, tuple(full & ~m & ~(1 << v) for v, m in enumerate(g.adj)))


def relabel(g: Graph, order: Iterable[int]) -> Graph:
    """Graph whose vertex i is the original vertex ``order[i]``."""
    order = list(order)
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    adj = [0] * g.n
    for i, v in enumerate(order):
        m = 0
        for u in bits(g.adj[v]):
            m |= 1 << pos[u]
        adj[i] = m
    return Graph(g.n, tuple(adj))


def components_masks(g: Graph, within: int | None = None) -> list[int]:
    """Connected components of ``g[within]`` as masks, ordered by least vertex."""
    rest = g.full if within is None else within
    comps = []
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            nxt &= rest & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        rest &= ~comp
    return comps


def is_connected(g: Graph) -> bool:
    return len(components_masks(g)) <= 1


class Stats(NamedTuple):
    delta: int
    connected: bool
    components: list[frozenset[int]]


def basic_stats(g: Graph) -> Stats:
    comps = components_masks(g)
    delta = min(g.degrees()) if g.n else 0
    return Stats(delta, len(comps) == 1, [to_set(c) for c in comps])
