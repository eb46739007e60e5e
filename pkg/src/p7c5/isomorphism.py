"""Canonical forms and isomorphism tests for small graphs.

Individualisation-refinement without a full automorphism group: the ordered
partition is refined to an equitable one by neighbour counts, the first
smallest non-singleton cell is split by individualising each of its vertices,
and the least relabelled adjacency over all leaves is the canonical form.
Branches on vertices that are twins of an already-tried vertex are skipped,
since swapping twins is an automorphism fixing everything else.
"""
from __future__ import annotations

from typing import Optional

from .graph import Graph, relabel


def refine(g: Graph, cells: list[list[int]]) -> list[list[int]]:
    """Refine an ordered partition until it is equitable.

    Cells split by the number of neighbours in each splitter cell; the
    fragments are ordered by that count, so the result is isomorphism
    invariant.
    """
    adj = g.adj
    cells = [list(c) for c in cells]
    changed = True
    while changed:
        changed = False
        for w in range(len(cells)):
            if w >= len(cells):
                break
            wmask = 0
            for v in cells[w]:
                wmask |= 1 << v
            out: list[list[int]] = []
            split = False
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v in cell:
                    groups.setdefault((adj[v] & wmask).bit_count(), []).append(v)
                if len(groups) == 1:
                    out.append(cell)
                else:
                    split = True
                    for key in sorted(groups):
                        out.append(groups[key])
            if split:
                cells = out
                changed = True
                break
    return cells


def _initial_cells(g: Graph, colors: Optional[list[int]] = None) -> list[list[int]]:
    keys = colors if colors is not None else [0] * g.n
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(keys[v], []).append(v)
    return [groups[k] for k in sorted(groups)]


def _are_twins(g: Graph, u: int, v: int) -> bool:
    bu, bv = 1 << u, 1 << v
    return g.adj[u] & ~bv == g.adj[v] & ~bu


def canonical_form(g: Graph, colors: Optional[list[int]] = None) -> tuple[int, ...]:
    """Canonical relabelled adjacency; equal iff the (coloured) graphs are isomorphic."""
    return canonical_labeling(g, colors)[0]


def canonical_labeling(g: Graph, colors: Optional[list[int]] = None) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Return ``(form, order)``: ``relabel(g, order).adj == form``."""
    if g.n == 0:
        return (), ()
    best: list = [None, None]

    def leaf(order: list[int]) -> None:
        form = relabel(g, order).adj
        if best[0] is None or form < best[0]:
            best[0] = form
            best[1] = tuple(order)

    def search(cells: list[list[int]]) -> None:
        cells = refine(g, cells)
        if len(cells) == g.n:
            leaf([c[0] for c in cells])
            return
        target = min((i for i, c in enumerate(cells) if len(c) > 1), key=lambda i: (len(cells[i]), i))
        cell = cells[target]
        tried: list[int] = []
        for v in cell:
            if any(_are_twins(g, u, v) for u in tried):
                continue
            tried.append(v)
            rest = [u for u in cell if u != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    search(_initial_cells(g, colors))
    return best[0], best[1]


def find_isomorphism(g: Graph, h: Graph) -> Optional[dict[int, int]]:
    """A map ``phi`` from V(g) to V(h) preserving adjacency both ways, or None."""
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return None
    fg, og = canonical_labeling(g)
    fh, oh = canonical_labeling(h)
    if fg != fh:
        return None
    phi = {og[i]: oh[i] for i in range(g.n)}
    if not is_isomorphism(g, h, phi):  # pragma: no cover - guards the canonical form
        raise AssertionError("canonical labelling produced an invalid map")
    return phi


def is_isomorphism(g: Graph, h: Graph, phi: dict[int, int]) -> bool:
    if g.n != h.n or sorted(phi) != list(range(g.n)) or sorted(phi.values()) != list(range(h.n)):
        return False
    return all(g.has_edge(u, v) == h.has_edge(phi[u], phi[v])
               for u in range(g.n) for v in range(u + 1, g.n))


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None
