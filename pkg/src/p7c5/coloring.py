"""Clique and chromatic number oracles, the structural coloring pipeline and
the perfect-division coloring.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Optional

from . import detect, families
from .decompose import (
    EXTRACT_UNIVERSAL_CLIQUE,
    REMOVE_COMPARABLE,
    SPLIT_CLIQUE_CUTSET,
    ReductionStep,
    find_clique_cutset,
    find_comparable_pair,
    find_homogeneous_set,
    find_nonclique_homogeneous_set,
    find_universal_clique,
)
from .graph import Graph, GraphError, bits, components_masks, induced, is_connected, to_mask, to_set

EXACT_LIMIT = 24

SPLIT_COMPONENTS = "SPLIT_COMPONENTS"
REMOVE_LOW_DEGREE = "REMOVE_LOW_DEGREE"
PERFECT_LEAF = "PERFECT_LEAF"
BASE_FAMILY = "BASE_FAMILY"
BASE_BLOWUP = "BASE_BLOWUP"
BASE_CLIQUE_BLOWUP = "BASE_CLIQUE_BLOWUP"
COMPLETE = "COMPLETE"
DIVIDE = "DIVIDE"


class ColoringError(RuntimeError):
    pass


class ClassViolation(ColoringError):
    """The input is not in the requested class; carries the pattern witness."""

    def __init__(self, cls: str, witness: detect.Embedding):
        super().__init__(f"graph is not {cls}-class: contains {witness.pattern.name} at {witness.image}")
        self.cls = cls
        self.witness = witness


class StructureTheoremViolation(ColoringError):
    """A class member with no reduction and no recognised base case."""


class BoundViolation(ColoringError):
    def __init__(self, coloring: "Coloring", bound: int):
        super().__init__(f"used {coloring.colors_used} colors, bound is {bound}")
        self.coloring = coloring
        self.bound = bound


class TheoremViolation(ColoringError):
    """No perfect division found for a graph that should have one."""


class OracleError(ColoringError):
    """An exact oracle disagreed with a fact it must satisfy."""


@dataclass
class Coloring:
    assignment: dict[int, int]
    colors_used: int
    trace: list[ReductionStep] = field(default_factory=list)

    @classmethod
    def from_assignment(cls, assignment: dict[int, int], trace: Optional[list] = None) -> "Coloring":
        return cls(dict(sorted(assignment.items())), len(set(assignment.values())), trace or [])

    def is_proper(self, g: Graph) -> bool:
        if sorted(self.assignment) != list(range(g.n)):
            return False
        return all(self.assignment[u] != self.assignment[v] for u, v in g.edges())

    def check(self, g: Graph) -> None:
        if not self.is_proper(g):
            raise OracleError("coloring is not proper")
        if self.colors_used != len(set(self.assignment.values())):
            raise OracleError("colors_used does not match the assignment")

    def lines(self) -> list[str]:
        return [f"{v}:{c}" for v, c in self.assignment.items()]


# -- oracles ----------------------------------------------------------------

def max_clique(g: Graph) -> tuple[int, frozenset[int]]:
    """Maximum clique by branch and bound with a greedy coloring bound."""
    adj = g.adj
    best = [0, 0]

    def color_sort(p: int) -> tuple[list[int], list[int]]:
        order, bounds = [], []
        k = 0
        rest = p
        while rest:
            k += 1
            q = rest
            while q:
                v = (q & -q).bit_length() - 1
                q &= ~adj[v] & ~(1 << v)
                rest &= ~(1 << v)
                order.append(v)
                bounds.append(k)
        return order, bounds

    def expand(r: int, size: int, p: int) -> None:
        order, bounds = color_sort(p)
        for idx in range(len(order) - 1, -1, -1):
            if size + bounds[idx] <= best[0]:
                return
            v = order[idx]
            np = p & adj[v]
            nr = r | (1 << v)
            if np:
                expand(nr, size + 1, np)
            elif size + 1 > best[0]:
                best[0], best[1] = size + 1, nr
            p &= ~(1 << v)

    if g.n:
        expand(0, 0, g.full)
    return best[0], to_set(best[1])


def clique_number(g: Graph) -> int:
    return max_clique(g)[0]


def _pick(adj: tuple[int, ...], color: list[int], uncolored: int) -> int:
    best_v, best_key = -1, None
    for v in bits(uncolored):
        sat = 0
        for u in bits(adj[v] & ~uncolored):
            sat |= 1 << color[u]
        key = (sat.bit_count(), (adj[v] & uncolored).bit_count())
        if best_key is None or key > best_key:
            best_v, best_key = v, key
    return best_v


def k_coloring(g: Graph, k: int) -> Optional[list[int]]:
    """A proper coloring with colors 0..k-1, or None (DSATUR backtracking)."""
    n = g.n
    adj = g.adj
    color = [-1] * n

    def rec(uncolored: int, used: int) -> bool:
        if not uncolored:
            return True
        v = _pick(adj, color, uncolored)
        forb = 0
        for u in bits(adj[v] & ~uncolored):
            forb |= 1 << color[u]
        for c in range(min(k, used + 1)):
            if not (forb >> c) & 1:
                color[v] = c
                if rec(uncolored & ~(1 << v), max(used, c + 1)):
                    return True
        color[v] = -1
        return False

    return list(color) if rec(g.full, 0) else None


def greedy_dsatur(g: Graph) -> list[int]:
    color = [-1] * g.n
    uncolored = g.full
    while uncolored:
        v = _pick(g.adj, color, uncolored)
        forb = 0
        for u in bits(g.adj[v] & ~uncolored):
            forb |= 1 << color[u]
        c = 0
        while (forb >> c) & 1:
            c += 1
        color[v] = c
        uncolored &= ~(1 << v)
    return color


def exact_chromatic(g: Graph, limit: int = EXACT_LIMIT) -> tuple[int, Coloring]:
    """Chromatic number with an optimal coloring; components are solved apart."""
    if g.n > limit:
        raise detect.TooLarge(f"exact coloring limited to {limit} vertices, got {g.n}")
    assignment: dict[int, int] = {}
    chi = 0
    for comp in components_masks(g):
        h, ids = induced(g, bits(comp))
        lo = clique_number(h)
        hi = max(greedy_dsatur(h)) + 1
        col = None
        for k in range(lo, hi):
            col = k_coloring(h, k)
            if col is not None:
                break
        if col is None:
            col = greedy_dsatur(h)
        chi = max(chi, max(col) + 1)
        for i, c in enumerate(col):
            assignment[ids[i]] = c
    return chi, Coloring.from_assignment(assignment)


# -- structural pipeline -----------------------------------------------------

def class_bound(cls: str, omega: int) -> int:
    cls = cls.upper()
    if cls == "KP":
        return omega + 1
    if cls in ("DIAMOND", "PAW"):
        return max(3, omega)
    raise ValueError(f"structural_color supports KP, DIAMOND and PAW, not {cls!r}")


@dataclass
class PipelineConfig:
    perfect_limit: int = detect.PERFECT_LIMIT
    family_limit: int = 40


class _Pipeline:
    def __init__(self, root: Graph, cls: str, cfg: PipelineConfig):
        self.root = root
        self.cls = cls.upper()
        self.cfg = cfg
        self.trace: list[ReductionStep] = []

    def step(self, kind: str, ids: tuple[int, ...], **payload) -> None:
        self.trace.append(ReductionStep(kind, frozenset(ids), payload))

    def color(self, g: Graph, ids: tuple[int, ...]) -> list[int]:
        """Color ``g`` whose vertex i is root vertex ``ids[i]``."""
        n = g.n
        if n == 0:
            return []
        comps = components_masks(g)
        if len(comps) > 1:
            self.step(SPLIT_COMPONENTS, ids, parts=[[ids[v] for v in bits(c)] for c in comps])
            out = [0] * n
            for comp in comps:
                sub = self._sub(g, ids, bits(comp))
                for v, c in zip(bits(comp), sub):
                    out[v] = c
            return out
        if g.is_clique(g.full):
            self.step(COMPLETE, ids)
            return list(range(n))
        pair = find_comparable_pair(g)
        if pair is not None:
            x, y = pair
            self.step(REMOVE_COMPARABLE, ids, x=ids[x], y=ids[y])
            return self._reinsert(g, ids, x)
        k = find_universal_clique(g)
        if k is not None:
            self.step(EXTRACT_UNIVERSAL_CLIQUE, ids, K=sorted(ids[v] for v in k))
            rest = [v for v in range(n) if v not in k]
            sub = self._sub(g, ids, rest)
            out = [0] * n
            for v, c in zip(rest, sub):
                out[v] = c
            base = max(sub, default=-1) + 1
            for j, v in enumerate(sorted(k)):
                out[v] = base + j
            return out
        cut = find_clique_cutset(g)
        if cut is not None:
            return self._split(g, ids, cut)
        if n <= self.cfg.perfect_limit and detect.is_perfect(g):
            omega = clique_number(g)
            col = k_coloring(g, omega)
            if col is None:
                raise OracleError(f"perfect graph on {ids} has no {omega}-coloring")
            self.step(PERFECT_LEAF, ids, omega=omega)
            return col
        bound = class_bound(self.cls, clique_number(g))
        low = next((v for v in range(n) if g.degree(v) < bound), None)
        if low is not None:
            self.step(REMOVE_LOW_DEGREE, ids, x=ids[low], bound=bound)
            return self._reinsert(g, ids, low)
        return self._base(g, ids)

    def _sub(self, g: Graph, ids: tuple[int, ...], keep) -> list[int]:
        h, local = induced(g, keep)
        return self.color(h, tuple(ids[v] for v in local))

    def _reinsert(self, g: Graph, ids: tuple[int, ...], x: int) -> list[int]:
        rest = [v for v in range(g.n) if v != x]
        sub = self._sub(g, ids, rest)
        out = [0] * g.n
        for v, c in zip(rest, sub):
            out[v] = c
        taken = {out[u] for u in g.neighbors(x)}
        out[x] = next(c for c in range(g.n) if c not in taken)
        return out

    def _split(self, g: Graph, ids: tuple[int, ...], cut: frozenset[int]) -> list[int]:
        kmask = to_mask(cut)
        comps = components_masks(g, g.full & ~kmask)
        self.step(SPLIT_CLIQUE_CUTSET, ids, K=sorted(ids[v] for v in cut),
                  parts=[sorted(ids[v] for v in bits(c)) for c in comps])
        out: dict[int, int] = {}
        korder = sorted(cut)
        target: Optional[dict[int, int]] = None
        for comp in comps:
            piece = sorted(bits(comp | kmask))
            sub = self._sub(g, ids, piece)
            local = dict(zip(piece, sub))
            if target is None:
                target = {v: local[v] for v in korder}
                perm = {c: c for c in set(sub)}
            else:
                perm = {local[v]: target[v] for v in korder}
                reserved = set(target.values())
                free = (c for c in range(g.n) if c not in reserved)
                for c in sorted(set(sub) - set(perm)):
                    perm[c] = next(free)
            for v, c in local.items():
                out[v] = perm[c]
        return [out[v] for v in range(g.n)]

    def _base(self, g: Graph, ids: tuple[int, ...]) -> list[int]:
        if g.n <= self.cfg.family_limit:
            spec = families.classify_family(g)
            if spec is not None:
                col = k_coloring(g, 3)
                if col is None:
                    raise StructureTheoremViolation(f"{spec.label()} on {ids} is not 3-colorable")
                self.step(BASE_FAMILY, ids, family=spec.label())
                return col
        bs = families.blowup_bags(g, "stable")
        if bs is not None:
            self.step(BASE_BLOWUP, ids, sizes=[len(b) for b in bs])
            out = [0] * g.n
            for i, bag in enumerate(bs):
                for v in bag:
                    out[v] = (0, 1, 0, 1, 0, 1, 2)[i]
            return out
        bs = families.blowup_bags(g, "clique")
        if bs is not None:
            self.step(BASE_CLIQUE_BLOWUP, ids, sizes=[len(b) for b in bs])
            return _clique_blowup_coloring(g, bs)
        m = detect.class_membership(g, self.cls)
        if not m.member:
            w = m.witness
            raise ClassViolation(self.cls, detect.Embedding(w.pattern, tuple(ids[v] for v in w.image)))
        raise StructureTheoremViolation(
            f"{self.cls}-class graph on vertices {sorted(ids)} has no reduction and no known base case")


def _clique_blowup_coloring(g: Graph, bs: list[frozenset[int]]) -> list[int]:
    """Optimal coloring of a clique blowup of C7.

    A color class meets at most three bags, so max(largest adjacent bag
    pair, ceil(n/3)) colors are needed; the search starts there.
    """
    sizes = [len(b) for b in bs]
    k = max(max(sizes[i] + sizes[(i + 1) % 7] for i in range(7)), -(-g.n // 3))
    while True:
        col = k_coloring(g, k)
        if col is not None:
            return col
        k += 1


def structural_color(g: Graph, cls: str, config: Optional[PipelineConfig] = None) -> Coloring:
    """Color a graph of the KP, DIAMOND or PAW class within its bound.

    Reductions, tried in order at every node of the recursion: connected
    components, complete graphs, comparable pairs, universal cliques, clique
    cutsets, perfect leaves, then vertices of degree below the bound (a
    minimal counterexample has none). What remains must be a recognised
    base graph. Class membership is only tested when the pipeline is stuck.
    """
    bound = class_bound(cls, clique_number(g))
    pipe = _Pipeline(g, cls, config or PipelineConfig())
    col = pipe.color(g, tuple(range(g.n)))
    out = Coloring.from_assignment(dict(enumerate(col)), pipe.trace)
    out.check(g)
    if out.colors_used > bound:
        raise BoundViolation(out, bound)
    return out


def replay_trace(g: Graph, trace: list[ReductionStep]) -> bool:
    """Re-check every recorded reduction against ``g``."""
    for st in trace:
        h, ids = induced(g, sorted(st.on))
        loc = {v: i for i, v in enumerate(ids)}
        p = st.payload
        if st.kind == REMOVE_COMPARABLE:
            x, y = loc[p["x"]], loc[p["y"]]
            if h.has_edge(x, y) or h.adj[x] & ~h.adj[y]:
                return False
        elif st.kind == EXTRACT_UNIVERSAL_CLIQUE:
            k = to_mask(loc[v] for v in p["K"])
            if not h.is_clique(k) or any(h.adj[v] | (1 << v) != h.full for v in bits(k)):
                return False
        elif st.kind == SPLIT_CLIQUE_CUTSET:
            k = to_mask(loc[v] for v in p["K"])
            if not h.is_clique(k) or len(components_masks(h, h.full & ~k)) < 2:
                return False
        elif st.kind == SPLIT_COMPONENTS:
            if is_connected(h):
                return False
        elif st.kind == COMPLETE:
            if not h.is_clique(h.full):
                return False
        elif st.kind == PERFECT_LEAF:
            if not detect.is_perfect(h):
                return False
        elif st.kind == REMOVE_LOW_DEGREE:
            if h.degree(loc[p["x"]]) >= p["bound"]:
                return False
        elif st.kind == BASE_FAMILY:
            spec = families.classify_family(h)
            if spec is None:
                return False
        elif st.kind in (BASE_BLOWUP, BASE_CLIQUE_BLOWUP):
            mode = "stable" if st.kind == BASE_BLOWUP else "clique"
            if families.recognize_c7_blowup(h, mode) is None:
                return False
    return True


# -- perfect division -------------------------------------------------------

def _perfect(g: Graph, limit: int) -> bool:
    return detect.is_perfect(g, limit)


def find_perfect_division(g: Graph, limit: int = detect.PERFECT_LIMIT) -> Optional[tuple[frozenset[int], frozenset[int]]]:
    """A partition (A, B) with G[A] perfect and omega(G[B]) < omega(G).

    First tries A = {v} + M(v), B = N(v) over vertices by decreasing degree;
    failing that, splits along a homogeneous set and combines the divisions
    of the two smaller graphs. Every returned partition is re-verified.
    """
    if g.n == 0:
        return frozenset(), frozenset()
    omega = clique_number(g)
    res = _division(g, limit, omega)
    if res is None:
        return None
    a, b = res
    ha, _ = induced(g, sorted(a))
    hb, _ = induced(g, sorted(b))
    if not _perfect(ha, limit) or (b and clique_number(hb) >= omega):
        raise TheoremViolation("constructed division failed verification")
    return res


def _division(g: Graph, limit: int, omega: int) -> Optional[tuple[frozenset[int], frozenset[int]]]:
    n = g.n
    if _perfect(g, limit):
        return frozenset(range(n)), frozenset()
    for v in sorted(range(n), key=lambda u: (-g.degree(u), u)):
        nb = g.adj[v]
        part = g.full & ~nb
        h, _ = induced(g, bits(part))
        if _perfect(h, limit):
            return to_set(part), to_set(nb)
    s = find_nonclique_homogeneous_set(g)
    if s is not None:
        return _divide_module(g, limit, s)
    s = find_homogeneous_set(g)
    if s is not None:
        return _divide_twins(g, limit, omega, s)
    return None


def _lift(ids: tuple[int, ...], part: tuple[frozenset[int], frozenset[int]]) -> tuple[set[int], set[int]]:
    return {ids[v] for v in part[0]}, {ids[v] for v in part[1]}


def _divide_module(g: Graph, limit: int, s: frozenset[int]) -> Optional[tuple[frozenset[int], frozenset[int]]]:
    hs, sids = induced(g, sorted(s))
    _, kloc = max_clique(hs)
    k = {sids[v] for v in kloc}
    keep = [v for v in range(g.n) if v not in s or v in k]
    h2, ids2 = induced(g, keep)
    d2 = _division(h2, limit, clique_number(h2))
    if d2 is None:
        return None
    a2, b2 = _lift(ids2, d2)
    if not k & a2:
        return frozenset(a2), frozenset(b2 | s)
    ds = _division(hs, limit, len(k))
    if ds is None:
        return None
    a_s, b_s = _lift(sids, ds)
    return frozenset((a2 - k) | a_s), frozenset((b2 - k) | b_s)


def _divide_twins(g: Graph, limit: int, omega: int, s: frozenset[int]) -> Optional[tuple[frozenset[int], frozenset[int]]]:
    x = max(s)
    keep = [v for v in range(g.n) if v != x]
    h, ids = induced(g, keep)
    d = _division(h, limit, clique_number(h))
    if d is None:
        return None
    a, b = _lift(ids, d)
    options = [(a | {x}, b), (a, b | {x})] if s & a else [(a, b | {x}), (a | {x}, b)]
    for pa, pb in options:
        ha, _ = induced(g, sorted(pa))
        hb, _ = induced(g, sorted(pb))
        if _perfect(ha, limit) and (not pb or clique_number(hb) < omega):
            return frozenset(pa), frozenset(pb)
    return None


def divisible_color(g: Graph, limit: int = detect.PERFECT_LIMIT) -> Coloring:
    """Coloring with at most C(omega+1, 2) colors via repeated perfect division.

    Each round colors the perfect part A optimally with fresh colors and
    continues on B, whose clique number is strictly smaller.
    """
    omega = clique_number(g)
    assignment: dict[int, int] = {}
    trace: list[ReductionStep] = []
    for comp in components_masks(g):
        h, ids = induced(g, bits(comp))
        rest = tuple(range(h.n))
        offset = 0
        while rest:
            sub, sids = induced(h, rest)
            div = find_perfect_division(sub, limit)
            if div is None:
                raise TheoremViolation(f"no perfect division of the graph on {[ids[sids[v]] for v in range(sub.n)]}")
            a, b = div
            ha, aids = induced(sub, sorted(a))
            wa = clique_number(ha)
            col = k_coloring(ha, wa)
            if col is None:
                raise OracleError("perfect part has no omega-coloring")
            for v, c in zip(aids, col):
                assignment[ids[sids[v]]] = offset + c
            trace.append(ReductionStep(DIVIDE, frozenset(ids[sids[v]] for v in range(sub.n)),
                                       {"A": sorted(ids[sids[v]] for v in a), "colors": wa}))
            offset += wa
            rest = tuple(sids[v] for v in sorted(b))
    out = Coloring.from_assignment(assignment, trace)
    out.check(g)
    if out.colors_used > comb(omega + 1, 2):
        raise BoundViolation(out, comb(omega + 1, 2))
    return out
