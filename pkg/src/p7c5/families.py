"""Generators and recognizers for the extremal families F1-F12, blowups of
C7 and the small counterexample graphs.

The parameter-free families are read from ``data/families.txt``; F9, F10
and F11 are built here from their hole templates.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Optional

import networkx as nx

from .decompose import twin_quotient
from .graph import Graph, GraphError, build, complement, cycle, is_connected
from .hole_structure import template
from .isomorphism import is_isomorphism

FIXED = ("F1", "F2", "F3", "F4", "F5", "F6", "F7", "F8", "F12")
PARAMETRIC = ("F9", "F10", "F11")
FAMILIES = ("F1", "F2", "F3", "F4", "F5", "F6", "F7", "F8", "F9", "F10", "F11", "F12")


class Unsupported(GraphError):
    """Requested graph has no adjacency data in this package."""


@dataclass(frozen=True)
class FamilySpec:
    """One member of F1-F12.

    F9 uses t1 = t3 and t2 = t4, F10 uses t1 = t3, F11 uses t1p = t2p; all
    other parameters must be left unset.
    """

    family: str
    t1: Optional[int] = None
    t2: Optional[int] = None
    t3: Optional[int] = None
    t4: Optional[int] = None
    t1p: Optional[int] = None
    t2p: Optional[int] = None

    def __post_init__(self) -> None:
        f = self.family
        if f not in FAMILIES:
            raise ValueError(f"unknown family {f!r}")
        given = {k for k in ("t1", "t2", "t3", "t4", "t1p", "t2p") if getattr(self, k) is not None}
        need = {"F9": {"t1", "t2", "t3", "t4"}, "F10": {"t1", "t3"}, "F11": {"t1p", "t2p"}}.get(f, set())
        if given != need:
            raise ValueError(f"{f} takes parameters {sorted(need) or 'none'}, got {sorted(given)}")
        if any(getattr(self, k) < 1 for k in need):
            raise ValueError(f"{f} parameters must be >= 1")
        if f in ("F9", "F10") and self.t1 != self.t3:
            raise ValueError("t1 must equal t3")
        if f == "F9" and self.t2 != self.t4:
            raise ValueError("t2 must equal t4")
        if f == "F11" and self.t1p != self.t2p:
            raise ValueError("t1p must equal t2p")

    @classmethod
    def make(cls, family: str, t1: Optional[int] = None, t2: Optional[int] = None,
             tp: Optional[int] = None) -> "FamilySpec":
        family = family.upper()
        if family == "F9":
            return cls(family, t1=t1, t2=t2, t3=t1, t4=t2)
        if family == "F10":
            return cls(family, t1=t1, t3=t1)
        if family == "F11":
            return cls(family, t1p=tp, t2p=tp)
        return cls(family)

    def label(self) -> str:
        if self.family == "F9":
            return f"F9(t1={self.t1},t2={self.t2})"
        if self.family == "F10":
            return f"F10(t1={self.t1})"
        if self.family == "F11":
            return f"F11(t'={self.t1p})"
        return self.family


def parameter_grid(limit: int = 3) -> list[FamilySpec]:
    """Every family member with parameters in 1..limit."""
    out = [FamilySpec(f) for f in ("F1", "F2", "F3", "F4", "F5", "F6", "F7", "F8")]
    out += [FamilySpec.make("F9", a, b) for a in range(1, limit + 1) for b in range(1, limit + 1)]
    out += [FamilySpec.make("F10", a) for a in range(1, limit + 1)]
    out += [FamilySpec.make("F11", tp=a) for a in range(1, limit + 1)]
    out.append(FamilySpec("F12"))
    return out


# -- data file ----------------------------------------------------------------

@dataclass(frozen=True)
class NamedGraph:
    graph: Graph
    names: tuple[str, ...]

    def index(self, name: str) -> int:
        return self.names.index(name)


def parse_family_data(text: str) -> dict[str, NamedGraph]:
    out: dict[str, NamedGraph] = {}
    gid = None
    names: list[str] = []
    edges: list[tuple[int, int]] = []
    seen_format = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "format":
            if rest != ["1"]:
                raise ValueError(f"line {lineno}: unsupported data format {rest}")
            seen_format = True
        elif head == "graph":
            if gid is not None:
                raise ValueError(f"line {lineno}: nested graph block")
            gid, names, edges = rest[0], [], []
        elif head == "vertices":
            names = rest
        elif head == "end":
            if gid is None:
                raise ValueError(f"line {lineno}: 'end' outside a block")
            out[gid] = NamedGraph(build(len(names), edges), tuple(names))
            gid = None
        else:
            if gid is None or len(rest) != 1:
                raise ValueError(f"line {lineno}: bad edge line {raw!r}")
            try:
                edges.append((names.index(head), names.index(rest[0])))
            except ValueError:
                raise ValueError(f"line {lineno}: unknown vertex in {raw!r}") from None
    if not seen_format or gid is not None:
        raise ValueError("family data missing format line or unterminated block")
    return out


@lru_cache(maxsize=1)
def family_data() -> dict[str, NamedGraph]:
    text = resources.files("p7c5").joinpath("data/families.txt").read_text()
    return parse_family_data(text)


# -- generators ---------------------------------------------------------------

_KINDS = {"a": "A", "b": "B", "bb": "Bbar", "d": "D"}


def _role(name: str) -> tuple[str, int]:
    stem = name.rstrip("0123456789")
    return _KINDS[stem], int(name[len(stem):])


def _from_roles(roles: list[tuple[str, str]], extra: list[tuple[str, str]]) -> NamedGraph:
    """7-hole v1..v7 plus vertices ``(name, role)`` joined by their templates."""
    names = [f"v{i}" for i in range(1, 8)] + [n for n, _ in roles]
    edges = [(i, (i + 1) % 7) for i in range(7)]
    for k, (_, role) in enumerate(roles):
        kind, i = _role(role)
        edges += [(j - 1, 7 + k) for j in sorted(template(kind, i))]
    edges += [(names.index(u), names.index(w)) for u, w in extra]
    return NamedGraph(build(len(names), edges), tuple(names))


def _f9_roles(t1: int, t2: int) -> NamedGraph:
    roles = [(f"s{k}", "a2") for k in range(t1)] + [(f"r{k}", "a7") for k in range(t1)]
    roles += [(f"p{k}", "a2") for k in range(t2)] + [(f"q{k}", "a4") for k in range(t2)]
    roles += [("b2", "b2"), ("bb1", "bb1"), ("bb3", "bb3")]
    extra = [(f"s{k}", f"r{k}") for k in range(t1)] + [(f"p{k}", f"q{k}") for k in range(t2)]
    return _from_roles(roles, extra)


def _f11_roles(tp: int) -> NamedGraph:
    roles = [(f"s{k}", "a2") for k in range(tp)] + [(f"q{k}", "a4") for k in range(tp)]
    roles += [("b2", "b2"), ("b4", "b4"), ("bb1", "bb1"), ("bb3", "bb3")]
    extra = [(f"s{k}", f"q{k}") for k in range(tp)] + [("b4", "bb1")]
    return _from_roles(roles, extra)


def named_family(spec: FamilySpec) -> NamedGraph:
    """The family graph together with a name for each vertex.

    T1 = s*, T3 = r*, T2 = p*, T4 = q* in F9/F10; T'1 = s*, T'2 = q* in F11.
    """
    if spec.family == "F9":
        return _f9_roles(spec.t1, spec.t2)
    if spec.family == "F10":
        return _f9_roles(spec.t1, 0)
    if spec.family == "F11":
        return _f11_roles(spec.t1p)
    return family_data()[spec.family]


def generate_family(spec: FamilySpec) -> Graph:
    return named_family(spec).graph


def template_rebuild(fid: str) -> NamedGraph:
    """Rebuild a fixed family from its vertex names and the stored edges among
    attachment vertices only; used to cross-check the data file."""
    ng = family_data()[fid]
    roles = [(n, n) for n in ng.names[7:]]
    extra = [(ng.names[u], ng.names[v]) for u, v in ng.graph.edges() if u >= 7 and v >= 7]
    return _from_roles(roles, extra)


@dataclass(frozen=True)
class BlowupSpec:
    """Blowup of C7: bag i has ``sizes[i]`` vertices, bags i and i+1 are complete."""

    sizes: tuple[int, ...]
    mode: str = "stable"

    def __post_init__(self) -> None:
        if len(self.sizes) != 7:
            raise ValueError("a C7 blowup needs 7 bag sizes")
        if any(s < 1 for s in self.sizes):
            raise ValueError("bag sizes must be positive")
        if self.mode not in ("stable", "clique"):
            raise ValueError(f"mode must be 'stable' or 'clique', got {self.mode!r}")


def bags(sizes: tuple[int, ...]) -> list[range]:
    out, start = [], 0
    for s in sizes:
        out.append(range(start, start + s))
        start += s
    return out


def generate_blowup(spec: BlowupSpec) -> Graph:
    bs = bags(spec.sizes)
    edges = []
    for i, bag in enumerate(bs):
        nxt = bs[(i + 1) % 7]
        edges += [(u, v) for u in bag for v in nxt]
        if spec.mode == "clique":
            edges += [(u, v) for u in bag for v in bag if u < v]
    return build(sum(spec.sizes), edges)


def generate_counterexample(which: str, t: Optional[int] = None) -> Graph:
    """G3(t) is the t-size clique blowup of C7, G4 is the complement of C7."""
    key = which.upper()
    if key == "G3":
        if t is None or t < 1:
            raise ValueError("G3 needs t >= 1")
        return generate_blowup(BlowupSpec((t,) * 7, "clique"))
    if key == "G4":
        return complement(cycle(7))
    if key in ("G1", "G2"):
        if key not in family_data():
            raise Unsupported(f"{key} adjacency is not transcribed in the family data file")
        return family_data()[key].graph
    raise ValueError(f"unknown counterexample {which!r}")


# -- recognition ----------------------------------------------------------------

def _nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def family_isomorphism(g: Graph, h: Graph) -> Optional[dict[int, int]]:
    """Isomorphism g -> h via VF2++, re-verified edge by edge."""
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return None
    phi = nx.vf2pp_isomorphism(_nx(g), _nx(h))
    if phi is None:
        return None
    if not is_isomorphism(g, h, phi):  # pragma: no cover
        raise AssertionError("vf2pp returned an invalid map")
    return dict(phi)


def _candidates(n: int) -> list[FamilySpec]:
    out = [FamilySpec(f) for f in FIXED if family_data()[f].graph.n == n]
    if n >= 12 and n % 2 == 0:
        k = (n - 10) // 2
        out += [FamilySpec.make("F10", k)]
        out += [FamilySpec.make("F9", a, k - a) for a in range(1, k)]
    if n >= 13 and n % 2 == 1:
        out.append(FamilySpec.make("F11", tp=(n - 11) // 2))
    return out


def classify_family_all(g: Graph) -> list[FamilySpec]:
    """Every family member isomorphic to ``g``, in family then parameter order.

    Parameters are inferred from n (each parametric family grows by two
    vertices per unit), then candidates are pruned by edge count and degree
    multiset before the isomorphism test. Several members coincide up to
    isomorphism, so the list can be longer than one.
    """
    degs = sorted(g.degrees())
    out = []
    for spec in _candidates(g.n):
        h = generate_family(spec)
        if h.m == g.m and sorted(h.degrees()) == degs and family_isomorphism(g, h) is not None:
            out.append(spec)
    return sorted(out, key=_order)


def _order(spec: FamilySpec) -> tuple:
    return (FAMILIES.index(spec.family), spec.t1 or 0, spec.t2 or 0, spec.t1p or 0)


def classify_family(g: Graph) -> Optional[FamilySpec]:
    """The first family member isomorphic to ``g``, or None."""
    found = classify_family_all(g)
    return found[0] if found else None


def blowup_bags(g: Graph, mode: str = "stable") -> Optional[list[frozenset[int]]]:
    """The bags of a C7 blowup (``mode`` stable or clique) in cycle order, or None.

    The walk starts at the bag of vertex 0 and heads to the neighbouring bag
    with the smaller least vertex.
    """
    if mode == "clique":
        tq = twin_quotient(complement(g))
        base = complement(tq.quotient)
    elif mode == "stable":
        tq = twin_quotient(g)
        base = tq.quotient
    else:
        raise ValueError(f"mode must be 'stable' or 'clique', got {mode!r}")
    if base.n != 7 or any(base.degree(v) != 2 for v in range(7)) or not is_connected(base):
        return None
    order, prev, cur = [0], None, 0
    while len(order) < 7:
        nbrs = [u for u in base.neighbors(cur) if u != prev]
        nxt = min(nbrs, key=lambda c: min(tq.classes[c])) if prev is None else nbrs[0]
        order.append(nxt)
        prev, cur = cur, nxt
    return [tq.classes[c] for c in order]


def recognize_c7_blowup(g: Graph, mode: str = "stable") -> Optional[tuple[int, ...]]:
    """Bag sizes if ``g`` is a (clique) blowup of C7, else None."""
    bs = blowup_bags(g, mode)
    return tuple(len(b) for b in bs) if bs is not None else None
