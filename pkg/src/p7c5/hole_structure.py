"""Attachments of vertices to a 7-hole and the properties M1-M26.

Hole positions are 1-indexed: ``L[0]`` is v1, ..., ``L[6]`` is v7, and all
index arithmetic goes through :func:`wrap`, which maps any integer onto
1..7 modulo 7.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from . import detect
from .decompose import find_comparable_pair
from .graph import Graph, GraphError, bits, set_neighborhood, to_mask, to_set

IDX = range(1, 8)


def wrap(i: int) -> int:
    return (i - 1) % 7 + 1


def _offsets(i: int, *offs: int) -> frozenset[int]:
    return frozenset(wrap(i + o) for o in offs)


TEMPLATES: dict[str, tuple[int, ...]] = {
    "A": (0, 2),
    "B": (0, 2, 3),
    "Bbar": (0, 1, 3),
    "D": (0, 2, 3, 5),
}
XYZ_TEMPLATES: dict[str, tuple[int, ...]] = {
    "X": (0, 2),
    "Y": (0, 1, 2),
}


def template(kind: str, i: int) -> frozenset[int]:
    """Hole positions (1..7) a vertex of ``kind``-set number ``i`` sees."""
    offs = TEMPLATES.get(kind) or XYZ_TEMPLATES[kind]
    return _offsets(i, *offs)


def _lookup(templates: dict[str, tuple[int, ...]]) -> dict[frozenset[int], tuple[str, int]]:
    table = {}
    for kind, offs in templates.items():
        for i in IDX:
            key = _offsets(i, *offs)
            assert key not in table
            table[key] = (kind, i)
    return table


_ATTACH = _lookup(TEMPLATES)
_XYZ = _lookup(XYZ_TEMPLATES)


def check_seven_hole(g: Graph, hole: tuple[int, ...]) -> None:
    if len(hole) != 7 or len(set(hole)) != 7 or any(not 0 <= v < g.n for v in hole):
        raise GraphError(f"{hole} is not a 7-tuple of distinct vertices")
    for a in range(7):
        for b in range(a + 1, 7):
            want = (b - a) in (1, 6)
            if g.has_edge(hole[a], hole[b]) != want:
                raise GraphError(f"{hole} is not an induced 7-hole")


def find_seven_hole(g: Graph) -> Optional[tuple[int, ...]]:
    """An induced 7-cycle in cyclic order (lexicographically least), or None."""
    e = detect.find_induced(g, detect.HOLE(7))
    return e.image if e else None


def seven_holes(g: Graph) -> Iterator[tuple[int, ...]]:
    """Every induced 7-hole once: least vertex first, then the smaller neighbour."""
    adj = g.adj
    for s in range(g.n):
        above = g.full & ~((1 << (s + 1)) - 1)
        ns = adj[s] & above

        def grow(walk: list[int], on_path: int, blocked: int) -> Iterator[tuple[int, ...]]:
            end = walk[-1]
            cand = adj[end] & above & ~on_path & ~blocked
            for c in bits(cand):
                if (ns >> c) & 1:
                    if len(walk) == 6 and c > walk[1]:
                        yield (*walk, c)
                    continue
                if len(walk) < 6:
                    yield from grow(walk + [c], on_path | (1 << c), blocked | adj[end])

        for p1 in bits(ns):
            yield from grow([s, p1], (1 << s) | (1 << p1), 0)


def _hole_profile(g: Graph, hole: tuple[int, ...], x: int) -> frozenset[int]:
    return frozenset(k + 1 for k, v in enumerate(hole) if g.has_edge(x, v))


@dataclass(frozen=True)
class HoleAttachment:
    """Partition of V(G) around the hole ``L``.

    ``A[i]`` etc. are keyed 1..7. ``spill`` collects vertices of N(L) whose
    hole neighbourhood matches no template; it is empty exactly when every
    neighbour of L falls into A, B, Bbar, D or I.
    """

    L: tuple[int, ...]
    A: dict[int, frozenset[int]]
    B: dict[int, frozenset[int]]
    Bbar: dict[int, frozenset[int]]
    D: dict[int, frozenset[int]]
    I: frozenset[int]
    R: frozenset[int]
    spill: frozenset[int] = field(default_factory=frozenset)

    @property
    def covers_neighborhood(self) -> bool:
        return not self.spill

    def family(self, kind: str) -> dict[int, frozenset[int]]:
        return {"A": self.A, "B": self.B, "Bbar": self.Bbar, "D": self.D}[kind]

    def union(self, kind: str) -> frozenset[int]:
        return frozenset().union(*self.family(kind).values())

    def parts(self) -> list[tuple[str, frozenset[int]]]:
        out = [("L", frozenset(self.L))]
        for kind in ("A", "B", "Bbar", "D"):
            for i in IDX:
                out.append((f"{kind}{i}", self.family(kind)[i]))
        out += [("I", self.I), ("R", self.R), ("spill", self.spill)]
        return out


def compute_attachments(g: Graph, hole: tuple[int, ...]) -> HoleAttachment:
    check_seven_hole(g, hole)
    fams: dict[str, dict[int, set[int]]] = {k: {i: set() for i in IDX} for k in TEMPLATES}
    center, far, spill = set(), set(), set()
    on_hole = set(hole)
    for x in range(g.n):
        if x in on_hole:
            continue
        prof = _hole_profile(g, hole, x)
        if not prof:
            far.add(x)
        elif len(prof) == 7:
            center.add(x)
        elif prof in _ATTACH:
            kind, i = _ATTACH[prof]
            fams[kind][i].add(x)
        else:
            spill.add(x)
    frz = {k: {i: frozenset(s) for i, s in d.items()} for k, d in fams.items()}
    return HoleAttachment(tuple(hole), frz["A"], frz["B"], frz["Bbar"], frz["D"],
                          frozenset(center), frozenset(far), frozenset(spill))


@dataclass(frozen=True)
class XYZAttachment:
    L: tuple[int, ...]
    X: dict[int, frozenset[int]]
    Y: dict[int, frozenset[int]]
    Z: frozenset[int]
    R: frozenset[int]
    spill: frozenset[int] = field(default_factory=frozenset)


def compute_xyz(g: Graph, hole: tuple[int, ...]) -> XYZAttachment:
    check_seven_hole(g, hole)
    fams: dict[str, dict[int, set[int]]] = {k: {i: set() for i in IDX} for k in XYZ_TEMPLATES}
    z, far, spill = set(), set(), set()
    on_hole = set(hole)
    for x in range(g.n):
        if x in on_hole:
            continue
        prof = _hole_profile(g, hole, x)
        if not prof:
            far.add(x)
        elif len(prof) == 7:
            z.add(x)
        elif prof in _XYZ:
            kind, i = _XYZ[prof]
            fams[kind][i].add(x)
        else:
            spill.add(x)
    return XYZAttachment(tuple(hole),
                         {i: frozenset(s) for i, s in fams["X"].items()},
                         {i: frozenset(s) for i, s in fams["Y"].items()},
                         frozenset(z), frozenset(far), frozenset(spill))


def find_center_anticenter(g: Graph, h: frozenset[int]) -> tuple[frozenset[int], frozenset[int]]:
    """Vertices outside ``h`` complete to it, and those anticomplete to it."""
    hm = to_mask(h)
    centers, anti = set(), set()
    for v in bits(g.full & ~hm):
        seen = g.adj[v] & hm
        if seen == hm:
            centers.add(v)
        if not seen:
            anti.add(v)
    return frozenset(centers), frozenset(anti)


# -- M1..M26 -----------------------------------------------------------------

@dataclass(frozen=True)
class MViolation:
    property_id: int
    witness: tuple[int, ...]
    index: int = 0

    def __str__(self) -> str:
        return f"M{self.property_id}: {self.witness}"


SetFn = Callable[[HoleAttachment, int], frozenset[int]]


def _S(kind: str, *offs: int) -> SetFn:
    def f(att: HoleAttachment, i: int) -> frozenset[int]:
        fam = att.family(kind)
        return frozenset().union(*(fam[wrap(i + o)] for o in offs))
    return f


def _D_except(off: int) -> SetFn:
    def f(att: HoleAttachment, i: int) -> frozenset[int]:
        return att.union("D") - att.D[wrap(i + off)]
    return f


def _R(att: HoleAttachment, i: int) -> frozenset[int]:
    return att.R


@dataclass(frozen=True)
class Rule:
    pid: int
    kind: str  # stable | at_most_one | complete | anticomplete | exclusive | matching
    first: SetFn
    second: Optional[SetFn] = None


RULES: tuple[Rule, ...] = (
    Rule(1, "stable", _S("A", 0)),
    Rule(1, "anticomplete", _S("A", 0), _R),
    Rule(2, "at_most_one", _S("B", 0)),
    Rule(2, "at_most_one", _S("Bbar", 0)),
    Rule(2, "at_most_one", _S("D", 0)),
    Rule(3, "complete", _S("A", 0), _S("A", 1, -1)),
    Rule(4, "anticomplete", _S("A", 0), _S("A", 3, -3)),
    Rule(5, "matching", _S("A", 0), _S("A", 2)),
    Rule(6, "exclusive", _S("B", 0), _S("B", 1, 3, 4, 6)),
    Rule(7, "anticomplete", _S("B", 0), _S("B", 2, 5)),
    Rule(8, "exclusive", _S("D", 0), _S("D", 1, 2, 3, 4, 5, 6)),
    Rule(9, "anticomplete", _S("A", 0), _S("B", 0, 2, 4, 5)),
    Rule(10, "complete", _S("A", 0), _S("B", 1)),
    Rule(11, "exclusive", _S("A", 0), _S("B", 6)),
    Rule(12, "anticomplete", _S("A", 0), _S("D", 0, 2, 4)),
    Rule(13, "exclusive", _S("A", 0), _S("D", 5, 6)),
    Rule(14, "anticomplete", _S("B", 0), _S("D", 5)),
    Rule(15, "exclusive", _S("B", 0), _D_except(5)),
    Rule(16, "exclusive", _S("Bbar", 0), _S("Bbar", 1, 3, 4, 6)),
    Rule(17, "anticomplete", _S("Bbar", 0), _S("Bbar", 2, 5)),
    Rule(18, "anticomplete", _S("A", 0), _S("Bbar", 1, 2, 4, 6)),
    Rule(19, "complete", _S("A", 0), _S("Bbar", 5)),
    Rule(20, "exclusive", _S("A", 0), _S("Bbar", 0)),
    Rule(21, "anticomplete", _S("Bbar", 0), _S("D", 0)),
    Rule(22, "exclusive", _S("Bbar", 0), _D_except(0)),
    Rule(23, "anticomplete", _S("Bbar", 0), _S("B", 0, 1, 2, 6)),
    Rule(24, "complete", _S("Bbar", 0), _S("B", 3)),
    Rule(25, "exclusive", _S("Bbar", 0), _S("B", 4, 5)),
)


def _rule_witnesses(g: Graph, rule: Rule, x_set: frozenset[int], y_set: frozenset[int]) -> Iterator[tuple[int, ...]]:
    xs = sorted(x_set)
    if rule.kind == "stable":
        for a, x in enumerate(xs):
            for y in xs[a + 1:]:
                if g.has_edge(x, y):
                    yield (x, y)
    elif rule.kind == "at_most_one":
        if len(xs) > 1:
            yield (xs[0], xs[1])
    elif rule.kind in ("complete", "anticomplete"):
        want = rule.kind == "complete"
        for x in xs:
            for y in sorted(y_set):
                if x != y and g.has_edge(x, y) != want:
                    yield (x, y)
    elif rule.kind == "exclusive":
        if xs and y_set:
            yield (xs[0], min(y_set))
    elif rule.kind == "matching":
        ym = to_mask(y_set)
        xm = to_mask(x_set)
        for x in xs:
            hits = sorted(bits(g.adj[x] & ym))
            if len(hits) > 1:
                yield (x, hits[0], hits[1])
        for y in sorted(y_set):
            hits = sorted(bits(g.adj[y] & xm))
            if len(hits) > 1:
                yield (y, hits[0], hits[1])
    else:  # pragma: no cover
        raise ValueError(rule.kind)


def _rule_sets(rule: Rule, att: HoleAttachment, i: int) -> tuple[frozenset[int], frozenset[int]]:
    second = rule.second(att, i) if rule.second else frozenset()
    return rule.first(att, i), second


def _m26(g: Graph, att: HoleAttachment, comparable_free: bool) -> Iterator[MViolation]:
    if not comparable_free:
        return
    allowed = to_mask(att.union("A")) | to_mask(att.L)
    for i in IDX:
        vi = att.L[i - 1]
        if g.adj[vi] & ~allowed:
            continue
        prev = att.A[wrap(i - 1)]
        if prev:
            yield MViolation(26, (vi, min(prev)), i)


def check_M_properties(g: Graph, att: HoleAttachment, comparable_free: Optional[bool] = None) -> list[MViolation]:
    """Every violation of M1-M26 for this attachment, in property order.

    M26 is only evaluated when G has no comparable pair; pass
    ``comparable_free`` to reuse a known answer.
    """
    if comparable_free is None:
        comparable_free = find_comparable_pair(g) is None
    out: list[MViolation] = []
    for rule in RULES:
        for i in IDX:
            first, second = _rule_sets(rule, att, i)
            for w in _rule_witnesses(g, rule, first, second):
                out.append(MViolation(rule.pid, w, i))
    out.extend(_m26(g, att, comparable_free))
    out.sort(key=lambda v: (v.property_id, v.index, v.witness))
    return _dedupe(out)


def _dedupe(vs: list[MViolation]) -> list[MViolation]:
    seen = set()
    out = []
    for v in vs:
        key = (v.property_id, v.index, v.witness)
        if key not in seen:
            seen.add(key)
            out.append(v)
    return out


def reproduces(g: Graph, att: HoleAttachment, v: MViolation) -> bool:
    """Re-evaluate the named property on the witness alone."""
    w = v.witness
    if v.property_id == 26:
        vi, a = w
        allowed = to_mask(att.union("A")) | to_mask(att.L)
        return (att.L[v.index - 1] == vi and not g.adj[vi] & ~allowed
                and a in att.A[wrap(v.index - 1)] and find_comparable_pair(g) is None)
    for rule in RULES:
        if rule.pid != v.property_id:
            continue
        first, second = _rule_sets(rule, att, v.index)
        if rule.kind == "stable" and len(w) == 2:
            if w[0] in first and w[1] in first and g.has_edge(*w):
                return True
        elif rule.kind == "at_most_one" and len(w) == 2:
            if w[0] != w[1] and w[0] in first and w[1] in first:
                return True
        elif rule.kind in ("complete", "anticomplete") and len(w) == 2:
            if w[0] in first and w[1] in second and g.has_edge(*w) != (rule.kind == "complete"):
                return True
        elif rule.kind == "exclusive" and len(w) == 2:
            if w[0] in first and w[1] in second:
                return True
        elif rule.kind == "matching" and len(w) == 3:
            x, y1, y2 = w
            for p, q in ((first, second), (second, first)):
                if x in p and y1 in q and y2 in q and y1 != y2 and g.has_edge(x, y1) and g.has_edge(x, y2):
                    return True
    return False


def format_violations(vs: list[MViolation]) -> str:
    return "\n".join(str(v) for v in vs)


def attachment_summary(att: HoleAttachment) -> dict:
    """JSON-ready view of the nonempty parts of an attachment."""
    return {name: sorted(s) for name, s in att.parts() if s}


def neighborhood_of_hole(g: Graph, hole: tuple[int, ...]) -> frozenset[int]:
    return to_set(set_neighborhood(g, to_mask(hole)))
