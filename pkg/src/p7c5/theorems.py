"""Executable checks of the structure theorems: evaluate the hypotheses in a
fixed cheap-first order, then test the structural conclusion."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

from . import detect, families
from .coloring import clique_number
from .decompose import find_clique_cutset, find_comparable_pair, find_homogeneous_set, find_universal_clique
from .graph import Graph, induced, is_connected, neighborhood_sets
from .hole_structure import find_seven_hole

THEOREMS = ("KP", "DIAMOND", "PAW", "BULL")


class StructureBug(AssertionError):
    """An internal consistency check failed (not a property of the input)."""


@dataclass
class TheoremVerdict:
    theorem: str
    hypotheses_hold: bool
    hypotheses: dict[str, Optional[bool]]
    conclusion_holds: Optional[bool] = None
    certificate: str = ""
    details: dict = field(default_factory=dict)

    @property
    def violated(self) -> bool:
        """Hypotheses true but conclusion false: a counterexample."""
        return self.hypotheses_hold and self.conclusion_holds is False

    @property
    def first_failure(self) -> Optional[str]:
        return next((k for k, v in self.hypotheses.items() if v is False), None)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def _evaluate(checks: list[tuple[str, Callable[[], bool]]]) -> tuple[bool, dict[str, Optional[bool]]]:
    out: dict[str, Optional[bool]] = {name: None for name, _ in checks}
    for name, fn in checks:
        out[name] = bool(fn())
        if not out[name]:
            return False, out
    return True, out


def _imperfect(g: Graph, limit: int) -> bool:
    imperfect = not detect.is_perfect(g, limit)
    if imperfect and find_seven_hole(g) is None:
        raise StructureBug("imperfect class member without a 7-hole")
    return imperfect


def verify_structure(g: Graph, theorem: str, perfect_limit: int = detect.PERFECT_LIMIT) -> TheoremVerdict:
    """Check one of the KP / DIAMOND / PAW structure theorems on ``g``.

    Raises ``detect.TooLarge`` when the perfection oracle would be needed
    beyond ``perfect_limit`` vertices.
    """
    thm = theorem.upper()
    if thm not in ("KP", "DIAMOND", "PAW"):
        raise ValueError(f"unknown structure theorem {theorem!r}")
    omega: list[int] = []

    def w() -> int:
        if not omega:
            omega.append(clique_number(g))
        return omega[0]

    connected = ("connected", lambda: g.n > 0 and is_connected(g))
    member = ("class_member", lambda: detect.class_membership(g, thm).member)
    imperfect = ("imperfect", lambda: _imperfect(g, perfect_limit))
    no_pair = ("no_comparable_pair", lambda: find_comparable_pair(g) is None)
    if thm == "KP":
        checks = [connected, ("min_degree", lambda: min(g.degrees()) >= w() + 1), no_pair, member,
                  ("no_clique_cutset", lambda: find_clique_cutset(g) is None), imperfect]
    elif thm == "DIAMOND":
        checks = [connected, ("min_degree", lambda: min(g.degrees()) >= max(3, w())), no_pair, member, imperfect]
    else:
        checks = [connected, member, imperfect]
    ok, hyps = _evaluate(checks)
    verdict = TheoremVerdict(thm, ok, hyps)
    if not ok:
        verdict.certificate = "hypotheses not met"
        return verdict
    if thm == "KP":
        k = find_universal_clique(g)
        if k is not None:
            verdict.conclusion_holds = True
            verdict.certificate = f"universal clique K={sorted(k)}"
            verdict.details["K"] = sorted(k)
            return verdict
        found = [s for s in families.classify_family_all(g) if s.family == "F1"]
        verdict.conclusion_holds = bool(found)
        verdict.certificate = "≅ F1" if found else "no universal clique and not F1"
    elif thm == "DIAMOND":
        found = families.classify_family_all(g)
        verdict.conclusion_holds = bool(found)
        labels = [s.label() for s in found]
        verdict.certificate = "≅ " + " ≅ ".join(labels) if found else "not isomorphic to any F1-F12"
        verdict.details["matches"] = labels
    else:
        sizes = families.recognize_c7_blowup(g, "stable")
        verdict.conclusion_holds = sizes is not None
        verdict.certificate = f"blowup sizes {sizes}" if sizes else "not a blowup of C7"
        if sizes:
            verdict.details["sizes"] = list(sizes)
    return verdict


def verify_perfect_divisibility(g: Graph, perfect_limit: int = detect.PERFECT_LIMIT) -> TheoremVerdict:
    """Perfect divisibility check for the BULL class.

    With a homogeneous set the verdict just reports it. Without one, every
    G[M(v)] must be perfect, and the first v (by index) gives the division
    ({v} + M(v), N(v)).
    """
    if g.n > perfect_limit:
        raise detect.TooLarge(f"perfection checks limited to {perfect_limit} vertices, got {g.n}")
    ok, hyps = _evaluate([
        ("connected", lambda: g.n > 0 and is_connected(g)),
        ("class_member", lambda: detect.class_membership(g, "BULL").member),
    ])
    verdict = TheoremVerdict("BULL", ok, hyps)
    if not ok:
        verdict.certificate = "hypotheses not met"
        return verdict
    h = find_homogeneous_set(g)
    if h is not None:
        verdict.conclusion_holds = True
        verdict.certificate = f"homogeneous set {sorted(h)}"
        verdict.details["homogeneous_set"] = sorted(h)
        return verdict
    bad = []
    for v in range(g.n):
        _, m = neighborhood_sets(g, v)
        sub, _ = induced(g, sorted(m))
        if not detect.is_perfect(sub, perfect_limit):
            bad.append(v)
    verdict.conclusion_holds = not bad
    if bad:
        verdict.certificate = f"G[M(v)] imperfect for v in {bad}"
        verdict.details["imperfect_at"] = bad
    else:
        verdict.certificate = "all G[M(v)] perfect; division at v=0"
        verdict.details["division_vertex"] = 0
    return verdict
