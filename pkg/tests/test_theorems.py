import json
import random

import networkx as nx
import pytest

from p7c5 import detect, streams
from p7c5.families import (
    BlowupSpec, FamilySpec, generate_blowup, generate_counterexample, generate_family, parameter_grid,
)
from p7c5.graph import build, cycle, disjoint_union, induced, petersen
from p7c5.theorems import TheoremVerdict, verify_perfect_divisibility, verify_structure

from oracles import (
    brute_clique_number, comparable_pairs, has_clique_cutset, is_perfect_spgt, to_nx, universal_vertices,
)

F1 = generate_family(FamilySpec("F1"))


def with_universal(g, k=1):
    n = g.n
    extra = [(n + j, v) for j in range(k) for v in range(n)] + [(n + a, n + b) for a in range(k) for b in range(a)]
    return build(n + k, g.edges() + extra)


def test_f1_kp_verdict():
    v = verify_structure(F1, "KP")
    assert v.hypotheses_hold and v.conclusion_holds and not v.violated
    assert v.certificate == "≅ F1"
    assert min(F1.degrees()) == 4 == brute_clique_number(F1) + 1
    assert not has_clique_cutset(F1) and not universal_vertices(F1) and not comparable_pairs(F1)


def test_universal_clique_certificate_rechecks():
    g = with_universal(F1, 2)
    v = verify_structure(g, "KP")
    assert v.hypotheses_hold and v.conclusion_holds
    assert v.details["K"] == [12, 13]
    assert sorted(universal_vertices(g)) == v.details["K"]


def test_paw_blowup_verdict():
    g = generate_blowup(BlowupSpec((2, 1, 2, 1, 1, 1, 1)))
    v = verify_structure(g, "PAW")
    assert v.conclusion_holds and v.details["sizes"] == [2, 1, 2, 1, 1, 1, 1]
    assert v.certificate == "blowup sizes (2, 1, 2, 1, 1, 1, 1)"


def test_short_circuit_order():
    v = verify_structure(cycle(6), "PAW")
    assert not v.hypotheses_hold and v.first_failure == "imperfect"
    assert v.certificate == "hypotheses not met" and v.conclusion_holds is None
    v = verify_structure(disjoint_union(cycle(7), cycle(7)), "KP")
    assert v.first_failure == "connected"
    assert all(x is None for k, x in v.hypotheses.items() if k != "connected")
    v = verify_structure(generate_counterexample("G3", 2), "KP")
    assert v.first_failure == "class_member"
    assert v.hypotheses["no_clique_cutset"] is None


def test_unknown_theorem():
    with pytest.raises(ValueError):
        verify_structure(cycle(7), "BULL")


def test_too_large():
    g = generate_blowup(BlowupSpec((5,) * 7))
    with pytest.raises(detect.TooLarge):
        verify_structure(g, "PAW", perfect_limit=20)
    with pytest.raises(detect.TooLarge):
        verify_perfect_divisibility(cycle(40), perfect_limit=32)


def test_verdict_json_round_trip():
    v = verify_structure(F1, "DIAMOND")
    data = json.loads(v.to_json())
    assert TheoremVerdict(**data) == v
    assert data["details"]["matches"] == ["F1"]


@pytest.mark.parametrize("spec", [s for s in parameter_grid(3) if s.family != "F6"], ids=lambda s: s.label())
def test_diamond_theorem_on_grid(spec):
    v = verify_structure(generate_family(spec), "DIAMOND")
    assert v.hypotheses_hold and v.conclusion_holds
    assert spec.label() in v.details["matches"]


@pytest.mark.xfail(strict=True, reason="F6 contains an induced P7, so it is outside the DIAMOND class")
def test_diamond_theorem_on_f6():
    v = verify_structure(generate_family(FamilySpec("F6")), "DIAMOND")
    assert v.hypotheses_hold, v.hypotheses


def test_bull_examples():
    v = verify_perfect_divisibility(cycle(7))
    assert v.conclusion_holds and v.details["division_vertex"] == 0
    v = verify_perfect_divisibility(generate_blowup(BlowupSpec((2, 1, 1, 1, 1, 1, 1))))
    assert v.conclusion_holds and v.details["homogeneous_set"] == [0, 1]
    v = verify_perfect_divisibility(petersen())
    assert not v.hypotheses_hold and v.first_failure == "class_member"


def test_bull_prime_samples_against_oracle():
    rng = random.Random(4)
    seen = 0
    while seen < 25:
        g = streams.grow_in_class(rng, detect.CLASSES["BULL"], rng.randint(6, 10))
        v = verify_perfect_divisibility(g)
        if not v.hypotheses_hold or "division_vertex" not in v.details:
            continue
        seen += 1
        h = to_nx(g)
        for x in range(g.n):
            rest = set(range(g.n)) - set(h[x]) - {x}
            assert is_perfect_spgt(induced(g, sorted(rest))[0])


def test_kp_verdicts_on_samples_agree_with_networkx():
    rng = random.Random(9)
    for _ in range(40):
        g = streams.grow_from_c7(rng, detect.CLASSES["KP"], rng.randint(8, 12))
        v = verify_structure(g, "KP")
        assert not v.violated
        if v.hypotheses_hold:
            assert "K" in v.details or nx.is_isomorphic(to_nx(g), to_nx(F1))
