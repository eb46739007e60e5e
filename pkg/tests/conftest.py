import os
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from p7c5 import streams
from p7c5.graph import build

settings.register_profile(
    "default", deadline=None, max_examples=150, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("quick", deadline=None, max_examples=25)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build(n, [e for e, k in zip(pairs, keep) if k])


@lru_cache(maxsize=None)
def exhaustive(n: int) -> tuple:
    return tuple(streams.all_graphs(n))


def exhaustive_upto(n: int):
    for k in range(n + 1):
        yield from exhaustive(k)


# -- acceptance report ---------------------------------------------------------

# criterion -> list of (part passed, detail); a criterion passes when every part does.
ACCEPTANCE: dict[int, list[tuple[bool, str]]] = {}


@pytest.fixture
def report():
    def record(criterion: int, ok: bool, detail: str) -> None:
        ACCEPTANCE.setdefault(criterion, []).append((ok, detail))
        print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[k]
        ok = all(p for p, _ in parts)
        detail = "; ".join(d for _, d in parts)
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} - {detail}")
