import random
import sys
from pathlib import Path

import pytest
from hypothesis import assume, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from edhr import Instance  # noqa: E402

T1_ITEMS = [(7, 2), (5, 2), (4, 2), (1, 2)]
T2_ITEMS = [(7, 2), (9, 4), (4, 2), (1, 2)]

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def t1():
    return Instance.from_items(T1_ITEMS, 5)


@pytest.fixture
def t2():
    return Instance.from_items(T2_ITEMS, 7)


@pytest.fixture
def rng():
    return random.Random(12345)


@st.composite
def instances(draw, max_n=10, hi=30):
    """Instances satisfying max(w) < C < sum(w)."""
    n = draw(st.integers(2, max_n))
    ws = draw(st.lists(st.integers(1, hi), min_size=n, max_size=n))
    ps = draw(st.lists(st.integers(1, hi), min_size=n, max_size=n))
    assume(sum(ws) - max(ws) >= 2)
    cap = draw(st.integers(max(ws) + 1, sum(ws) - 1))
    return Instance(tuple(ps), tuple(ws), cap)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k.split()[0])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}")
