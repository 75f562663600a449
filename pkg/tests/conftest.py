import sys
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from brmult.monomial import IdealFamily, maximal_ideal, minimalize  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@st.composite
def primary_gens(draw, d=None, max_exp=5):
    """Generator lists of m-primary monomial ideals (not yet minimalized)."""
    if d is None:
        d = draw(st.integers(1, 3))
    gens = []
    for j in range(d):
        e = draw(st.integers(1, max_exp))
        gens.append(tuple(e if i == j else 0 for i in range(d)))
    extra = draw(st.lists(st.tuples(*[st.integers(0, max_exp - 1)] * d), max_size=4))
    return d, gens + [g for g in extra if any(g)]


@st.composite
def primary_ideals(draw, d=None, max_exp=5):
    d, gens = draw(primary_gens(d, max_exp))
    return minimalize(gens, d)


@st.composite
def families(draw, d=None, r_max=3, max_exp=3):
    if d is None:
        d = draw(st.integers(1, 2))
    r = draw(st.integers(1, r_max))
    return IdealFamily(tuple(draw(primary_ideals(d, max_exp)) for _ in range(r)))


def I(*gens, d=2):
    return minimalize(gens, d)


@pytest.fixture
def m2():
    return maximal_ideal(2)


@pytest.fixture
def nonnested():
    return IdealFamily((I((2, 0), (0, 1)), I((1, 0), (0, 2))))


@pytest.fixture
def d1xx():
    x = maximal_ideal(1)
    return IdealFamily((x, x))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
