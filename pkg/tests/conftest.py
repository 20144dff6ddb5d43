from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from monogap.ratpoly import RatPoly

settings.register_profile(
    "monogap", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("monogap")


def small_rats(max_num=20, max_den=12):
    return st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))


def polys(max_degree=6, **kw):
    return st.lists(small_rats(**kw), max_size=max_degree + 1).map(RatPoly)


def nonzero_polys(max_degree=6, **kw):
    return polys(max_degree, **kw).filter(lambda p: not p.is_zero())


@pytest.fixture
def P():
    """Shorthand for parsing polynomial text."""
    return RatPoly.parse


# one summary line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture
def record():
    """``record(k, ok, detail)`` stores the summary line for criterion ``k``."""
    def _record(k: int, ok: bool, detail: str):
        ACCEPTANCE_LINES[k] = f"{'PASS' if ok else 'FAIL'}  criterion {k:>2}: {detail}"
        return ok
    return _record
