import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def frozen():
    return json.loads((DATA / "frozen.json").read_text())


def rationals(max_num=60, dens=(1, 2, 3, 4, 5, 6, 8, 9, 10, 12)):
    return st.builds(Fraction, st.integers(-max_num, max_num), st.sampled_from(dens))


def zp_rationals(p, **kw):
    return rationals(**kw).filter(lambda x: x.denominator % p != 0)


def generic_triples():
    """Parameter triples with no integral exponent differences at 0, 1, inf."""
    def ok(t):
        a1, a2, a3 = t
        return all(f.denominator != 1 for f in (a1, a2, a3, a3 - a2, a1 - a3, a3 - a1 - a2, a2 - a1))
    comp = rationals(max_num=30, dens=(3, 4, 5, 6, 8, 10, 12))
    return st.tuples(comp, comp, comp).filter(ok)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
