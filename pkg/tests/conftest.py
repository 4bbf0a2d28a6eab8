import sys

import pytest

from serreq.poly import GradedRing
from serreq.serre import quotient_category
from serreq.zmod import torsion_subcategory, zmod_category


@pytest.fixture
def Z():
    return zmod_category()


@pytest.fixture
def ZQ(Z):
    return quotient_category(Z, torsion_subcategory(Z), strict=True)


@pytest.fixture
def R3():
    return GradedRing.standard("x y z")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        terminalreporter.write_line(results[k])
