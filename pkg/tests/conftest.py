import re

import pytest
from hypothesis import settings

settings.register_profile("default", derandomize=True, deadline=None, max_examples=60)
settings.load_profile("default")

DATA = __import__("orbitfold.mathieu", fromlist=["PACKAGE_DATA"]).PACKAGE_DATA


def closure(gens, degree):
    """All elements of <gens> by breadth-first multiplication (small groups only)."""
    ident = tuple(range(degree))
    gens = [tuple(g) for g in gens]
    seen = {ident}
    queue = [ident]
    for x in queue:
        for g in gens:
            y = tuple(g[x[i]] for i in range(degree))
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


@pytest.fixture
def data_dir():
    return DATA


_CRITERIA = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    if report.when == "call" or report.failed:
        prev = _CRITERIA.get(n, "PASS")
        _CRITERIA[n] = "FAIL" if report.failed or prev == "FAIL" else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {n:2d}: {_CRITERIA[n]}")
