import pytest

from ffplane.ffield import field_ctx
from ffplane.stats import PointSet

PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 101, 10007]


@pytest.fixture
def F7():
    return field_ctx(7)


@pytest.fixture
def F13():
    return field_ctx(13)


@pytest.fixture
def triangle():
    return PointSet.from_ints(7, [(0, 0), (1, 0), (0, 1)])


@pytest.fixture
def square():
    return PointSet.from_ints(7, [(0, 0), (1, 0), (0, 1), (1, 1)])


# one summary line per acceptance criterion ------------------------------------------

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not rep.failed:
        return
    n, title = mark.args
    status = "PASS" if rep.passed else "FAIL"
    if n not in _criteria or status == "FAIL":
        _criteria[n] = (status, title)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        status, title = _criteria[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {title}")
