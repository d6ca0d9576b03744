import pytest

from octacheck.exactalg import Field

FIELD_DESCRIPTORS = ["fp:2", "fp:3", "fp:5", "fp:7", "q"]


@pytest.fixture(params=["q", "fp:5"])
def field(request):
    return Field.parse(request.param)


@pytest.fixture(params=FIELD_DESCRIPTORS)
def any_field(request):
    return Field.parse(request.param)


@pytest.fixture
def Q():
    return Field.rationals()


@pytest.fixture
def F3():
    return Field.gf(3)


@pytest.fixture
def F5():
    return Field.gf(5)


# one summary line per acceptance criterion ------------------------------------

_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    n, title = mark.args
    if rep.when == "call" or rep.failed:
        _CRITERIA[n] = (title, "PASS" if rep.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, verdict = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {verdict}  {title}")
