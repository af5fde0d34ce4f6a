import random

import pytest

_criteria: dict[int, tuple[str, str]] = {}
_details: dict[int, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by this test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if report.when == "call" or (report.when == "setup" and not report.passed):
        status = "PASS" if report.passed else "FAIL"
        prev = _criteria.get(number)
        if prev is None or prev[1] == "PASS":
            _criteria[number] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d} {status}  {title}")
        for line in _details.get(number, []):
            terminalreporter.write_line(f"    {line}")


@pytest.fixture
def record(request):
    """Attach a measured value to the acceptance summary line of this test's criterion."""
    number = request.node.get_closest_marker("criterion").args[0]

    def add(text: str) -> None:
        _details.setdefault(number, []).append(text)

    return add


@pytest.fixture
def rng():
    return random.Random(12345)
