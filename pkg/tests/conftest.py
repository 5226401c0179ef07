import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from keigraph import enumerate_kei  # noqa: E402


@pytest.fixture(scope="session")
def kei_by_n():
    return {n: list(enumerate_kei(n)) for n in range(1, 6)}


_CRITERIA = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None and report.when == "call":
        number, title = marker.args
        _CRITERIA.append((number, title, report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number, title, outcome, duration in sorted(_CRITERIA):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {verdict} ({duration:.2f} s) {title}")
