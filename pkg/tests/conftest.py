import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record a one-line verdict for an acceptance criterion.

    Usage: ``criterion(n, "text")`` at the start; the outcome is filled in
    from the test result in the report hook below.
    """
    def record(number, text):
        request.node._criterion = (number, text)
    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    crit = getattr(item, "_criterion", None)
    if crit is None or rep.when != "call":
        return
    verdict = "PASS" if rep.passed else "FAIL"
    line = f"criterion {crit[0]:>2}: {verdict}  {crit[1]}"
    ACCEPTANCE_LINES.append((crit[0], line))
    print(f"\n{line}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
