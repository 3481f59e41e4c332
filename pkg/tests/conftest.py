import pytest

_details = {}
_outcomes = []


@pytest.fixture
def acceptance_report(request):
    """Record a one-line summary for an acceptance criterion."""
    def record(line):
        _details[request.node.name] = line
    return record


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _outcomes.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _outcomes:
        status = "PASS" if outcome == "passed" else "FAIL"
        detail = _details.get(name)
        line = "%s %s" % (status, name)
        if detail:
            line += " - " + detail
        terminalreporter.write_line(line)
