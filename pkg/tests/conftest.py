import pytest

_LINES = []


@pytest.fixture
def verdict():
    """Record one acceptance line; returns the pass flag for the caller to assert."""

    def record(label: str, passed: bool, detail: str) -> bool:
        _LINES.append(f"{'PASS' if passed else 'FAIL'}  {label}: {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in _LINES:
        terminalreporter.write_line(line)
