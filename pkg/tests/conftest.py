import pytest

_criteria: dict[int, tuple[bool, str]] = {}
_findings: list[str] = []


@pytest.fixture
def criterion():
    """Record the verdict of an acceptance criterion for the summary."""

    def record(number: int, passed: bool, detail: str) -> bool:
        _criteria[number] = (passed, detail)
        return passed

    return record


@pytest.fixture
def finding():
    """Record an observation that is reported, not asserted."""
    return _findings.append


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_criteria):
            passed, detail = _criteria[number]
            terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  criterion {number:2d}: {detail}")
    if _findings:
        terminalreporter.section("findings")
        for line in _findings:
            terminalreporter.write_line(line)
