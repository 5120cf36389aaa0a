import pytest

_CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record the outcome of an acceptance criterion for the terminal summary."""

    def record(number: int, passed: bool, detail: str = "") -> None:
        _CRITERIA[number] = (passed, detail)
        print(f"criterion {number}: {'PASS' if passed else 'FAIL'} {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        passed, detail = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'} {detail}")
