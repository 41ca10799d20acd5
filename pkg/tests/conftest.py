import pytest

_CRITERIA: list[tuple[int, str, bool, str]] = []


@pytest.fixture
def criterion():
    """Record one acceptance criterion outcome and fail the test if it did not hold."""

    def record(number: int, name: str, ok: bool, detail: str = "") -> None:
        _CRITERIA.append((number, name, ok, detail))
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {name} {detail}".rstrip()
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, ok, detail in sorted(_CRITERIA):
        terminalreporter.write_line(
            f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {name} {detail}".rstrip()
        )
