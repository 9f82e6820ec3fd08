import pytest

# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def criterion_log():
    def record(number: int, passed: bool, detail: str, label: str | None = None):
        word = label or ("PASS" if passed else "FAIL")
        ACCEPTANCE_LINES[number] = f"criterion {number:>2}: {word}  {detail}"
        print(ACCEPTANCE_LINES[number])

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
