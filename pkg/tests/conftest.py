import pytest

_ACCEPTANCE = []


@pytest.fixture
def acceptance_log():
    """Collects one verdict line per acceptance criterion."""
    def record(line):
        _ACCEPTANCE.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
