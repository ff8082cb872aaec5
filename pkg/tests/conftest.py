import pytest

_ACCEPTANCE = {}


@pytest.fixture
def acceptance():
    """Record ``(criterion, ok, summary)``; printed in the terminal summary."""
    def record(n, ok, summary):
        _ACCEPTANCE[n] = (bool(ok), summary)
        print(f"ACCEPTANCE {n}: {'PASS' if ok else 'FAIL'} - {summary}")
        assert ok, summary
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        ok, summary = _ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {summary}")
