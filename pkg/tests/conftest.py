import pytest

_KEY = pytest.StashKey[dict]()


@pytest.fixture
def record_criterion(request):
    """Store a one-line verdict for the acceptance report."""
    store = request.config.stash.setdefault(_KEY, {})

    def record(number: int, passed: bool, detail: str) -> None:
        store[number] = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(_KEY, {})
    if store:
        terminalreporter.section("acceptance criteria")
        for number in sorted(store):
            terminalreporter.write_line(store[number])
