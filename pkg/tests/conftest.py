import pytest

from randic import search


@pytest.fixture(scope="session")
def scan8():
    """Full labelled scan of n <= 8 with four shards (shared by the exhaustive tests)."""
    return search.run_scan(8, shards=4, workers=1)


@pytest.fixture(scope="session")
def connected_reps():
    """Isomorphism-class representatives of connected graphs, keyed by n (1..8)."""
    return {n: search.representatives(n, connected=True) for n in range(1, 9)}


def pytest_configure(config):
    config.acceptance_lines = []


@pytest.fixture
def acceptance(request):
    """``record(criterion, ok, detail)``: log a pass/fail line and fail the test if not ok."""

    def record(num: int, ok: bool, detail: str) -> None:
        request.config.acceptance_lines.append((num, bool(ok), detail))
        print(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, f"criterion {num} failed: {detail}"

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "acceptance_lines", [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for num, ok, detail in sorted(lines):
        terminalreporter.write_line(f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
