import pytest

from burnout_bench.schedule import load_psl5

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def psl5():
    return load_psl5()


@pytest.fixture
def record():
    """Store one acceptance line; printed at the end of the run."""

    def _record(key: str, ok: bool, detail: str) -> None:
        ACCEPTANCE[key] = (ok, detail)

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k[2:])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{key} {'PASS' if ok else 'FAIL'}  {detail}")
