import pytest

from sacs import catalog

# criterion number -> (title, passed); filled in by test_acceptance
CRITERIA: dict[int, tuple[str, bool]] = {}


@pytest.fixture(scope="session")
def entries():
    return catalog.builtin()


@pytest.fixture
def cp5(entries):
    return entries["cp5"]


@pytest.fixture
def gadget(entries):
    return entries["gadget_a"]


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        title, ok = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}")
