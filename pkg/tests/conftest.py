from pathlib import Path

import pytest

from daoforge import data_path
from daoforge.registry import load_registry

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def registry():
    return load_registry(data_path("registry.json"))


@pytest.fixture(scope="session")
def wsteth_source():
    return (FIXTURES / "wsteth_cap.dao").read_text()


@pytest.fixture(scope="session")
def rseth_source():
    return (FIXTURES / "rseth_cap.dao").read_text()


# ---- acceptance report: one line per criterion, printed after the run

_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """``with criterion("name", limit_s):`` records a PASS/FAIL line for the final summary."""
    import contextlib
    import time

    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    @contextlib.contextmanager
    def run(name, limit=None, status="PASS"):
        start = time.perf_counter()
        try:
            yield
        except BaseException as exc:
            lines.append(f"FAIL  {name}  ({type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''})")
            raise
        elapsed = time.perf_counter() - start
        if limit is not None and elapsed >= limit:
            lines.append(f"FAIL  {name}  ({elapsed:.2f} s, limit {limit} s)")
            raise AssertionError(f"{name} took {elapsed:.2f} s, limit {limit} s")
        lines.append(f"{status}  {name}  ({elapsed:.3f} s)")

    return run


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
