from pathlib import Path

import pytest

from zeta_audit import arith
from zeta_audit.zerodata import load_zeros

ROOT = Path(__file__).resolve().parent.parent
ZEROS_FILE = ROOT / "zeros.txt"


@pytest.fixture(scope="session")
def zeros():
    return load_zeros(ZEROS_FILE)


@pytest.fixture(scope="session")
def table():
    return arith.get_sieve(10**6)


@pytest.fixture(scope="session")
def big_table():
    return arith.get_sieve(10**7)


@pytest.fixture(autouse=True)
def _zeros_env(monkeypatch):
    monkeypatch.setenv("ZETA_AUDIT_ZEROS", str(ZEROS_FILE))


ACCEPTANCE = {}


@pytest.fixture
def acceptance(request):
    """Record one acceptance line per criterion: acceptance(ok, detail, seconds)."""
    num = request.node.get_closest_marker("criterion").args[0]

    def record(ok, detail, seconds):
        ACCEPTANCE[num] = (bool(ok), detail, seconds)
        return ok

    return record


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, detail, seconds = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}  ({seconds:.3g} s)")
