import pytest

from pisotmod.golden import BATTERY
from pisotmod.pisot import certify_pisot
from pisotmod.structure import clear_caches

QUADRATIC = tuple(c for c in BATTERY if len(c) == 3)


@pytest.fixture(scope="session")
def battery_certs():
    return {c: certify_pisot(c) for c in BATTERY}


@pytest.fixture
def fresh_caches():
    clear_caches()
    yield
    clear_caches()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
