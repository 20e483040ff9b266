import os

import pytest

from pglinset.gf import build_tower

RESULTS = {}


def pytest_addoption(parser):
    parser.addoption("--run-stretch", action="store_true", default=False,
                     help="run the long (5,5) census checks")


def pytest_configure(config):
    config.addinivalue_line("markers", "stretch: long-running check, opt in with --run-stretch or LINSET_STRETCH=1")


def stretch_enabled(config):
    return config.getoption("--run-stretch") or os.environ.get("LINSET_STRETCH", "") in ("1", "true", "yes")


def pytest_collection_modifyitems(config, items):
    if stretch_enabled(config):
        return
    skip = pytest.mark.skip(reason="stretch check; pass --run-stretch or set LINSET_STRETCH=1")
    for item in items:
        if "stretch" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def record():
    """Acceptance tests report (criterion, passed, detail) here for the summary."""
    def _record(num, passed, detail):
        RESULTS[num] = (passed, detail)
        return passed
    return _record


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        passed, detail = RESULTS[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if passed else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def F33():
    return build_tower(3, 1, 3)


@pytest.fixture(scope="session")
def F43():
    return build_tower(2, 2, 3)


@pytest.fixture(scope="session")
def F53():
    return build_tower(5, 1, 3)


@pytest.fixture(scope="session")
def F34():
    return build_tower(3, 1, 4)


@pytest.fixture(scope="session")
def F44():
    return build_tower(2, 2, 4)
