import pytest

from quasibgg.rootdata import build_root_datum


@pytest.fixture(scope="session")
def A1():
    return build_root_datum("A1")


@pytest.fixture(scope="session")
def A2():
    return build_root_datum("A2")


@pytest.fixture(scope="session")
def B2():
    return build_root_datum("B2")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by the test")
    config._criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not rep.failed:
        return
    number, title = mark.args
    store = item.config._criteria
    prev = store.get(number, (title, True))
    store[number] = (title, prev[1] and rep.passed)


def pytest_terminal_summary(terminalreporter, config):
    store = getattr(config, "_criteria", {})
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(store):
        title, ok = store[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}")
