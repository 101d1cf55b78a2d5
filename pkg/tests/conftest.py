import pytest

from toricke import catalog

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")
    config.addinivalue_line("markers", "slow: Monte Carlo heavy tests")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = getattr(report, "_criterion", None)
    if marker is None:
        return
    number, text = marker
    prev = _criteria.get(number)
    ok = report.outcome == "passed"
    _criteria[number] = (text, ok and (prev is None or prev[1]))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        report._criterion = m.args


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        text, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}")


@pytest.fixture(scope="session")
def polytopes():
    return {p.name: p for p in catalog.all_polytopes()}


@pytest.fixture(scope="session")
def blp2():
    return catalog.get("BlP2")


@pytest.fixture(scope="session")
def p2():
    return catalog.get("P2")
