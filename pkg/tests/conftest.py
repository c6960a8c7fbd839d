from collections import defaultdict

import pytest

_outcomes: dict[int, list[bool]] = defaultdict(list)
_labels: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, label): acceptance criterion a test belongs to")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            item.user_properties.append(("criterion", mark.args[0]))
            _labels[mark.args[0]] = mark.args[1]


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark and (rep.when == "call" or (rep.when == "setup" and rep.failed)):
        _outcomes[mark.args[0]].append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_labels):
        results = _outcomes.get(number, [])
        if not results:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        detail = f"{sum(results)}/{len(results)} checks" if results else ""
        terminalreporter.write_line(f"criterion {number}: {status:7s} {_labels[number]} {detail}")
