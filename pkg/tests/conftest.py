from __future__ import annotations

from collections import OrderedDict

_CRITERIA: OrderedDict[str, list[tuple[str, bool]]] = OrderedDict()
_LABELS: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(key, label): acceptance criterion covered by the test")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            key, label = mark.args
            _CRITERIA.setdefault(key, [])
            _LABELS[key] = label


def pytest_runtest_logreport(report):
    if report.when == "call" or (report.when == "setup" and not report.passed):
        key = _key_for(report)
        if key is not None:
            _CRITERIA[key].append((report.nodeid, report.passed))


def _key_for(report):
    for name, value in report.user_properties:
        if name == "criterion":
            return value
    return None


def pytest_runtest_setup(item):
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        item.user_properties.append(("criterion", mark.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not any(_CRITERIA.values()):
        return
    terminalreporter.section("acceptance criteria")
    for key, outcomes in _CRITERIA.items():
        if not outcomes:
            continue
        ok = all(passed for _, passed in outcomes)
        line = f"{'PASS' if ok else 'FAIL'}  criterion {key}: {_LABELS[key]} ({sum(p for _, p in outcomes)}/{len(outcomes)} tests)"
        terminalreporter.write_line(line)
