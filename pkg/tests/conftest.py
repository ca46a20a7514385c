from __future__ import annotations

import re

import pytest

_RESULTS: dict[int, tuple[str, str, float]] = {}
_NAME = re.compile(r"test_criterion_(\d+)_(\w+)")


def pytest_configure(config):
    config.addinivalue_line("markers", "budget(seconds): stated runtime budget of an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    m = _NAME.match(item.name)
    if not m or report.when not in ("setup", "call"):
        return
    if report.when == "setup" and report.passed:
        return
    num, label = int(m.group(1)), m.group(2).replace("_", " ")
    _RESULTS[num] = ("PASS" if report.passed else "FAIL", label, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_RESULTS):
        status, label, secs = _RESULTS[num]
        terminalreporter.write_line(f"criterion {num:2d} {status}  {label}  ({secs:.1f}s)")
