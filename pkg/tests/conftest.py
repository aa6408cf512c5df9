from __future__ import annotations

import re

_CRITERION = re.compile(r"test_criterion_(\d+)")
_titles: dict[int, str] = {}
_outcomes: dict[int, list[bool]] = {}


def _number(nodeid: str) -> int | None:
    if "test_acceptance.py" not in nodeid:
        return None
    m = _CRITERION.search(nodeid)
    return int(m.group(1)) if m else None


def pytest_collection_modifyitems(session, config, items):
    for item in items:
        n = _number(item.nodeid)
        if n is not None:
            doc = (item.function.__doc__ or "").strip().splitlines()
            _titles.setdefault(n, doc[0] if doc else item.name)


def pytest_runtest_logreport(report):
    n = _number(report.nodeid)
    if n is None:
        return
    if report.when == "call" or report.failed:
        _outcomes.setdefault(n, []).append(report.passed)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_titles):
        results = _outcomes.get(n)
        if results is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}  {_titles[n]}")
