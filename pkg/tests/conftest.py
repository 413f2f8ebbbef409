"""Collects ``@pytest.mark.criterion`` outcomes into one PASS/FAIL line each."""

from collections import OrderedDict

import pytest

_results = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, title): acceptance criterion this test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        cid, title = marker.args
        entry = _results.setdefault(cid, {"title": title, "failed": [], "count": 0})
        entry["count"] += 1
        if not report.passed:
            detail = str(report.longrepr.reprcrash.message) if hasattr(report.longrepr, "reprcrash") else ""
            entry["failed"].append((item.name, detail.splitlines()[0] if detail else ""))


def _key(cid):
    return (0, int(cid)) if cid.isdigit() else (1, cid)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for cid in sorted(_results, key=_key):
        entry = _results[cid]
        status = "FAIL" if entry["failed"] else "PASS"
        tr.write_line(f"{status} criterion {cid}: {entry['title']} [{entry['count'] - len(entry['failed'])}/{entry['count']} checks]")
        for name, detail in entry["failed"]:
            tr.write_line(f"    {name}: {detail}")
