"""Shared pytest configuration.

Tests marked ``@pytest.mark.criterion(k)`` are grouped by ``k``; after the run
one line per acceptance criterion reports PASS only if every test in the
group passed.
"""

from collections import defaultdict

import pytest

_OUTCOMES: dict[int, list[tuple[str, bool]]] = defaultdict(list)
_TITLES = {
    1: "closed-form Dirichlet kernels",
    2: "Kaczmarz functions are reindexed Walsh functions",
    3: "transform against inner products and Parseval",
    4: "summation-by-parts identities",
    5: "majorant chain for non-increasing weights",
    6: "majorant chain for non-decreasing weights",
    7: "divergence construction reproduction",
    8: "convergence rate at desk scale",
    9: "Hardy norms of Walsh functions and atoms",
    10: "selfcheck exits 0 within budget",
}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _OUTCOMES[marker.args[0]].append((item.nodeid, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_TITLES):
        results = _OUTCOMES.get(k)
        if not results:
            continue
        failed = [nodeid.split("::")[-1] for nodeid, ok in results if not ok]
        status = "FAIL" if failed else "PASS"
        line = f"{status} criterion {k:>2}: {_TITLES[k]} ({len(results) - len(failed)}/{len(results)} tests)"
        if failed:
            line += " failing: " + ", ".join(failed)
        terminalreporter.write_line(line)
