"""Shared fixtures and the per-criterion summary of the acceptance suite."""

import pytest

_outcomes: dict[int, list[tuple[str, str]]] = {}
_TITLES = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            n = m.args[0]
            _TITLES.setdefault(n, m.args[1] if len(m.args) > 1 else "")
            item.user_properties.append(("criterion", n))


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        if hasattr(report, "wasxfail"):
            status = "xfail"
        else:
            status = report.outcome
        _outcomes.setdefault(crit, []).append((report.nodeid.split("::")[-1], status))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_TITLES):
        results = _outcomes.get(n, [])
        if not results:
            tr.write_line(f"criterion {n:2d}: NOT RUN  {_TITLES[n]}")
            continue
        ok = all(s == "passed" for _, s in results)
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {_TITLES[n]}"
        failing = [name for name, s in results if s != "passed"]
        if failing:
            line += f"  [failing: {', '.join(failing)}]"
        tr.write_line(line)


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(20240611)
