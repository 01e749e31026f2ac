import itertools

import pytest

from seqdyn.dynamics import satisfies
from seqdyn.fixtures import load_fixture
from seqdyn.game import enumerate_profiles, parse_profile


@pytest.fixture
def fig1():
    return load_fixture("fig1")


@pytest.fixture
def fig5_left():
    return load_fixture("fig5_left")


def P(g, name):
    return parse_profile(g, name)


def names(profiles):
    return {s.name() for s in profiles}


def oracle_edges(g, props):
    """Edge set straight from the property definitions, no numeric tables."""
    profiles = enumerate_profiles(g)
    return {(s.name(long=True), t.name(long=True)) for s, t in itertools.product(profiles, repeat=2)
            if s != t and all(satisfies(p, g, s, t) for p in props)}


_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA[number] = (title, report.outcome.upper(), round(report.duration, 3))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, verdict, seconds = _CRITERIA[number]
        verdict = "PASS" if verdict == "PASSED" else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2}: {verdict}  ({seconds:.2f}s)  {title}")
