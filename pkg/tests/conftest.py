from __future__ import annotations

import pytest

from arcc.checks.pool import build_pool
from arcc.genfw.registry import load_generator_registry
from support import GENERATORS, load_corpus

ACCEPTANCE: dict[str, list[str]] = {}
TITLES: dict[str, str] = {}


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def pool():
    return build_pool()


@pytest.fixture(scope="session")
def registry(pool):
    return load_generator_registry(GENERATORS, pool)


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker is not None:
            TITLES[marker.args[0]] = marker.args[1]


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, title): acceptance criterion covered by the test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for key, value in report.user_properties:
        if key == "criterion":
            ACCEPTANCE.setdefault(value, []).append(report.outcome)


@pytest.fixture(autouse=True)
def _tag_criterion(request):
    marker = request.node.get_closest_marker("criterion")
    if marker is not None:
        request.node.user_properties.append(("criterion", marker.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not TITLES:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(TITLES, key=lambda c: int(c[2:])):
        outcomes = ACCEPTANCE.get(cid)
        if not outcomes:
            status = "NOT RUN"
        else:
            status = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"{cid} {status}: {TITLES[cid]}")
