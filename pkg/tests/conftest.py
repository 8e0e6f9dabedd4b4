from __future__ import annotations

import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from magequiv.graph import read_graph  # noqa: E402

DATA = Path(__file__).parent / "data"

_results: dict[int, list[bool]] = {}
_titles: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def figs():
    return {p.stem: read_graph(p) for p in sorted(DATA.glob("*.g"))}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marks = dict(report.user_properties).get("criterion")
    if marks is None:
        return
    number, title = marks
    _titles[number] = title
    _results.setdefault(number, []).append(report.passed)


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            item.user_properties.append(("criterion", tuple(m.args)))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        outcomes = _results[number]
        verdict = "PASS" if all(outcomes) else "FAIL"
        terminalreporter.write_line(
            f"criterion {number:2d}: {verdict}  {_titles[number]} ({sum(outcomes)}/{len(outcomes)} tests passed)")
