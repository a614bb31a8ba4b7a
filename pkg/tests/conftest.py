from datetime import datetime, timezone
from pathlib import Path

import pytest

from uncertain_xes import (
    DETERMINATE,
    STRONG_INDETERMINATE,
    Certain,
    DensitySpec,
    StrongInterval,
    StrongSet,
    UncertainLog,
    UncertainTrace,
    WeakDensity,
    WeakIndeterminate,
    WeakMap,
    make_event,
)

DATA = Path(__file__).parent / "data"
UTC = timezone.utc

# day-of-month reading of the running example: day 8 == 2011-07-08 00:00
DAY_OF_MONTH_EPOCH = datetime(2011, 6, 30, tzinfo=UTC)


def july(day, hour=12):
    return datetime(2011, 7, day, hour, tzinfo=UTC)


def sigma1_trace():
    """The strongly uncertain running example (listing 1) built by hand."""
    return UncertainTrace("ID192", [
        make_event("e1", "ID192", StrongSet({"NightSweats"}), Certain(july(5)), STRONG_INDETERMINATE),
        make_event("e2", "ID192", StrongSet({"PrTP", "SecTP"}), Certain(july(8)), DETERMINATE),
        make_event("e3", "ID192", StrongSet({"Splenomeg"}), StrongInterval(july(4), july(10)), DETERMINATE),
    ])


def sigma2_trace():
    """The weakly uncertain running example (ID348, e4..e6) on the day-of-month axis."""
    return UncertainTrace("ID348", [
        make_event("e4", "ID348", StrongSet({"NightSweats"}), Certain(july(5, 0)), WeakIndeterminate(0.25)),
        make_event("e5", "ID348", WeakMap({"PrTP": 0.90, "SecTP": 0.10}), Certain(july(8, 0))),
        make_event("e6", "ID348", StrongSet({"Splenomeg"}), WeakDensity(DensitySpec.gaussian(7, 1))),
    ])


@pytest.fixture
def sigma1():
    return sigma1_trace()


@pytest.fixture
def sigma2():
    return sigma2_trace()


@pytest.fixture
def listing1():
    return DATA / "listing1.xes"


@pytest.fixture
def listing2():
    return DATA / "listing2.xes"


@pytest.fixture
def both_examples_log():
    return UncertainLog([sigma1_trace(), sigma2_trace()])


# --------------------------------------------------------------------------
# one PASS/FAIL line per acceptance criterion in the terminal summary

_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if rep.when == "call" or rep.failed:
        _criteria[number] = (title, rep.passed and _criteria.get(number, (None, True))[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title}")
