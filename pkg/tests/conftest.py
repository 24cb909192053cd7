import time

import pytest

from adrkit.adr import build_context
from adrkit.corpus import builtin_algebra, corpus_algebras


@pytest.fixture(scope="session")
def algebras():
    return dict(corpus_algebras())


@pytest.fixture(scope="session")
def contexts(algebras):
    return {name: build_context(a) for name, a in algebras.items()}


@pytest.fixture(scope="session")
def kx2():
    return builtin_algebra("kx2")


@pytest.fixture(scope="session")
def ex54():
    return builtin_algebra("ex54")


@pytest.fixture(scope="session")
def ex36():
    return builtin_algebra("ex36")


SUITE_BUDGET_SECONDS = 300
_clock = {}


def pytest_sessionstart(session):
    _clock["start"] = time.perf_counter()


def pytest_sessionfinish(session, exitstatus):
    _clock["elapsed"] = time.perf_counter() - _clock["start"]
    if _clock["elapsed"] >= SUITE_BUDGET_SECONDS and exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    elapsed = _clock.get("elapsed")
    if elapsed is None:
        return
    ok = elapsed < SUITE_BUDGET_SECONDS
    terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion 11 (suite time): "
                                f"{elapsed:.1f} s, budget {SUITE_BUDGET_SECONDS} s")
