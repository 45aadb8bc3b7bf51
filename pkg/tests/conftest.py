from pathlib import Path

import pytest
from hypothesis import settings

from flawdetect.frontend import load_sources, model_from_source

settings.register_profile("default", deadline=None)
settings.load_profile("default")

FIXTURES = Path(__file__).parent / "fixtures"
PLANTED = FIXTURES / "planted"

F1_SOURCE = """
class A { private var x: int; private var y: int;
          public def getX() { return this.x; }
          public def m1() { this.x = 1; }
          public def m2() { if (this.x > 0) { this.y = 2; } } }
class B extends A { public def m3(d: D) { d.getZ(); } }
class C extends A { }
class D { private var z: int; public def getZ() { return this.z; } }
"""

CHAIN_SOURCE = """
class A { }
class B extends A { }
class C extends B { }
"""


@pytest.fixture(scope="session")
def f1():
    return model_from_source(F1_SOURCE, "f1.moo")


@pytest.fixture(scope="session")
def chain():
    return model_from_source(CHAIN_SOURCE, "chain.moo")


@pytest.fixture(scope="session")
def planted():
    return load_sources([PLANTED / "corpus.moo"])


# -- acceptance criteria summary ---------------------------------------------

_criteria = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        number, title = marker.args
        _criteria.append((number, title, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed in sorted(_criteria):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number:>2}: {title}")
