import sys

import pytest

from freecourant import AnchoredModule, Dorfman, FreeLeibniz, StructureConstants, build_quotient


def module(vars, gens, anchor):
    return AnchoredModule.from_config({"vars": vars, "generators": gens, "anchor": anchor})


@pytest.fixture(scope="session")
def one_gen():
    """d=1, g=1, a(e)=∂x."""
    return module(["x"], ["e"], [["1"]])


@pytest.fixture(scope="session")
def two_gen():
    """d=1, g=2, a(e1)=∂x, a(e2)=x∂x."""
    return module(["x"], ["e1", "e2"], [["1"], ["x"]])


@pytest.fixture(scope="session")
def quotient33(one_gen):
    return build_quotient(FreeLeibniz(one_gen, 3, 3))


@pytest.fixture(scope="session")
def sc_bad():
    return StructureConstants([[[1]]], ["e"])


@pytest.fixture(scope="session")
def sc_n2():
    """[e1, e1] = e2, all other brackets zero."""
    return StructureConstants([[[0, 1], [0, 0]], [[0, 0], [0, 0]]])


@pytest.fixture(scope="session")
def dorfman1():
    return Dorfman(["x"])


def pytest_terminal_summary(terminalreporter):
    acc = sys.modules.get("test_acceptance")
    if acc is None or not acc.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acc.RESULTS):
        terminalreporter.write_line(acc.RESULTS[n])
