from __future__ import annotations

import sys

import pytest

from ecid.field import field_make
from ecid.io import parse_field, parse_group, parse_idempotent


@pytest.fixture(scope="session")
def f3():
    return field_make(3)


@pytest.fixture(scope="session")
def gf25():
    return parse_field("GF25")


@pytest.fixture(scope="session")
def a4():
    return parse_group("A4")


@pytest.fixture(scope="session")
def sl23():
    return parse_group("SL23")


@pytest.fixture(scope="session")
def sl23_idempotents(gf25, sl23):
    return [parse_idempotent(f"SL23_e{i}", gf25, sl23) for i in (1, 2, 3)]


@pytest.fixture(scope="session")
def a4_search(a4, f3):
    from ecid.codes import idempotent_search

    return idempotent_search(a4, f3)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
