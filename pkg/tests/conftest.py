from __future__ import annotations

import random

import pytest

from convlab.gf import field_make


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture(params=[(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2)], ids=lambda pm: f"GF{pm[0]}^{pm[1]}")
def small_field(request):
    return field_make(*request.param)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
