from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from gck.fuzz import Fuzzer, FuzzConfig
from gck.hitchin import HitchinPair
from gck.tensorfield import Bivector, Chart, EndoField, KForm

settings.register_profile("gck", deadline=None, max_examples=25,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("gck")

seeds = st.integers(min_value=0, max_value=2**31 - 1)


def fuzzers(dims=(2, 3, 4), degrees=(0, 1, 2)):
    return st.builds(lambda seed, dim, degree: Fuzzer(FuzzConfig(seed, dim, degree)),
                     seeds, st.sampled_from(dims), st.sampled_from(degrees))


@pytest.fixture
def R2() -> Chart:
    return Chart(("x", "y"))


@pytest.fixture
def R3() -> Chart:
    return Chart(("x", "y", "z"))


@pytest.fixture
def R4() -> Chart:
    return Chart(("x", "y", "z", "w"))


def endo(chart: Chart, rows) -> EndoField:
    return EndoField(chart, [[chart.poly(str(x)) for x in row] for row in rows])


def rotation(chart: Chart) -> EndoField:
    """The standard complex structure on consecutive coordinate pairs."""
    n = chart.dimension
    rows = [["0"] * n for _ in range(n)]
    for k in range(n // 2):
        rows[2 * k + 1][2 * k] = "1"
        rows[2 * k][2 * k + 1] = "-1"
    return endo(chart, rows)


def darboux(chart: Chart) -> KForm:
    return KForm(chart, 2, {(2 * k, 2 * k + 1): 1 for k in range(chart.dimension // 2)})


def bivector(chart: Chart, comps: dict) -> Bivector:
    return Bivector(chart, {k: chart.poly(str(v)) for k, v in comps.items()})


def form2(chart: Chart, comps: dict) -> KForm:
    return KForm(chart, 2, {k: chart.poly(str(v)) for k, v in comps.items()})


def pair(chart: Chart, omega: KForm, rows) -> HitchinPair:
    return HitchinPair(omega, endo(chart, rows))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
