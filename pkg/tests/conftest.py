from __future__ import annotations

import pytest
from hypothesis import strategies as st

from adestringy import (
    Polynomial,
    SingularitySpec,
    build_resolution,
    contribution_closed,
    contribution_from_strata,
)


def acceptance_grid() -> list[SingularitySpec]:
    cells = [SingularitySpec("A", n, m) for n in range(1, 21) for m in range(3, 11)]
    cells += [SingularitySpec("D", n, m) for n in range(4, 21) for m in range(3, 11)]
    cells += [SingularitySpec.of(f, m=m) for f in ("E6", "E7", "E8") for m in range(3, 11)]
    return cells


GRID = acceptance_grid()


class GridCell:
    __slots__ = ("spec", "resolution", "strata", "closed")

    def __init__(self, spec):
        self.spec = spec
        self.resolution = build_resolution(spec)
        self.strata = contribution_from_strata(self.resolution)
        self.closed = contribution_closed(spec)


@pytest.fixture(scope="session")
def grid_cells() -> list[GridCell]:
    return [GridCell(s) for s in GRID]


coeff = st.integers(min_value=-9, max_value=9)
polys = st.lists(coeff, max_size=7).map(Polynomial)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


# one summary line per acceptance criterion
_acceptance: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or report.outcome != "passed":
        _acceptance[name] = report.outcome.upper()


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        terminalreporter.write_line(f"{_acceptance[name]:<7} {name}")
