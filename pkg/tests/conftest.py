from __future__ import annotations

from fractions import Fraction as F

import pytest

from leblab.shapespace import ShapePoint


@pytest.fixture(scope="session")
def q3_point() -> ShapePoint:
    return ShapePoint(F(1, 9), F(1, 7))


@pytest.fixture(scope="session")
def thin_pair() -> tuple[ShapePoint, ShapePoint]:
    return ShapePoint(F(1, 1700), F(1, 1700), 3399), ShapePoint(F(1, 100), F(1, 1700), 3399)


@pytest.fixture(scope="session")
def generic_I() -> ShapePoint:
    """1/3 + 2i/3: generic, region I, orbit {z, Lz, Rz, RRz}."""
    return ShapePoint(F(1, 3), F(2, 3))


_LINES = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    """``criterion(n, ok, detail)`` records and prints one acceptance line, then asserts."""
    lines = request.config.stash.setdefault(_LINES, {})

    def record(n: int, ok: bool, detail: str) -> None:
        line = f"ACCEPTANCE {n:>2}: {'PASS' if ok else 'FAIL'} - {detail}"
        lines[n] = line
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
