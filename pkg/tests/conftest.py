from __future__ import annotations

from functools import lru_cache

import pytest

from lgbundle import BundleSpec, labeled_set

SUITE = [(1, (1,)), (2, (1,)), (2, (0, 2)), (3, (1, 2)), (1, (0,)), (2, (0,))]
SUITE_IDS = [f"s{s}-a{''.join(map(str, a))}" for s, a in SUITE]
HIRZEBRUCH = BundleSpec(1, (1,))

CRITERIA: list[str] = []


@lru_cache(maxsize=None)
def labeled(s: int, a: tuple[int, ...], T: float = 12.0):
    return labeled_set(BundleSpec(s, a), T)


@pytest.fixture(params=SUITE, ids=SUITE_IDS)
def spec(request):
    return BundleSpec(*request.param)


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance check; assert happens in the test."""

    def record(number: int, label: str, ok: bool, detail: str = "") -> bool:
        line = f"CRITERION {number} [{'PASS' if ok else 'FAIL'}] {label}"
        if detail:
            line += f" :: {detail}"
        print(line)
        CRITERIA.append(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA:
            terminalreporter.write_line(line)
