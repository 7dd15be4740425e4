"""Shared fixtures: cached pipeline runs and acceptance-criterion logging.

The acceptance tests cover numbered criteria; each one logs a PASS/FAIL line
that is printed after the run so the verdict per criterion is visible at a
glance even inside a large pytest session.
"""

from __future__ import annotations

import time
from contextlib import contextmanager

import pytest

from enriques_cnd.datasets import load_dataset
from enriques_cnd.report import RunOptions, RunReport, run


class ReportCache:
    """Runs the pipeline at most once per (dataset, options) pair."""

    def __init__(self):
        self._reports: dict = {}
        self.elapsed: dict = {}

    def get(self, name: str, options: RunOptions = RunOptions()) -> RunReport:
        key = (name, options)
        if key not in self._reports:
            data = load_dataset(name)
            start = time.perf_counter()
            self._reports[key] = run(data, options)
            self.elapsed[key] = time.perf_counter() - start
        return self._reports[key]

    def runtime(self, name: str, options: RunOptions = RunOptions()) -> float:
        self.get(name, options)
        return self.elapsed[(name, options)]


_CACHE = ReportCache()

CRITERION_LABELS = {
    1: "d16: census, cnd=10, 16 maximal, example sequence",
    2: "mlp1: census, cnd=8 with 8 sequences, saturated extras",
    3: "mlp2: census, cnd=5 with exactly 3 sequences",
    4: "kondo1-7: cnd, maximal counts, censuses, saturated tables",
    5: "kondo1: canonical extensions contain P and Q with Fano data",
    6: "overlattice assistant: Z2xZ2 groups and isotropic classes",
    7: "property suites (a)-(g)",
    8: "reporting: nd(S) >= cnd when cnd < 10, flag at cnd = 10",
}

_RESULTS: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def reports() -> ReportCache:
    return _CACHE


@pytest.fixture
def criterion():
    """Context manager logging PASS/FAIL per acceptance criterion.

    Usage: ``with criterion(3) as detail: ...; detail["value"] = "cnd=5"``.
    Any exception marks the criterion FAIL and propagates to pytest.
    """

    @contextmanager
    def check(number: int):
        detail: dict = {}
        try:
            yield detail
        except BaseException as exc:
            _RESULTS[number] = (False, f"{type(exc).__name__}: {exc}")
            raise
        else:
            _RESULTS[number] = (True, str(detail.get("value", "")))

    return check


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _RESULTS:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for number in sorted(CRITERION_LABELS):
        label = CRITERION_LABELS[number]
        if number in _RESULTS:
            ok, detail = _RESULTS[number]
            status = "PASS" if ok else "FAIL"
            suffix = f" -- {detail}" if detail else ""
            terminalreporter.write_line(
                f"  [criterion {number}] {status}: {label}{suffix}"
            )
        else:
            terminalreporter.write_line(
                f"  [criterion {number}] NOT RUN: {label}"
            )
