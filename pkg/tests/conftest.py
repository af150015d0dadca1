from __future__ import annotations

import pytest

from sudoku_society import RunConfig, run_tournament


@pytest.fixture(scope="session")
def default_config() -> RunConfig:
    return RunConfig()


@pytest.fixture(scope="session")
def batch_logs(default_config):
    """The full default 10-seed batch, computed once and shared."""
    return [run_tournament(default_config, seed) for seed in default_config.seeds]


def pytest_runtest_logreport(report):
    # One visible pass/fail line per acceptance criterion.
    if report.when == "call" and "test_acceptance" in report.nodeid:
        outcome = "PASS" if report.passed else "FAIL"
        name = report.nodeid.split("::")[-1]
        print(f"\n[acceptance] {outcome}: {name}", flush=True)
