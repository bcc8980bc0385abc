from __future__ import annotations

import pytest

from floercert.weird import run_k0_pipeline


@pytest.fixture(scope="session")
def k0_report():
    return run_k0_pipeline()


@pytest.fixture(scope="session")
def k0_basis(k0_report):
    assert k0_report.hat_basis is not None
    return k0_report.hat_basis


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
