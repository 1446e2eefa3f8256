"""
Tests for the acceptance runner; the heavy checks run only with NILOP_SLOW set.
"""

import os

import pytest

from nilop.acceptance import CHECKS, CheckResult, run_acceptance
from nilop.config import NilopConfig

slow = pytest.mark.skipif(not os.environ.get("NILOP_SLOW"), reason="set NILOP_SLOW=1 for slow checks")

FAST = ["s3_classification", "tau_partitions", "counts", "bijections", "kronecker_pair", "root_table", "svg"]


@pytest.mark.parametrize("name", FAST)
def test_fast_checks_pass(name):
    """Each cheap check passes on its own."""
    [result] = run_acceptance(NilopConfig(), [name])
    assert result.passed, str(result)


@slow
def test_all_checks_pass():
    """The full acceptance suite."""
    results = run_acceptance(NilopConfig(p=2))
    assert [r.name for r in results] == list(CHECKS)
    assert all(r.passed for r in results), "\n".join(str(r) for r in results if not r.passed)


def test_budget_failures_are_reported_not_raised():
    """A check that runs out of budget fails without stopping the run."""
    results = run_acceptance(NilopConfig(budget=1), ["s3_classification", "tau_partitions"])
    assert [r.passed for r in results] == [False, True]
    assert "BudgetExceededError" in results[0].detail


def test_unknown_check():
    """Only named checks run."""
    with pytest.raises(ValueError, match="Unknown checks"):
        run_acceptance(NilopConfig(), ["everything"])


def test_result_line():
    """PASS/FAIL lines are aligned."""
    assert str(CheckResult("svg", True, "ok")).startswith("PASS  svg")
    assert str(CheckResult("svg", False)).startswith("FAIL")
