"""End-to-end acceptance gate: every reproduction check must pass.

Each test drives one check from amegraph.repro at its stated tolerance
and prints the one-line verdict (run pytest with -s to see them).
"""

import pytest

from amegraph import repro


@pytest.mark.parametrize(
    "check", repro.CHECKS, ids=[f"criterion-{i}" for i in range(1, len(repro.CHECKS) + 1)]
)
def test_criterion(check):
    result = check(quick=False)
    print(result.line())
    for warning in result.warnings:
        print(f"  WARN {warning}")
    assert result.status == "PASS", result.line()
