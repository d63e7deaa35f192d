"""The twelve acceptance criteria, one test each, at their stated tolerances.

A pass/fail line per criterion is printed in the terminal summary.
"""
import json

import pytest

from redblue.verify import CHECKS, run_check

ACCEPTANCE_LINES = []


@pytest.mark.parametrize("cid", [c[0] for c in CHECKS], ids=[f"criterion_{c[0]:02d}" for c in CHECKS])
def test_criterion(cid):
    r = run_check(cid)
    ACCEPTANCE_LINES.append(r.line())
    assert r.passed, json.dumps(r.as_json()["detail"], indent=1)[:4000]
