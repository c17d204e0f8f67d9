"""Acceptance gate: one test per verification criterion.

Each case runs a single criterion suite with the same derived seed that
``run_all(0)`` would hand it, so ``pytest -v`` prints one pass/fail line
per criterion and ``holodom verify --all`` reproduces the identical runs.
"""

import pytest

from holodom.verification import SUITES


_IDS = ["%02d-%s" % (k + 1, fn.__name__) for k, fn in enumerate(SUITES)]


@pytest.mark.parametrize("index", range(len(SUITES)), ids=_IDS)
def test_criterion(index):
    report = SUITES[index](100 * index)
    status = "PASS" if report.passed else "FAIL"
    print("criterion %d: %s (%s)" % (report.criterion, status, report.name))
    assert report.passed, report.details
