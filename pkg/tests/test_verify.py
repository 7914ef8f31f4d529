"""The named invariant suites themselves, at small sizes."""

import pytest

from biplattice import SizeLimitExceeded, UnknownSuite
from biplattice.verify import SUITES, run_suite


@pytest.mark.parametrize("suite", sorted(SUITES))
@pytest.mark.parametrize("n", [2, 3])
def test_every_suite_passes(suite, n):
    checks = run_suite(suite, n)
    assert checks
    failed = [c.name for c in checks if not c.passed]
    assert not failed, failed


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("nonsense", 2)


def test_suite_guards():
    with pytest.raises(SizeLimitExceeded):
        run_suite("lattice", 5)
    with pytest.raises(SizeLimitExceeded):
        run_suite("codes", 6)
