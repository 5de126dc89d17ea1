"""One test per acceptance criterion; each prints a single PASS/FAIL line.

Tolerances are pinned here and must match the library defaults: modulus and
expectation checks use 1e-9, and the runtime caps are 1 s (C1), 120 s for the
n = 4 exact search (C2), 60 s (C5) and 10 s (C9).  Run directly with
``python3 tests/test_acceptance.py`` for the summary alone.
"""
import pytest

from l2mbqc import acceptance
from l2mbqc.acceptance import CRITERIA, criterion_3, criterion_4, criterion_6, random_dyadic_schemes

TOL = 1e-9
RUNTIME_CAPS = {1: 1.0, 2: 120.0, 5: 60.0, 9: 10.0}

LINES = []


@pytest.fixture(scope="module")
def sample():
    # criteria 3, 4 and 6 share one seeded sample of 500 schemes
    return random_dyadic_schemes()


def test_pinned_constants():
    assert acceptance.TOL == TOL
    assert acceptance.SAMPLE_SIZE == 500


def _check(result):
    line = result.line()
    LINES.append(line)
    print(line)
    for label, ok, detail in result.checks:
        assert ok, f"C{result.cid} {label}: {detail}"


@pytest.mark.parametrize("cid", sorted(CRITERIA))
def test_criterion(cid, sample):
    if cid == 3:
        res = criterion_3(sample)
    elif cid == 4:
        res = criterion_4(sample)
    elif cid == 6:
        res = criterion_6(sample)
    else:
        res = CRITERIA[cid]()
    _check(res)
    assert res.elapsed < RUNTIME_CAPS.get(cid, 300.0)


if __name__ == "__main__":
    import sys
    results = acceptance.run_all()
    for r in results:
        print(r.line())
    sys.exit(0 if all(r.passed for r in results) else 1)
