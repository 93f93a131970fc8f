"""The twelve acceptance criteria, exact integers and no tolerance.

Each test prints one PASS/FAIL line; the lines are repeated in the terminal
summary so they appear in plain ``pytest -v`` output.
"""

import pytest

from permpatterns import acceptance

RESULTS: list = []


@pytest.mark.parametrize("number", sorted(acceptance.CRITERIA))
def test_criterion(number):
    r = acceptance.run([number])[0]
    RESULTS.append(r)
    print(r.line())
    for f in r.failures:
        print("    ", f)
    assert r.passed, "; ".join(r.failures)
