"""Acceptance suite: one test per criterion in muniform.verify.

Each test runs its criterion end to end and prints the same summary
line the `muniform verify` subcommand would, so a verbose run shows
one pass/fail line per criterion. Tolerances live in muniform.verify
next to the checks themselves.
"""

import pytest

from muniform import verify


@pytest.mark.parametrize("number", sorted(verify.CRITERIA),
                         ids=lambda n: f"criterion_{n:02d}")
def test_acceptance(number):
    result = verify.CRITERIA[number]()
    print(result.summary_line())
    for ok, text in result.checks:
        print(("  ok   " if ok else "  FAIL ") + text)
    passed = result.passed
    assert passed, result.summary_line()
