"""Acceptance criteria, one test each, printing a PASS/FAIL line."""

import pytest

from abtqft.acceptance import CRITERIA


@pytest.mark.parametrize("name,criterion", CRITERIA,
                         ids=[name.replace(" ", "-") for name, _ in CRITERIA])
def test_acceptance(name, criterion, capsys):
    ok, detail = criterion()
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} {name}: {detail}")
    assert ok, detail
