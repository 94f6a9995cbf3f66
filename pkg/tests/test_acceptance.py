"""The acceptance gate: every criterion is exact (tolerance zero) and prints
one pass/fail line, mirroring ``qf2 selftest``."""

import pytest

from qf2.checks import CHECKS


@pytest.mark.parametrize("name,fn", CHECKS, ids=[name for name, _ in CHECKS])
def test_acceptance(name, fn):
    ok, detail = fn()
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, f"{name}: {detail}"
