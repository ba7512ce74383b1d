"""Acceptance gate: every criterion runs at its stated runtime budget.

Run with `pytest -v tests/test_acceptance.py` for one line per criterion,
or `digifix verify` for the same table outside pytest.
"""

import pytest

from digifix.acceptance import CHECKS, _PROPERTY_SUITE_TOTAL, run_check

_DURATIONS = {}


@pytest.mark.parametrize("cid,title", [(c[0], c[1]) for c in CHECKS],
                         ids=[f"criterion_{c[0]}" for c in CHECKS])
def test_criterion(cid, title):
    result = run_check(cid)
    _DURATIONS[cid] = result.seconds
    status = "PASS" if result.ok else "FAIL"
    print(f"[{status}] {cid} {title}: {result.detail} ({result.seconds:.2f}s)")
    assert result.ok, f"{cid} {title}: {result.detail}"


def test_property_suites_total_runtime():
    measured = [v for k, v in _DURATIONS.items() if k.startswith("11")]
    assert measured, "criterion 11 checks did not run first"
    total = sum(measured)
    print(f"property suites total: {total:.1f}s of {_PROPERTY_SUITE_TOTAL:.0f}s")
    assert total <= _PROPERTY_SUITE_TOTAL
