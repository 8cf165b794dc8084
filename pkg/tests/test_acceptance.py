"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL criterion N`` line with the
measured runtime and its limit.  Time limits are pinned in
``roughproof.regression``; all other checks are exact.  Run directly with
``python tests/test_acceptance.py`` for the report alone.
"""

import pytest

from roughproof import regression


@pytest.mark.parametrize("criterion", regression.CRITERIA,
                         ids=[c.__name__.removeprefix("criterion_") for c in regression.CRITERIA])
def test_acceptance(criterion, capsys):
    result = criterion()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.ok, result.line()


def test_pinned_parameters():
    assert regression.FUZZ_TERMS == 10_000 and regression.MUTANTS == 1_000
    assert regression.SWEEP_SIZE == 5
    assert max(regression.TARGET_DEPTHS.values()) <= 40 and regression.TARGET_NODES == 100_000


if __name__ == "__main__":
    results = regression.run_all()
    raise SystemExit(0 if all(r.ok for r in results) else 1)
