"""One pass/fail line per acceptance criterion, repeated in the terminal summary."""

from __future__ import annotations

import pytest

from superdual import acceptance


@pytest.mark.parametrize("number", [c[0] for c in acceptance.CHECKS], ids=lambda n: f"criterion-{n:02d}")
def test_criterion(number, acceptance_log):
    result = acceptance.run_check(number)
    line = f"{result.line()} ({result.seconds:.1f}s)"
    print(line)
    acceptance_log.append((number, line))
    # run_check folds the time budget into ok
    assert result.ok, line
