"""Shared fixtures: acceptance-criterion bookkeeping.

``criterion`` records one pass/fail verdict per numbered acceptance check
and the terminal summary prints one line per criterion at the end of the
run, so the gate's outcome is readable without digging through tracebacks.
"""

from __future__ import annotations

import pytest

_RESULTS: dict[int, tuple[bool, str]] = {}
_EXPECTED = set(range(1, 13))


@pytest.fixture
def criterion():
    """Record (number, passed, detail) and assert; one call per criterion."""

    def record(num: int, passed: bool, detail: str = "") -> None:
        _RESULTS[num] = (bool(passed), detail)
        assert passed, f"criterion {num:02d}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_EXPECTED | set(_RESULTS)):
        if num in _RESULTS:
            passed, detail = _RESULTS[num]
            verdict = "PASS" if passed else "FAIL"
        else:
            verdict, detail = "NOT RUN", ""
        line = f"CRITERION {num:02d}: {verdict}"
        if detail:
            line += f" — {detail}"
        terminalreporter.write_line(line)
