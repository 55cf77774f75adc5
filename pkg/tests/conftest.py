import sys

import pytest

_VERDICTS = []


def _report_verdict(criterion: int, ok: bool, detail: str) -> None:
    line = f"[criterion {criterion}] {'PASS' if ok else 'FAIL'} - {detail}"
    _VERDICTS.append(line)
    # also emit immediately so `pytest -s` shows verdicts as they land
    print(line, file=sys.__stdout__, flush=True)


@pytest.fixture
def verdict():
    """Recorder for acceptance checklist lines, echoed in the summary."""
    return _report_verdict


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _VERDICTS:
        terminalreporter.section("acceptance checklist")
        for line in _VERDICTS:
            terminalreporter.line(line)
