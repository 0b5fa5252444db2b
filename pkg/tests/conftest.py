"""Shared fixtures and the acceptance-summary hook.

test_acceptance.py records one line per criterion through ``record_line``;
after the run those lines are replayed in a dedicated terminal section so
the pass/fail status of each criterion is visible at a glance even when
pytest captures stdout.
"""

_CRITERION_LINES: list[str] = []


def record_line(line: str) -> None:
    _CRITERION_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERION_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in _CRITERION_LINES:
        terminalreporter.write_line(line)
