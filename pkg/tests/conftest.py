"""Shared test plumbing.

The acceptance module records one line per criterion through
record_criterion; the hook below prints them in a dedicated section at
the end of the run so the verdicts are visible in plain pytest output.
"""

_CRITERION_LINES = {}


def record_criterion(number, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    line = f"criterion {number}: {status}"
    if detail:
        line += f" ({detail})"
    _CRITERION_LINES[number] = line


def pytest_terminal_summary(terminalreporter):
    if not _CRITERION_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERION_LINES):
        terminalreporter.write_line(_CRITERION_LINES[number])
