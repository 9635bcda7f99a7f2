"""Shared pytest plumbing: the acceptance-criteria report.

Acceptance tests record one human-readable pass/fail line each; the
lines are echoed in a dedicated terminal section after the run so the
verdicts are visible even when pytest captures stdout.
"""

ACCEPTANCE_LINES: list[str] = []


def record_criterion(name: str, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'} {name} — {detail}")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
