"""Shared test plumbing.

The acceptance tests register one line per criterion here so the run ends
with a compact pass/fail scoreboard regardless of how pytest interleaved
the output.
"""

ACCEPTANCE_RESULTS: list[tuple[str, str, bool]] = []


def record_criterion(cid: str, description: str, passed: bool) -> None:
    ACCEPTANCE_RESULTS.append((cid, description, passed))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for cid, description, passed in sorted(ACCEPTANCE_RESULTS):
        word = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{word}] {cid}: {description}")
