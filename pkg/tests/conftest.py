"""Collects the acceptance verdicts and prints one line per criterion after the run."""

RESULTS: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
