import contextlib

ACCEPTANCE_RESULTS = []


@contextlib.contextmanager
def criterion(number, description):
    """Record a pass/fail line for one acceptance criterion."""
    try:
        yield
    except BaseException:
        ACCEPTANCE_RESULTS.append((number, "FAIL", description))
        raise
    ACCEPTANCE_RESULTS.append((number, "PASS", description))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, description in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"[{status}] AC{number:02d} {description}")
