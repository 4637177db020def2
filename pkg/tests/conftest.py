import contextlib

ACCEPTANCE: dict[int, str] = {}


@contextlib.contextmanager
def record(n: int):
    """Record the outcome of acceptance criterion ``n`` and echo it."""
    try:
        yield
    except BaseException as exc:
        skipped = type(exc).__name__ == "Skipped"
        ACCEPTANCE[n] = "SKIP" if skipped else "FAIL"
        print(f"criterion {n}: {ACCEPTANCE[n]}")
        raise
    ACCEPTANCE[n] = "PASS"
    print(f"criterion {n}: PASS")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {n}: {ACCEPTANCE[n]}")
