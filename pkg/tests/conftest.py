import time
from contextlib import contextmanager

RESULTS = {}


@contextmanager
def criterion(number, title, budget=None):
    """Record pass/fail (and wall time) for one acceptance criterion."""
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        RESULTS[number] = (False, title, time.perf_counter() - start, f"{type(exc).__name__}: {exc}".splitlines()[0])
        raise
    elapsed = time.perf_counter() - start
    if budget is not None and elapsed > budget:
        RESULTS[number] = (False, title, elapsed, f"took {elapsed:.2f}s > {budget}s")
        raise AssertionError(f"criterion {number} exceeded its {budget}s budget ({elapsed:.2f}s)")
    RESULTS[number] = (True, title, elapsed, "")


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, title, elapsed, note = RESULTS[n]
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {title} ({elapsed:.2f}s)"
        terminalreporter.write_line(line + (f" -- {note}" if note else ""))
