import time
from contextlib import contextmanager

ACCEPTANCE = []


@contextmanager
def criterion(number, title, budget=None):
    """Time a block, record PASS/FAIL, and enforce an optional runtime budget in seconds."""
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - start
        if budget is not None:
            assert elapsed < budget, f"took {elapsed:.2f} s, budget {budget} s"
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        limit = f" (budget {budget:g} s)" if budget is not None else ""
        ACCEPTANCE.append(f"{status}  criterion {number:>2}: {title} [{elapsed:.2f} s{limit}]")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
        terminalreporter.write_line(line)
