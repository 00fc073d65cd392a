import time

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


ACCEPTANCE: dict[int, str] = {}


class _Criterion:
    def __init__(self, number, title, limit):
        self.number, self.title, self.limit = number, title, limit
        self.notes: list[str] = []

    def note(self, msg: str) -> None:
        self.notes.append(msg)

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        dt = time.perf_counter() - self.t0
        ok = exc_type is None and dt < self.limit
        if exc_type is None and not ok:
            self.notes.append(f"time limit exceeded: {dt:.2f}s >= {self.limit}s")
        if exc_type is not None:
            self.notes.append(f"{exc_type.__name__}: {str(exc).splitlines()[0] if str(exc) else ''}")
        line = (f"[{'PASS' if ok else 'FAIL'}] criterion {self.number:2d} {self.title} "
                f"({dt:.2f}s / {self.limit}s)")
        if self.notes:
            line += "\n" + "\n".join(f"        {n}" for n in self.notes)
        ACCEPTANCE[self.number] = line
        print(line)
        if exc_type is None and not ok:
            raise AssertionError(self.notes[-1])
        return False


@pytest.fixture
def criterion():
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
