"""Collects one outcome per acceptance criterion for the terminal summary."""
import time

import pytest

RESULTS = pytest.StashKey[dict]()


class Criterion:
    """Context manager that times a block and records PASS or FAIL.

    A block that finishes but exceeds `limit` seconds fails as well.
    """

    def __init__(self, config, number, title, limit=None):
        self.config, self.number, self.title, self.limit = config, number, title, limit
        self.notes = []

    def note(self, text):
        self.notes.append(str(text))

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        secs = time.perf_counter() - self.start
        ok = exc_type is None
        over = ok and self.limit is not None and secs > self.limit
        if over:
            self.note(f"took {secs:.1f}s, limit {self.limit}s")
        status = "PASS" if ok and not over else "FAIL"
        line = f"criterion {self.number:>2}: {status}  {self.title}  [{secs:.1f}s]"
        if self.notes:
            line += "  (" + "; ".join(self.notes) + ")"
        self.config.stash.setdefault(RESULTS, {})[self.number] = line
        print(line)
        if over:
            pytest.fail(f"criterion {self.number} exceeded its time limit")
        return False


def skipped(config, number, title, reason):
    line = f"criterion {number:>2}: SKIP  {title}  ({reason})"
    config.stash.setdefault(RESULTS, {})[number] = line
    print(line)
