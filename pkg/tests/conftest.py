import os
import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

REPO = Path(__file__).resolve().parent.parent


@pytest.fixture(scope="session")
def g2_cache():
    """Directory with all eight genus-2 multiplication matrices, built on first use."""
    from fixed3torsion.invariants2 import build_all, verify_cache
    directory = os.environ.get("FIXED3TORSION_CACHE") or str(REPO / ".cache")
    status = verify_cache(directory)
    if any(v != "ok" for v in status.values()):
        build_all(directory=directory)
        status = verify_cache(directory)
    assert all(v == "ok" for v in status.values()), status
    return directory


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    from report import RESULTS
    lines = config.stash.get(RESULTS, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
