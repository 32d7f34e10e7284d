import os
import random

import pytest

from degencount.families import random_degenerate


def pytest_collection_modifyitems(config, items):
    if os.environ.get("DEGENCOUNT_EXTENDED") == "1":
        return
    skip = pytest.mark.skip(reason="extended sweep; set DEGENCOUNT_EXTENDED=1")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def small_hosts():
    """A handful of seeded degenerate hosts small enough for brute force."""
    rng = random.Random(20240607)
    return [random_degenerate(rng.randint(6, 11), rng.randint(1, 3), rng.getrandbits(64)) for _ in range(6)]


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
