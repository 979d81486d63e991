"""Session-wide fixtures.

The 165-dimensional pipeline takes most of a minute, so the build and
its verification run once per session and every consumer shares them.
Wall-clock durations are kept for the acceptance budget check.
"""

import time

import pytest

from uebkit.counterexample165 import build_g165, verify_counterexample

G165_SECONDS = {}


@pytest.fixture(scope="session")
def built():
    t0 = time.perf_counter()
    g = build_g165()
    G165_SECONDS["build"] = time.perf_counter() - t0
    return g


@pytest.fixture(scope="session")
def report(built):
    t0 = time.perf_counter()
    r = verify_counterexample(built)
    G165_SECONDS["verify"] = time.perf_counter() - t0
    return r
