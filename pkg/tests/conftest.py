"""Shared fixtures: the running-example database, the worked catalog, JIT warmup."""

from __future__ import annotations

import pytest
from hypothesis import settings

from psph.histogram import Bucket, Histogram

# A first call into a freshly compiled kernel signature can pause for the JIT;
# wall-clock deadlines would misattribute that to the example being run.
settings.register_profile("nodeadline", deadline=None)
settings.load_profile("nodeadline")
from psph.miner import MinerConfig, mine
from psph.patterns import PositionalPattern, database

# The four-row example database the mining ground truth is stated over.
EXAMPLE_ROWS = ("ABCABE", "BCACDBE", "BACDCEDB", "ACECBE")

# mine() at minsup 3 over EXAMPLE_ROWS, positional mode, as render -> frequency.
POSITIONAL_21 = {
    "AC": 3, "AC%B": 3, "AC%E": 3,
    "A": 4, "A%B": 4, "A%C": 4,
    "A%C%BE": 3, "A%C%B": 4, "A%C%E": 4,
    "B": 4, "B%A": 3, "B%A%B": 3, "B%A%E": 3,
    "B%C": 3, "B%C%B": 3, "B%C%E": 3, "B%E": 4,
    "C": 4, "C%C": 3, "C%C%B": 3, "C%C%E": 3,
}

# Same database and support in regular mode (every pattern fully gapped).
REGULAR_18 = {
    "A": 4, "A%B": 4, "A%C": 4, "A%C%B": 4, "A%C%B%E": 3, "A%C%E": 4,
    "B": 4, "B%A": 3, "B%A%B": 3, "B%A%E": 3,
    "B%C": 3, "B%C%B": 3, "B%C%E": 3, "B%E": 4,
    "C": 4, "C%C": 3, "C%C%B": 3, "C%C%E": 3,
}

# The pairwise-closed twelve-pattern subset the histogram layout example uses.
CLOSED_12 = {
    "A%C%BE": 3, "AC%B": 3, "AC%E": 3,
    "A%C%B": 4, "A%C%E": 4,
    "B%A%B": 3, "B%A%E": 3, "B%C%B": 3, "B%C%E": 3, "B%E": 4,
    "C%C%B": 3, "C%C%E": 3,
}


# Verdict lines collected by the acceptance tests, printed as a summary
# section so a full run always ends with one line per numbered check.
ACCEPTANCE_VERDICTS: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_VERDICTS:
        terminalreporter.section("acceptance")
        for line in sorted(ACCEPTANCE_VERDICTS):
            terminalreporter.line(line)


@pytest.fixture(scope="session")
def acceptance_verdicts():
    return ACCEPTANCE_VERDICTS


@pytest.fixture(scope="session")
def example_db():
    return database(EXAMPLE_ROWS)


def _bucket(number: int, like: str, freq: int) -> Bucket:
    return Bucket(number, PositionalPattern(tuple(like.split("%"))), freq)


@pytest.fixture(scope="session")
def worked_catalog() -> Histogram:
    """The printed four-endpoint catalog every estimator worked case runs against."""
    return Histogram(
        buckets=(
            _bucket(20, "A%C%CB", 6),
            _bucket(36, "AC%CB", 3),
            _bucket(54, "C", 8),
            _bucket(74, "C%CB", 6),
        ),
        db_size=8,
        minsup_count=2,
        bucket_count_requested=4,
        t_percent=10.0,
    )


@pytest.fixture(scope="session", autouse=True)
def warm_kernels(example_db):
    """Compile the kernels once so timed tests never pay the JIT cost."""
    mine(example_db, MinerConfig(minsup=3))
