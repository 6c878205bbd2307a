import os
from pathlib import Path

import pytest

from unimodal_ranks.cache import ENV_CACHE_DIR, get_table

REPO = Path(__file__).resolve().parent.parent

# Orders needed by the large-n checks.
ORDERS = {
    "unimodal": 1200,
    "durfee": 1200,
    "semistrict": 1600,
    "partition-rank": 250,
    "partition-crank": 1300,
}

ACCEPTANCE_LINES: list[str] = []


def table_cache_dir() -> Path:
    env = os.environ.get(ENV_CACHE_DIR)
    return Path(env) if env else REPO / ".cache" / "tables"


@pytest.fixture(scope="session")
def big_tables():
    """Large tables, loaded from the cache or built once and stored there."""
    cache = table_cache_dir()
    return {fam: get_table(fam, N, cache) for fam, N in ORDERS.items()}


@pytest.fixture(scope="session")
def record():
    def add(label: str, ok: bool, detail: str = "") -> None:
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}".rstrip())

    return add


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
