import math
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
TABLE = ROOT / "fixtures" / "records.tsv"

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def divisor_lists(limit: int) -> list[list[int]]:
    """Independent oracle: divisors by marking multiples."""
    out = [[] for _ in range(limit + 1)]
    for d in range(1, limit + 1):
        for m in range(d, limit + 1, d):
            out[m].append(d)
    return out


def z_oracle(n: int) -> float:
    return math.fsum(math.log(d) / d for d in range(1, n + 1) if n % d == 0)


@pytest.fixture(scope="session")
def divs_1e5():
    return divisor_lists(10**5)


@pytest.fixture(scope="session")
def table_path():
    return TABLE
