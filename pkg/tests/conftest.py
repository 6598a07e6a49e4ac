import random
from itertools import combinations

import pytest

from subsetcert.counting import Instance

ACCEPTANCE_LINES = []


def random_instance(rng: random.Random, n_range=(1, 14), t_max=40) -> Instance:
    n = rng.randint(*n_range)
    t = rng.randint(1, t_max)
    return Instance(tuple(rng.randint(1, t) for _ in range(n)), t)


def enumerate_subset_sums(weights):
    """Every index subset's weight sum, via itertools (no DP, no numpy)."""
    for k in range(len(weights) + 1):
        for combo in combinations(range(len(weights)), k):
            yield sum(weights[i] for i in combo)


def sieve(limit):
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, int(limit ** 0.5) + 1):
        if flags[i]:
            flags[i * i::i] = bytearray(len(flags[i * i::i]))
    return [i for i, f in enumerate(flags) if f]


@pytest.fixture
def example1():
    return Instance((1, 2, 3, 4), 17)


@pytest.fixture
def acceptance_line():
    def record(number, ok, detail):
        ACCEPTANCE_LINES.append(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
