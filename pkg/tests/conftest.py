import random

import pytest
from hypothesis import strategies as st

from bandkit.words import parse_word


def words(max_letter=4, min_size=1, max_size=12):
    return st.lists(st.integers(1, max_letter), min_size=min_size,
                    max_size=max_size).map(tuple)


def random_word(rng, letters, max_len, min_len=1):
    return tuple(rng.randint(1, letters) for _ in range(rng.randint(min_len, max_len)))


def full_content_word(rng, n, extra):
    w = list(range(1, n + 1)) + [rng.randint(1, n) for _ in range(rng.randint(0, extra))]
    rng.shuffle(w)
    return tuple(w)


@pytest.fixture
def rng():
    return random.Random(20240611)


W = parse_word


# acceptance criteria report one line each at the end of the run
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(
            f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
