import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from metabelian import GroupWord, LaurentPoly

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def laurent_polys(n, max_terms=4, max_exp=3, max_coeff=5):
    monos = st.tuples(*[st.integers(-max_exp, max_exp)] * n)
    return st.dictionaries(monos, st.integers(-max_coeff, max_coeff),
                           max_size=max_terms).map(lambda d: LaurentPoly(n, d))


def words(n, max_len=10):
    letters = st.sampled_from([x for i in range(1, n + 1) for x in (i, -i)])
    return st.lists(letters, max_size=max_len).map(lambda ls: GroupWord(n, ls))


def random_word(rng: random.Random, n: int, max_len: int) -> GroupWord:
    k = rng.randint(0, max_len)
    return GroupWord(n, [rng.choice((1, -1)) * rng.randint(1, n) for _ in range(k)])


@pytest.fixture
def rng():
    return random.Random(20240601)


ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, line = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {k:2d}. {line}")
