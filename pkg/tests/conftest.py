import os
import random

import pytest
from hypothesis import strategies as st

from pencilreg.field import GF, QQ
from pencilreg.linalg import Matrix
from pencilreg.pencil import block, direct_sum, random_multiset, random_regular, regular_block, scramble

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")

FIELDS = [QQ, GF(5)]

# filled in by tests/test_acceptance.py, printed at the end of the run
ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def fixture_path(name):
    return os.path.join(FIXTURES, name)


@pytest.fixture(params=FIELDS, ids=["QQ", "GF5"])
def field(request):
    return request.param


def build(blocks, D, seed=None):
    """Direct sum of (I_r, D) and the blocks, optionally scrambled."""
    F = D.field
    p = direct_sum([regular_block(D)] + [block(kind, k, F) for kind, k in blocks], F)
    if seed is None:
        return p
    return scramble(p, seed)[0]


def random_instance(F, seed, max_size=12, max_regular=4):
    rng = random.Random(seed)
    bm = random_multiset(rng, max_size)
    D = random_regular(F, rng.randint(0, max_regular), rng)
    return bm, D, build(bm, D, seed)


def matrices(F, max_rows=4, max_cols=4, min_rows=0, min_cols=0):
    """Hypothesis strategy for small matrices over F."""
    if F == QQ:
        elems = st.integers(-3, 3)
    else:
        elems = st.integers(0, F.p - 1)

    @st.composite
    def strat(draw):
        m = draw(st.integers(min_rows, max_rows))
        n = draw(st.integers(min_cols, max_cols))
        rows = draw(st.lists(st.lists(elems, min_size=n, max_size=n), min_size=m, max_size=m))
        return Matrix(F, rows, m, n)

    return strat()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
