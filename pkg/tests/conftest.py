from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import strategies as st

from msplit import gfp
from msplit.errors import MsplitError
from msplit.fixtures import fixture
from msplit.matroid import Matroid

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def F1() -> Matroid:
    return fixture("F1")


@pytest.fixture(scope="session")
def F2() -> Matroid:
    return fixture("F2")


@pytest.fixture(scope="session")
def F3() -> Matroid:
    return fixture("F3")


@pytest.fixture(scope="session")
def F4() -> Matroid:
    return fixture("F4")


@pytest.fixture(scope="session")
def F5() -> Matroid:
    return fixture("F5")


def labelsets(family) -> set[frozenset[str]]:
    """Family of GroundSubsets / Circuits / label iterables as a set of label sets."""
    out = set()
    for item in family:
        members = getattr(item, "members", item)
        out.add(frozenset(members))
    return out


def sets(*members: str) -> set[frozenset[str]]:
    """``sets("abc", "bcd")`` for single-character labels."""
    return {frozenset(s) for s in members}


def brute_circuits(m: Matroid) -> set[frozenset[str]]:
    """Circuits straight from the definition, ranks via rref on each column subset."""
    n = m.size

    def rank(idx):
        return gfp.rank(m.matrix.submatrix(idx)) if idx else 0

    out = set()
    for k in range(1, n + 1):
        for combo in combinations(range(n), k):
            if rank(combo) == k:
                continue
            if all(rank(sub) == k - 1 for sub in combinations(combo, k - 1)):
                out.add(frozenset(m.ground[i] for i in combo))
    return out


@st.composite
def matroids(draw, primes=(2, 3, 5), max_rows=3, max_cols=6) -> Matroid:
    """Random loopless, coloopless represented matroids."""
    seed = draw(st.integers(0, 2**32 - 1))
    p = draw(st.sampled_from(primes))
    rng = random.Random(seed)
    while True:
        rows = rng.randint(1, max_rows)
        cols = rng.randint(rows + 1, max_cols)
        grid = [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)]
        try:
            return Matroid(gfp.FieldMatrix(p, grid), [chr(97 + j) for j in range(cols)])
        except MsplitError:
            continue


@st.composite
def split_instances(draw, **kwargs):
    from msplit.splitting import SplitInstance

    m = draw(matroids(**kwargs))
    t = draw(st.integers(1, m.full_mask - 1))
    return SplitInstance(m, t)
