import os

import pytest

from rsrepair import Subspace, construction1, field_create

# ell = 12 and 14 table columns take a few seconds each; opt in via env
RUN_LARGE = os.environ.get("RSREPAIR_TEST_LARGE") == "1"


def all_subspaces(tower):
    """Every B-linear subspace of the tower, found by closure growth."""
    zero = Subspace.span(tower, [])
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for sub in frontier:
            elems = set(sub.enumerate())
            basis = list(sub.b_basis())
            for x in range(1, tower.size):
                if x in elems:
                    continue
                bigger = Subspace.span(tower, basis + [x])
                if bigger not in seen:
                    seen.add(bigger)
                    nxt.append(bigger)
        frontier = nxt
    return sorted(seen, key=lambda s: (s.dim, tuple(s.enumerate())))


@pytest.fixture(scope="session")
def gf4():
    return field_create(2, 1, 2)


@pytest.fixture(scope="session")
def gf9():
    return field_create(3, 1, 2)


@pytest.fixture(scope="session")
def gf16():
    return field_create(2, 1, 4)


@pytest.fixture(scope="session")
def example1():
    """Construction 1 at ell = 4 with the pinned quadratic root."""
    return construction1(4, theta_strategy="paper_example")
