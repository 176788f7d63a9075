import itertools

import pytest
from hypothesis import settings

from wcomm.catalog import Catalog, symmetric

settings.register_profile("wcomm", deadline=None, max_examples=60)
settings.load_profile("wcomm")


@pytest.fixture(scope="session")
def catalog():
    return Catalog.builtin()


@pytest.fixture(scope="session")
def S3():
    return symmetric(3)


def parity(p):
    """Sign of a permutation tuple by counting inversions (independent of the library)."""
    return sum(1 for i, j in itertools.combinations(range(len(p)), 2) if p[i] > p[j]) % 2


def perm_index(G, perm):
    return [tuple(r) for r in G.permutations.tolist()].index(tuple(perm))


@pytest.fixture(scope="session")
def s3_parts(S3):
    """Elements of S3 sorted into the even ones (A3) and the transpositions."""
    perms = [tuple(r) for r in S3.permutations.tolist()]
    even = sorted(i for i, p in enumerate(perms) if parity(p) == 0)
    odd = sorted(i for i, p in enumerate(perms) if parity(p) == 1)
    return even, odd


# -- acceptance summary ----------------------------------------------------

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[criterion] = (ok, detail)
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
