import pytest

from hamming_partitions.codes import hamming_code
from hamming_partitions.partitions import phelps_search, trivial_partition
from hamming_partitions.symmetry import exhaustive_automorphisms


@pytest.fixture(scope="session")
def h3():
    return hamming_code(2)


@pytest.fixture(scope="session")
def h7():
    return hamming_code(3)


@pytest.fixture(scope="session")
def trivial3(h3):
    return trivial_partition(h3)


@pytest.fixture(scope="session")
def trivial7(h7):
    return trivial_partition(h7)


@pytest.fixture(scope="session")
def phelps7():
    found = phelps_search(2, limit=1)
    assert found, "no uniform length-7 partition found"
    return found[0]


@pytest.fixture(scope="session")
def phelps7_automorphisms(phelps7):
    return exhaustive_automorphisms(phelps7)


@pytest.fixture(scope="session")
def trivial7_automorphisms(trivial7):
    return exhaustive_automorphisms(trivial7)
