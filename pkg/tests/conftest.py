import numpy as np
import pytest

from gammaring import (build_matrix_ring, build_table_ring, direct_product,
                       make_group, trivial_ring)


def f4_ring():
    """M = additive F4, Gamma = Z2, product g * (x * y) with F4 multiplication."""
    mul = {(0, 0): 0, (0, 1): 0, (0, 2): 0, (0, 3): 0, (1, 1): 1, (1, 2): 2,
           (1, 3): 3, (2, 2): 3, (2, 3): 1, (3, 3): 2}
    mu = np.zeros((4, 2, 4), dtype=np.int32)
    for x in range(4):
        for y in range(4):
            mu[x, 1, y] = mul[(min(x, y), max(x, y))]
    return build_table_ring(make_group([2, 2]), make_group([2]), mu)


def z2_scalar_ring():
    """M = Gamma = Z2 with product x*g*y mod 2."""
    mu = np.zeros((2, 2, 2), dtype=np.int32)
    mu[1, 1, 1] = 1
    return build_table_ring(make_group([2]), make_group([2]), mu)


@pytest.fixture(scope="session")
def matrix222():
    return build_matrix_ring(2, 2, 2)


@pytest.fixture(scope="session")
def matrix212():
    return build_matrix_ring(2, 1, 2)


@pytest.fixture(scope="session")
def trivial_z4():
    return trivial_ring(make_group([4]), make_group([2]))


@pytest.fixture(scope="session")
def f4ring():
    return f4_ring()


@pytest.fixture(scope="session")
def z2scalar():
    return z2_scalar_ring()


@pytest.fixture(scope="session")
def small_ring_corpus(trivial_z4, f4ring, z2scalar):
    """Rings with |M| <= 4 and |Gamma| <= 2 for search-vs-brute-force checks."""
    return [
        ("trivial(Z4,Z2)", trivial_z4),
        ("trivial(Z2xZ2,Z2)", trivial_ring(make_group([2, 2]), make_group([2]))),
        ("trivial(Z2,Z2)", trivial_ring(make_group([2]), make_group([2]))),
        ("F4", f4ring),
        ("Z2-scalar", z2scalar),
    ]


@pytest.fixture(scope="session")
def barnes_corpus(matrix222, matrix212, trivial_z4, f4ring, z2scalar):
    """Barnes-verified rings of order <= 16 used for the primeness equivalence."""
    return [
        ("matrix(2,2,2)", matrix222),
        ("matrix(2,1,2)", matrix212),
        ("matrix(2,2,1)", build_matrix_ring(2, 2, 1)),
        ("matrix(2,1,1)", build_matrix_ring(2, 1, 1)),
        ("trivial(Z4,Z2)", trivial_z4),
        ("trivial(Z2xZ2,Z2)", trivial_ring(make_group([2, 2]), make_group([2]))),
        ("trivial(Z16,Z2)", trivial_ring(make_group([16]), make_group([2]))),
        ("F4", f4ring),
        ("Z2-scalar", z2scalar),
        ("matrix(2,1,1)^2", direct_product(build_matrix_ring(2, 1, 1),
                                           build_matrix_ring(2, 1, 1))),
        ("trivialZ2 x matrix(2,1,1)", direct_product(
            trivial_ring(make_group([2]), make_group([2])), build_matrix_ring(2, 1, 1))),
    ]


def midx(ring, *rows):
    """Index of the matrix with the given rows in the element enumeration of M."""
    flat = [v for row in rows for v in row]
    return ring.m_group.index_of(tuple(flat))


def gidx(ring, *rows):
    flat = [v for row in rows for v in row]
    return ring.gamma_group.index_of(tuple(flat))
