import numpy as np
import pytest

from invariants.exceptions import ParameterError
from invariants.utils.gfq import get_field
from invariants.utils.linalg import MatrixGF, RowSpace

F2 = get_field(2)
F3 = get_field(3)
F4 = get_field(4)


def test_rank_and_rref():
    A = MatrixGF.parse("1,1,0;0,1,1;1,0,1", F2)
    assert A.rank() == 2
    R, pivots = A.rref()
    assert pivots == [0, 1]
    assert R.rows == 2


def test_kernel_vectors_are_annihilated():
    A = MatrixGF.parse("1,2,0,1;2,1,1,0", F3)
    basis = A.kernel()
    assert len(basis) == A.cols - A.rank()
    for v in basis:
        assert not np.any((A.entries @ v) % 3)


def test_inverse_over_gf4_by_solve():
    A = MatrixGF(F4, [[2, 1], [1, 1]])
    assert A.is_invertible()
    x = A.solve([1, 0])
    assert x is not None
    Ax = A @ MatrixGF(F4, x.reshape(-1, 1))
    assert [int(v) for v in Ax.entries[:, 0]] == [1, 0]


def test_inconsistent_system():
    A = MatrixGF.parse("1,1;1,1", F2)
    assert A.solve([1, 0]) is None


def test_row_space_membership():
    space = RowSpace(MatrixGF.parse("1,0,1;0,1,1", F2))
    assert space.dimension == 2
    assert space.contains([1, 1, 0])
    assert not space.contains([0, 0, 1])
    with pytest.raises(ParameterError):
        space.contains([1, 0])


def test_parse_rejects_bad_input():
    with pytest.raises(ParameterError):
        MatrixGF.parse("1,0;1", F2)
    with pytest.raises(ParameterError):
        MatrixGF.parse("2,0;0,1", F2)


def test_matrix_product_over_extension_field():
    A = MatrixGF(F4, [[2, 0], [0, 3]])
    B = MatrixGF(F4, [[3, 0], [0, 2]])
    assert A @ B == MatrixGF.identity(F4, 2)
