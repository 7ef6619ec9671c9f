import random
from fractions import Fraction

import numpy as np
import pytest

from mixedgb import oracle
from mixedgb.field import PrimeField, RationalField
from mixedgb.macaulay import DegreeMismatchError, build_matrix, echelonize, identity, matmul, rank, rref
from mixedgb.orders import BaseOrder, SparseOrder
from mixedgb.poly import Poly, homogenize, homogeneous_ambient


@pytest.fixture
def order_h(square_ctx):
    return SparseOrder(square_ctx, BaseOrder()).graded()


def plain_rows(A, field):
    """Rows of a dense array as polynomials over column indices (plain ambient)."""
    return [
        (("r", i), Poly({(len(A[i]) - j,): A[i][j] for j in range(len(A[i]))}, field)) for i in range(len(A))
    ]


def test_empty_matrix(F):
    M = build_matrix([], BaseOrder(), columns=[], field=F)
    assert M.shape == (0, 0)
    assert rank(M) == 0


def test_single_polynomial(square_ctx, F, order_h):
    amb = homogeneous_ambient(square_ctx)
    f = Poly({(1, 1, 2): 3, (2, 0, 2): 1, (0, 0, 2): 5}, F, amb)
    cols = sorted(square_ctx.monomials_of_degree(2), key=order_h.key, reverse=True)
    M = build_matrix([(("f", 0), f)], order_h, columns=cols)
    lead = M.leading_columns()[0]
    assert M.columns[lead] == f.leading_monomial(order_h)
    assert M.row_poly(0) == f


def test_mixed_degrees_rejected(square_ctx, F, order_h):
    amb = homogeneous_ambient(square_ctx)
    with pytest.raises(DegreeMismatchError):
        build_matrix([("a", Poly({(1, 1, 1): 1}, F, amb)), ("b", Poly({(1, 1, 2): 1}, F, amb))], order_h)


def test_columns_must_decrease(square_ctx, F, order_h):
    cols = sorted(square_ctx.monomials_of_degree(1), key=order_h.key)
    amb = homogeneous_ambient(square_ctx)
    with pytest.raises(ValueError):
        build_matrix([("a", Poly({(1, 1, 1): 1}, F, amb))], order_h, columns=cols)


def test_identity_pattern_and_duplicate_row(F):
    rows = plain_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]], F)
    R = rref(build_matrix(rows, BaseOrder(), check_degree=False))
    assert R.zero_rows == 0 and R.rank == 3
    rows = plain_rows([[1, 2, 3], [1, 2, 3], [0, 1, 1]], F)
    R = rref(build_matrix(rows, BaseOrder(), check_degree=False))
    assert R.zero_rows == 1 and R.rank == 2


@pytest.mark.parametrize("field", [PrimeField(), PrimeField(7), RationalField()], ids=["p65521", "p7", "Q"])
def test_rref_against_independent_rank(field):
    rng = random.Random(11)
    for trial in range(30):
        m, n = rng.randint(1, 7), rng.randint(1, 7)
        A = [[field.canon(rng.randint(-3, 3)) if rng.random() < 0.6 else field.zero for _ in range(n)]
             for _ in range(m)]
        if trial % 5 == 0 and m > 1:
            A[-1] = list(A[0])
        M = build_matrix(plain_rows(A, field), BaseOrder(), columns=[(n - j,) for j in range(n)],
                         field=field, check_degree=False)
        R = rref(M)
        assert R.rank + R.zero_rows == m
        assert R.rank == oracle.matrix_rank(M)
        assert oracle.rowspace_equal(R.polys(), M.polys(), field)
        leads = R.leading_columns()
        assert len(set(leads)) == len(leads) == R.rank
        for i, c in enumerate(R.pivots):
            col = R.data[:, c]
            assert all((col[k] == (1 if k == i else 0)) for k in range(R.rank))


def test_echelonize_unreduced(F):
    A = np.array([[1, 2, 3], [2, 4, 7], [0, 0, 1]], dtype=np.int64)
    piv = echelonize(A, F, reduced=False)
    assert piv == [0, 2]
    assert not A[2].any()


def test_json_export(square_ctx, F, order_h):
    amb = homogeneous_ambient(square_ctx)
    f = Poly({(1, 1, 1): 2, (0, 0, 1): F.from_str("-1")}, F, amb)
    M = build_matrix([(("f", 0, (0, 0, 0)), f)], order_h)
    doc = M.to_json()
    assert doc["rows"] == 1 and doc["cols"] == 2
    assert sorted(e[2] for e in doc["entries"]) == sorted(["2", str(F.p - 1)])
    assert doc["labels"] == [["f", 0, [0, 0, 0]]]


def test_matmul_and_identity():
    for field in (PrimeField(), PrimeField(2147483629), RationalField()):
        rng = random.Random(3)
        A = field.array(3, 4)
        B = field.array(4, 2)
        for arr in (A, B):
            for idx in np.ndindex(arr.shape):
                arr[idx] = field.random_element(rng)
        C = matmul(A, B, field)
        for i in range(3):
            for j in range(2):
                want = field.zero
                for k in range(4):
                    want = field.add(want, field.mul(A[i, k], B[k, j]))
                assert C[i, j] == want
        I = identity(4, field)
        assert (matmul(A, I, field) == A).all()
        assert matmul(field.array(2, 0), field.array(0, 3), field).shape == (2, 3)


def test_rational_entries_stay_exact(Q):
    rows = plain_rows([[Fraction(1, 3), Fraction(1, 2)], [Fraction(2, 3), Fraction(1, 1)]], Q)
    R = rref(build_matrix(rows, BaseOrder(), check_degree=False))
    assert R.rank == 1
    assert R.data[0, 1] == Fraction(3, 2)
