import random
from fractions import Fraction

import pytest

from radhom.fields import GF, QQ, field_from_name
from radhom.linalg import Mat, block_diag, hstack, rank_of_stack, vstack

F2 = GF(2)
F5 = GF(5)
F1009 = GF(1009)
Q = QQ()


def test_field_from_name():
    assert field_from_name("Q") == QQ()
    assert field_from_name("2") == GF(2)
    assert field_from_name("1009") == GF(1009)
    with pytest.raises(ValueError):
        field_from_name("6")


def test_gf_coerce_fraction():
    # 3/2 mod 5 = 3 * inverse(2) = 3 * 3 = 9 = 4
    assert F5.coerce(Fraction(3, 2)) == 4
    assert F5.coerce(-1) == 4


def test_rref_identity():
    m = Mat.identity(F5, 2)
    r, piv = m.rref()
    assert r == m
    assert piv == (0, 1)


def test_rref_zero():
    m = Mat.zeros(Q, 3, 2)
    r, piv = m.rref()
    assert r == m
    assert piv == ()


def test_rref_f2_rank_one():
    m = Mat.from_rows(F2, [[1, 1], [1, 1]])
    r, piv = m.rref()
    assert r.tolist() == [[1, 1], [0, 0]]
    assert piv == (0,)


def test_rref_idempotent_random():
    rng = random.Random(7)
    for field in (F2, F1009, Q):
        for _ in range(25):
            rows, cols = rng.randint(1, 6), rng.randint(1, 6)
            m = Mat.from_rows(
                field, [[rng.randint(-4, 4) for _ in range(cols)] for _ in range(rows)]
            )
            r, piv = m.rref()
            r2, piv2 = r.rref()
            assert r2 == r and piv2 == piv


def test_kernel_identity_empty():
    k = Mat.identity(F5, 3).kernel_basis()
    assert k.shape == (3, 0)


def test_kernel_zero_full():
    k = Mat.zeros(F5, 2, 3).kernel_basis()
    assert k.shape == (3, 3)
    assert k.rank() == 3


def test_kernel_line():
    m = Mat.from_rows(Q, [[1, 2]])
    k = m.kernel_basis()
    assert k.shape == (2, 1)
    assert (m @ k).is_zero()
    # proportional to (-2, 1)
    assert k.a[0, 0] * 1 == -2 * k.a[1, 0]


def test_solve_identity():
    b = Mat.from_rows(F5, [[3], [1]])
    assert Mat.identity(F5, 2).solve(b) == b


def test_solve_inconsistent():
    assert Mat.zeros(F5, 2, 2).solve(Mat.from_rows(F5, [[1], [0]])) is None


def test_solve_f5_example():
    m = Mat.from_rows(F5, [[1, 1], [0, 1]])
    b = Mat.from_rows(F5, [[2], [3]])
    x = m.solve(b)
    assert x.tolist() == [[4], [3]]
    assert m @ x == b


def test_solve_shape_mismatch():
    with pytest.raises(ValueError):
        Mat.zeros(F5, 2, 2).solve(Mat.zeros(F5, 3, 1))


def test_rank_nullity_random():
    rng = random.Random(42)
    for field in (F2, F1009, Q):
        for _ in range(120):
            rows, cols = rng.randint(0, 7), rng.randint(0, 7)
            m = Mat.from_rows(
                field,
                [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)],
                cols=cols,
            )
            k = m.kernel_basis()
            assert m.rank() + k.cols == cols
            if k.cols and rows:
                assert (m @ k).is_zero()


def test_solve_random_consistent():
    rng = random.Random(3)
    for field in (F5, Q):
        for _ in range(60):
            rows, cols = rng.randint(1, 6), rng.randint(1, 6)
            m = Mat.from_rows(
                field, [[rng.randint(-5, 5) for _ in range(cols)] for _ in range(rows)]
            )
            x0 = Mat.from_rows(field, [[rng.randint(-5, 5)] for _ in range(cols)])
            b = m @ x0
            x = m.solve(b)
            assert x is not None and m @ x == b


def test_column_space_canonical():
    m1 = Mat.from_rows(Q, [[1, 2], [0, 1]])
    m2 = Mat.from_rows(Q, [[2, 1], [1, 0]])  # same column space (all of Q^2)
    assert m1.column_space_canonical() == m2.column_space_canonical()
    m3 = Mat.from_rows(Q, [[1, 2], [2, 4]])
    assert m1.column_space_canonical() != m3.column_space_canonical()


def test_stack_and_block_diag():
    a = Mat.identity(F5, 2)
    b = Mat.zeros(F5, 2, 1)
    assert hstack([a, b]).shape == (2, 3)
    assert vstack([a, a]).shape == (4, 2)
    d = block_diag(F5, [a, Mat.from_rows(F5, [[3]])])
    assert d.shape == (3, 3)
    assert d.a[2, 2] == 3 and d.a[0, 2] == 0
    assert rank_of_stack([a, b]) == 2


def test_zero_by_n_matrices():
    m = Mat.zeros(F5, 0, 3)
    assert m.rank() == 0
    assert m.kernel_basis().cols == 3
    n = Mat.zeros(F5, 3, 0)
    assert n.rank() == 0
    assert (n @ Mat.zeros(F5, 0, 2)).shape == (3, 2)
