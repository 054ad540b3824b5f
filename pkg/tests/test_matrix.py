import random

import pytest
from hypothesis import given, strategies as st

from linrel import GF, QQ, Matrix, ShapeError, matrix
from linrel.matrix import (canonical_decomposition, column_space_contains, direct_sum,
                           extend_to_basis, hstack, image_basis, inverse, kernel_basis,
                           left_inverse, mat_arith, random_invertible, random_of_rank, rank,
                           right_inverse, rref, solve, vstack)

from conftest import fields, matrices, sympy_matrix


def eye(n, f=QQ):
    return Matrix.identity(f, n)


# -- elimination ------------------------------------------------------------


def test_rref_of_identity():
    res = rref(eye(3))
    assert res.rref == eye(3) and res.rank == 3 and res.transform == eye(3)


def test_rref_of_zero():
    z = Matrix.zeros(QQ, 2, 2)
    res = rref(z)
    assert res.rref == z and res.rank == 0 and res.pivot_cols == ()


def test_rref_all_ones_over_gf2():
    m = matrix([[1, 1], [1, 1]], GF(2))
    res = rref(m)
    assert res.rank == 1 and res.pivot_cols == (0,)
    assert res.transform @ m == res.rref
    assert res.rref == matrix([[1, 1], [0, 0]], GF(2))


@given(matrices())
def test_rref_contract(m):
    res = rref(m)
    assert res.transform @ m == res.rref
    assert rank(res.transform) == m.nrows
    # pivots are leading ones, columns of the identity
    for i, c in enumerate(res.pivot_cols):
        assert res.rref.col(c) == tuple(m.field.one if k == i else m.field.zero
                                        for k in range(m.nrows))
        assert all(x == 0 for x in res.rref.row(i)[:c])
    assert all(x == 0 for row in res.rref.data[res.rank:] for x in row)


@given(matrices(field=QQ))
def test_rank_and_rref_match_sympy(m):
    if m.nrows == 0 or m.ncols == 0:
        assert rank(m) == 0
        return
    ref, pivots = sympy_matrix(m).rref()
    assert rank(m) == len(pivots)
    assert rref(m).pivot_cols == tuple(pivots)
    assert sympy_matrix(rref(m).rref) == ref


@given(matrices(field=QQ), st.data())
def test_partial_elimination_over_rationals(m, data):
    from linrel.matrix import _rref_rows
    limit = data.draw(st.integers(0, m.ncols))
    rows, pivots = _rref_rows(QQ, [list(r) for r in m.data], limit)
    if m.nrows and m.ncols:
        left = m.select_columns(range(limit))
        assert tuple(pivots) == (tuple(sympy_matrix(left).rref()[1]) if limit else ())
        out = sympy_matrix(Matrix(QQ, rows, m.ncols))
        both = sympy_matrix(vstack(m, Matrix(QQ, rows, m.ncols)))
        assert out.rank() == both.rank() == sympy_matrix(m).rank()
    for i, c in enumerate(pivots):
        assert [row[c] for row in rows] == [1 if k == i else 0 for k in range(len(rows))]
    assert all(x == 0 for row in rows[len(pivots):] for x in row[:limit])


# -- kernel, image, solve ---------------------------------------------------


def test_kernel_examples():
    assert kernel_basis(eye(2)).shape == (2, 0)
    k = kernel_basis(matrix([[1, 1]]))
    assert k.ncols == 1 and matrix([[1, 1]]) @ k == Matrix.zeros(QQ, 1, 1)
    assert k.col(0)[0] == -k.col(0)[1] != 0
    z = kernel_basis(Matrix.zeros(QQ, 2, 2))
    assert z.ncols == 2 and rank(z) == 2


def test_image_examples():
    assert rank(image_basis(eye(2))) == 2
    im = image_basis(matrix([[1, 0], [0, 0]]))
    assert im == matrix([[1], [0]])
    empty = image_basis(Matrix.zeros(QQ, 0, 3))
    assert empty.shape == (0, 0)


@given(matrices())
def test_rank_nullity(m):
    k = kernel_basis(m)
    assert m @ k == Matrix.zeros(m.field, m.nrows, k.ncols)
    assert rank(k) == k.ncols
    assert k.ncols + rank(m) == m.ncols
    im = image_basis(m)
    assert im.ncols == rank(m) == rank(im)
    assert column_space_contains(im, m) and column_space_contains(m, im)


@given(st.data())
def test_solve(data):
    f = data.draw(fields)
    a = data.draw(matrices(field=f))
    x = data.draw(matrices(field=f, rows=a.ncols))
    b = a @ x
    sol = solve(a, b)
    assert sol is not None and a @ sol == b
    other = data.draw(matrices(field=f, rows=a.nrows, cols=1))
    sol = solve(a, other)
    assert (sol is not None) == column_space_contains(a, other)


@given(st.data())
def test_extend_to_basis(data):
    f = data.draw(fields)
    n = data.draw(st.integers(0, 4))
    cols = image_basis(data.draw(matrices(field=f, rows=n)))
    extra = extend_to_basis(cols)
    assert rank(hstack(cols, extra)) == n == cols.ncols + extra.ncols


# -- inverses and canonical decomposition ---------------------------------


def test_identity_inverse():
    assert inverse(eye(3)) == eye(3)


def test_left_inverse_of_column():
    a = matrix([[1], [0]])
    left = left_inverse(a)
    assert left == matrix([[1, 0]])
    assert left @ a == eye(1)
    assert right_inverse(a) is None and inverse(a) is None


def test_row_of_ones_over_gf2():
    a = matrix([[1, 1]], GF(2))
    right = right_inverse(a)
    assert right is not None and a @ right == eye(1, GF(2))
    assert left_inverse(a) is None


def test_singular_square_has_no_inverse():
    assert inverse(matrix([[1, 1], [1, 1]], GF(2))) is None


def test_canonical_decomposition_examples():
    cd = canonical_decomposition(eye(3))
    assert cd.p == cd.q == eye(3) and cd.rank == 3
    cd = canonical_decomposition(matrix([[2, 4], [1, 2]]))
    assert cd.rank == 1 and cd.reconstruct() == matrix([[2, 4], [1, 2]])
    z = Matrix.zeros(QQ, 2, 3)
    cd = canonical_decomposition(z)
    assert cd.rank == 0 and cd.reconstruct() == z


@given(matrices())
def test_canonical_decomposition(m):
    cd = canonical_decomposition(m)
    f = m.field
    assert cd.reconstruct() == m
    assert cd.p @ cd.p_inv == eye(m.nrows, f) and cd.q @ cd.q_inv == eye(m.ncols, f)
    assert cd.p @ m @ cd.q == cd.middle
    assert cd.rank == rank(m)


@given(matrices())
def test_one_sided_inverses(m):
    f = m.field
    left, right = left_inverse(m), right_inverse(m)
    assert (left is not None) == (rank(m) == m.ncols)
    assert (right is not None) == (rank(m) == m.nrows)
    if left is not None:
        assert left @ m == eye(m.ncols, f)
    if right is not None:
        assert m @ right == eye(m.nrows, f)
    if left is not None and right is not None:
        assert left == right == inverse(m)


def test_random_invertible_and_rank():
    rng = random.Random(3)
    for f in (QQ, GF(2), GF(7)):
        for n in range(5):
            a = random_invertible(f, n, rng)
            assert rank(a) == n
            inv = inverse(a)
            assert a @ inv == inv @ a == eye(n, f)
        for r in range(4):
            assert rank(random_of_rank(f, 3, 4, min(r, 3), rng)) == min(r, 3)
    with pytest.raises(ShapeError):
        random_of_rank(QQ, 2, 2, 3, rng)


def test_unimodular_inverse_over_rationals():
    rng = random.Random(11)
    a = random_invertible(QQ, 4, rng)
    assert a @ inverse(a) == eye(4)
    assert sympy_matrix(inverse(a)) == sympy_matrix(a).inv()


# -- arithmetic and construction ------------------------------------------


def test_arith_examples():
    m = matrix([[1, 2], [3, 4]])
    assert eye(2) @ m == m
    assert direct_sum(eye(1), eye(2)) == eye(3)
    assert hstack(matrix([[1]]), matrix([[2]])) == matrix([[1, 2]])
    assert mat_arith(m, m, "add") == m.scale(2)
    assert mat_arith(m, eye(2), "mul") == m


def test_shape_errors():
    with pytest.raises(ShapeError):
        matrix([[1, 2], [3]])
    with pytest.raises(ShapeError):
        matrix([[1, 2]]) @ matrix([[1, 2]])
    with pytest.raises(ShapeError):
        hstack(matrix([[1]]), matrix([[1], [2]]))
    with pytest.raises(ShapeError):
        Matrix(QQ, [])


def test_zero_sized_matrices():
    a = Matrix.zeros(QQ, 0, 3)
    b = Matrix.zeros(QQ, 3, 0)
    assert (b @ a).shape == (3, 3) and (b @ a).is_zero()
    assert (a @ b).shape == (0, 0)
    assert rank(a) == 0 and kernel_basis(a) == eye(3)


def test_parse_and_format():
    m = Matrix.parse(QQ, "1 1/2; 0 -3")
    assert m == matrix([[1, "1/2"], [0, -3]])
    assert m.to_strings() == [["1", "1/2"], ["0", "-3"]]
    assert matrix([[3]], GF(2)) == matrix([[1]], GF(2))
