import random

import pytest
from hypothesis import given, strategies as st

from linrel import GF, QQ, InconsistencyError, Matrix, matrix
from linrel import oracle
from linrel import relation as rel
from linrel.decompose import (WireShape, canonical_wire_relation, classify, classify_shape,
                              cospan_decompose, cospan_dict_rows, det_witness, inj_witness,
                              sur_witness, total_witness, wire_shape)
from linrel.matrix import rank, solve

from conftest import cospans, matrices, relations

F2 = GF(2)


def shape(r, kI, kS, kT, kD):
    return WireShape(r=r, k_I=kI, k_S=kS, k_T=kT, k_D=kD)


# -- the wire relation -------------------------------------------------------


def test_wire_relation_examples():
    assert canonical_wire_relation(shape(3, 0, 0, 0, 0), QQ) == rel.identity(QQ, 3)
    assert canonical_wire_relation(shape(0, 1, 0, 0, 1), F2) == rel.full(F2, 1, 1)
    w = canonical_wire_relation(shape(1, 1, 1, 0, 0), QQ)
    assert rel.is_map(w) and w.arity == (2, 2)
    a = rel.as_matrix(w)
    assert rank(a) == 1


def test_wire_relation_pointwise_over_gf2():
    sh = shape(1, 1, 1, 1, 1)
    w = canonical_wire_relation(sh, F2)
    expected = {((u, v, 0), (u, 0, wv)) for u in range(2) for v in range(2) for wv in range(2)}
    assert oracle.elements(w) == expected


# -- decomposition -----------------------------------------------------------


def test_identity_decomposes_trivially():
    cd = cospan_decompose(rel.identity(QQ, 3))
    assert cd.shape == shape(3, 0, 0, 0, 0)
    assert cd.verify(rel.identity(QQ, 3))


def test_projection_shape():
    r = rel.graph_of_map(matrix([[1, 0], [0, 0]]))
    assert cospan_decompose(r).shape == shape(1, 1, 1, 0, 0)


def test_all_ones_cospan_shape():
    ones = matrix([[1, 1]], F2)
    r = rel.from_cospan(ones, ones)
    cd = cospan_decompose(r)
    assert cd.shape == shape(1, 1, 0, 0, 1)
    assert cd.verify(r)
    assert classify(r).labels() == ("TOT", "SUR")


def test_subspace_decomposes():
    v = rel.subspace(matrix([[1], [2], [0]]))
    cd = cospan_decompose(v)
    assert cd.shape == shape(0, 0, 2, 0, 1)
    assert cd.p.shape == (0, 0) and cd.verify(v)


def test_zero_arity_relations():
    for m, n in ((0, 0), (0, 2), (2, 0)):
        for r in (rel.full(QQ, m, n), rel.zero_relation(QQ, m, n)):
            assert cospan_decompose(r).verify(r)


@given(relations(max_dim=4))
def test_decomposition_reconstructs(r):
    cd = cospan_decompose(r)
    sh = cd.shape
    assert cd.verify(r)
    assert (sh.m, sh.n, sh.dim) == (r.m, r.n, r.dim)
    w = cd.wire_relation()
    for row in r.basis.data:
        assert w.contains(cd.p.apply(row[:r.m]), cd.q.apply(row[r.m:]))


@given(relations(max_dim=4), st.integers(0, 10**6))
def test_shape_is_independent_of_basis_choices(r, seed):
    cd = cospan_decompose(r, rng=random.Random(seed))
    assert cd.verify(r)
    assert cd.shape == cospan_decompose(r).shape == wire_shape(r)


@given(matrices())
def test_maps_have_no_dangling_wires(a):
    sh = cospan_decompose(rel.graph_of_map(a)).shape
    assert sh.k_T == sh.k_D == 0 and sh.r == rank(a)


@given(relations(max_dim=4))
def test_classification_by_vanishing_wires(r):
    sh = cospan_decompose(r).shape
    assert classify_shape(sh) == rel.properties(r) == classify(r)


def test_classification_examples():
    assert classify(rel.identity(QQ, 2)).labels() == ("TOT", "DET", "INJ", "SUR")
    assert classify(rel.full(F2, 1, 1)).labels() == ("TOT", "SUR")
    assert classify(rel.graph_of_map(matrix([[1], [0]]))).labels() == ("TOT", "DET", "INJ")


# -- witnesses and the property dictionary ------------------------------------


def test_total_witness_examples():
    a = matrix([[1], [2]])
    assert total_witness(a, a) == Matrix.identity(QQ, 1)
    s = total_witness(matrix([[1], [0]]), Matrix.identity(QQ, 2))
    assert s == matrix([[1], [0]])
    assert total_witness(matrix([[1]]), matrix([[0]])) is None


def test_deterministic_witness_is_a_left_inverse_of_b():
    # DET holds here (ker b = 0), yet a S = b has no solution since im b is not inside im a
    a, b = matrix([[1], [0]]), Matrix.identity(QQ, 2)
    assert rel.properties(rel.from_cospan(a, b)).deterministic
    assert solve(a, b) is None
    s = det_witness(a, b)
    assert s @ b == Matrix.identity(QQ, 2)
    assert rel.includes(rel.graph_of_map(s @ a), rel.from_cospan(a, b))


@given(cospans())
def test_witness_equations(pair):
    a, b = pair
    f, R = a.field, rel.from_cospan(a, b)
    p = rel.properties(R)
    t, d, s, i = total_witness(a, b), det_witness(a, b), sur_witness(a, b), inj_witness(a, b)
    assert (t is not None) == p.total and (d is not None) == p.deterministic
    assert (s is not None) == p.surjective and (i is not None) == p.injective
    if t is not None:
        assert b @ t == a and rel.includes(R, rel.graph_of_map(t))
    if d is not None:
        assert d @ b == Matrix.identity(f, b.ncols)
        assert rel.includes(rel.graph_of_map(d @ a), R)
    if s is not None:
        assert a @ s == b
    if i is not None:
        assert i @ a == Matrix.identity(f, a.ncols)


def test_property_dictionary_examples():
    eye = Matrix.identity(QQ, 2)
    rows = cospan_dict_rows(eye, eye)
    assert all(row.agree and row.value for row in rows.values())
    rows = cospan_dict_rows(matrix([[1, 0]]), Matrix.identity(QQ, 1))
    assert rows["TOT"].agree and rows["TOT"].value
    assert rows["INJ"].agree and not rows["INJ"].value


@given(cospans())
def test_property_dictionary_rows_agree(pair):
    rows = cospan_dict_rows(*pair)
    assert set(rows) == {"TOT", "DET", "SUR", "INJ"}
    assert all(row.agree for row in rows.values())


def test_inconsistency_is_reported(monkeypatch):
    import linrel.decompose as dec

    monkeypatch.setattr(dec, "classify_shape",
                        lambda sh: rel.PropertyReport(False, False, False, False))
    with pytest.raises(InconsistencyError):
        dec.classify(rel.identity(QQ, 1))
