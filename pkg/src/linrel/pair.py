"""Simultaneous decomposition of two matrices with a shared codomain.

For ``a`` (k x m) and ``b`` (k x n) the cospan decomposition of
{(x, y) : a x = b y} yields base changes P, Q and 0/1 selectors D1, D2 so that

    a == H @ D1 @ P        b == H @ D2 @ Q

for a unique injective k x j matrix H, j = r + k_T + k_S.  The column blocks
of H (r | k_T | k_S) are bases for every subspace built from im(a), im(b).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from . import relation as rel
from .decompose import WireShape, cospan_decompose
from .errors import InconsistencyError, ShapeError
from .field import FieldSpec
from .matrix import Matrix, hstack, kernel_basis, rank, row_reduce, solve


def _selector(field: FieldSpec, nrows: int, ncols: int, picks) -> Matrix:
    """Row i is e_{picks[i]}, or zero when picks[i] is None."""
    z, o = field.zero, field.one
    return Matrix(field, [[o if j == p else z for j in range(ncols)] for p in picks], ncols,
                  _trusted=True)


def selectors(shape: WireShape, field: FieldSpec) -> Tuple[Matrix, Matrix]:
    """D1: (u, v, t) -> (u, t, 0) and D2: (u, s, w) -> (u, 0, s)."""
    r, kI, kS, kT = shape.r, shape.k_I, shape.k_S, shape.k_T
    j = r + kT + kS
    d1 = list(range(r)) + [r + kI + i for i in range(kT)] + [None] * kS
    d2 = list(range(r)) + [None] * kT + [r + i for i in range(kS)]
    return (_selector(field, j, shape.m, d1), _selector(field, j, shape.n, d2))


def linking_map(a: Matrix, b: Matrix, d1: Matrix, d2: Matrix) -> Matrix:
    """The unique H with ``a == H @ d1`` and ``b == H @ d2``.

    Requires {a x = b y} == {d1 x = d2 y} with [d1 | d2] surjective; only
    exercised through the selectors produced by :func:`pair_decompose`.
    """
    stacked = hstack(d1, d2)
    if rank(stacked) != stacked.nrows:
        raise ShapeError("selector pair is not jointly surjective")
    ht = solve(stacked.T, hstack(a, b).T)
    if ht is None:
        raise InconsistencyError("factorisation system has no solution")
    return ht.T


@dataclass(frozen=True)
class PairDecomposition:
    p: Matrix
    q: Matrix
    d1: Matrix
    d2: Matrix
    h: Matrix
    shape: WireShape
    p_inv: Matrix = None
    q_inv: Matrix = None

    @property
    def j(self) -> int:
        return self.h.ncols

    def h_blocks(self) -> Tuple[Matrix, Matrix, Matrix]:
        """Column blocks of H: (through wires r | k_T | k_S)."""
        r, kT = self.shape.r, self.shape.k_T
        h = self.h
        return (h.select_columns(range(r)), h.select_columns(range(r, r + kT)),
                h.select_columns(range(r + kT, h.ncols)))

    def verify(self, a: Matrix, b: Matrix) -> bool:
        return (self.h @ self.d1 @ self.p == a and self.h @ self.d2 @ self.q == b
                and rank(self.h) == self.h.ncols)


def pair_decompose(a: Matrix, b: Matrix, rng=None) -> PairDecomposition:
    if a.nrows != b.nrows:
        raise ShapeError(f"pair needs equal row counts, got {a.nrows} and {b.nrows}")
    if a.field != b.field:
        raise ShapeError(f"field mismatch: {a.field} vs {b.field}")
    cd = cospan_decompose(rel.from_cospan(a, b), rng=rng)
    d1, d2 = selectors(cd.shape, a.field)
    h = linking_map(a, b, d1 @ cd.p, d2 @ cd.q)
    out = PairDecomposition(p=cd.p, q=cd.q, d1=d1, d2=d2, h=h, shape=cd.shape,
                            p_inv=cd.p_inv, q_inv=cd.q_inv)
    if not out.verify(a, b):
        raise InconsistencyError("pair decomposition does not reproduce its inputs")
    return out


def uniqueness_defect(dec: PairDecomposition) -> int:
    """Dimension of the homogeneous solution space of {H D1 P = 0, H D2 Q = 0}."""
    stacked = hstack(dec.d1 @ dec.p, dec.d2 @ dec.q)
    return kernel_basis(stacked.T).ncols


@dataclass(frozen=True)
class SubspaceReport:
    """Bases (as matrix columns) of the subspaces generated by im(a), im(b).

    Complements are taken inside im(a) + im(b).
    """

    im_a: Matrix
    im_b: Matrix
    intersection: Matrix
    sum: Matrix
    complement_of_a: Matrix
    complement_of_b: Matrix
    complement_of_intersection: Matrix
    zero: Matrix

    FIELDS = ("im_a", "im_b", "intersection", "sum", "complement_of_a", "complement_of_b",
              "complement_of_intersection")

    def items(self):
        return [(name, getattr(self, name)) for name in self.FIELDS]


def subspace_report(a: Matrix, b: Matrix) -> SubspaceReport:
    dec = pair_decompose(a, b)
    h_r, h_t, h_s = dec.h_blocks()
    return SubspaceReport(
        im_a=hstack(h_r, h_t),
        im_b=hstack(h_r, h_s),
        intersection=h_r,
        sum=dec.h,
        complement_of_a=h_s,
        complement_of_b=h_t,
        complement_of_intersection=hstack(h_t, h_s),
        zero=Matrix.zeros(a.field, a.nrows, 0),
    )


def zassenhaus(a: Matrix, b: Matrix) -> Tuple[Matrix, Matrix]:
    """Bases (as columns) of im(a) + im(b) and im(a) ∩ im(b).

    Row-reduces [[a^T, a^T], [b^T, 0]]: rows with a nonzero left half give the
    sum, rows whose left half vanished carry the intersection on the right.
    """
    if a.nrows != b.nrows:
        raise ShapeError(f"zassenhaus needs equal row counts, got {a.nrows} and {b.nrows}")
    f, k = a.field, a.nrows
    top = hstack(a.T, a.T)
    bottom = hstack(b.T, Matrix.zeros(f, b.ncols, k))
    reduced, _ = row_reduce(top.vstack(bottom))
    sum_rows, meet_rows = [], []
    for row in reduced.data:
        if any(row[:k]):
            sum_rows.append(row[:k])
        else:
            meet_rows.append(row[k:])
    return (Matrix.from_columns(f, sum_rows, k), Matrix.from_columns(f, meet_rows, k))


def same_span(x: Matrix, y: Matrix) -> bool:
    """Column spans equal, compared as canonical subspaces."""
    return rel.subspace(x) == rel.subspace(y)
