"""Cospan decomposition of a linear relation and what it reveals.

Every relation R ⊆ K^m x K^n is, after invertible base changes P on the left
and Q on the right, the *wire relation*

    W = {((u, v, 0), (u, 0, w))}

with left blocks (u: r, v: k_I, t: k_T) and right blocks (u: r, s: k_S, w: k_D).
The convention is ``(x, y) in R  <=>  (P x, Q y) in W``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional

from . import relation as rel
from .errors import InconsistencyError, ShapeError
from .field import FieldSpec
from .matrix import (Matrix, column_space_contains, extend_to_basis, hstack, inverse_via_rref,
                     random_invertible, rank, solve)
from .relation import LinearRelation, PropertyReport


@dataclass(frozen=True)
class WireShape:
    r: int
    k_I: int
    k_S: int
    k_T: int
    k_D: int

    def __post_init__(self):
        if min(self.r, self.k_I, self.k_S, self.k_T, self.k_D) < 0:
            raise ShapeError(f"negative wire count in {self}")

    @property
    def m(self) -> int:
        return self.r + self.k_I + self.k_T

    @property
    def n(self) -> int:
        return self.r + self.k_S + self.k_D

    @property
    def dim(self) -> int:
        return self.r + self.k_I + self.k_D

    def as_dict(self) -> Dict[str, int]:
        return {"r": self.r, "k_I": self.k_I, "k_S": self.k_S, "k_T": self.k_T, "k_D": self.k_D}

    def __str__(self):
        return (f"r={self.r} kI={self.k_I} kS={self.k_S} kT={self.k_T} kD={self.k_D}"
                f" (m={self.m}, n={self.n})")


def canonical_wire_relation(shape: WireShape, field: FieldSpec) -> LinearRelation:
    r, kI, kS, kT, kD = shape.r, shape.k_I, shape.k_S, shape.k_T, shape.k_D
    m, n = shape.m, shape.n
    z, o = field.zero, field.one
    rows = []
    for i in range(r):
        row = [z] * (m + n)
        row[i] = o
        row[m + i] = o
        rows.append(row)
    for i in range(kI):
        row = [z] * (m + n)
        row[r + i] = o
        rows.append(row)
    for i in range(kD):
        row = [z] * (m + n)
        row[m + r + kS + i] = o
        rows.append(row)
    return rel.from_subspace_basis(field, m, n, Matrix(field, rows, m + n, _trusted=True))


@dataclass(frozen=True)
class CospanDecomposition:
    p: Matrix
    p_inv: Matrix
    q: Matrix
    q_inv: Matrix
    shape: WireShape

    def wire_relation(self) -> LinearRelation:
        return canonical_wire_relation(self.shape, self.p.field)

    def reconstruct(self) -> LinearRelation:
        """graph(P) ; W ; graph(Q)^op, i.e. {(x, y) : (P x, Q y) in W}."""
        w = self.wire_relation()
        return rel.compose(rel.graph_of_map(self.p),
                           rel.compose(w, rel.opposite(rel.graph_of_map(self.q))))

    def verify(self, r: LinearRelation) -> bool:
        f = self.p.field
        m, n = self.shape.m, self.shape.n
        return (self.p @ self.p_inv == Matrix.identity(f, m)
                and self.q @ self.q_inv == Matrix.identity(f, n)
                and self.reconstruct() == r)


def _random_recombine(cols: Matrix, rng) -> Matrix:
    """Another basis of the same column space."""
    if rng is None or cols.ncols == 0:
        return cols
    return cols @ random_invertible(cols.field, cols.ncols, rng)


def _complete(cols: Matrix, ambient: Matrix, rng) -> Matrix:
    """Columns of ``ambient`` (randomly recombined if ``rng``) extending ``cols``."""
    return extend_to_basis(cols, _random_recombine(ambient, rng))


def cospan_decompose(r: LinearRelation, rng=None) -> CospanDecomposition:
    """Decompose ``r``; ``rng`` randomises every basis choice (the shape never changes).

    Columns of P^-1 are (u-representatives x_i | kernel basis | completion to K^m);
    columns of Q^-1 are (partners y_i | completion to K^n | indeterminacy basis).
    """
    f, m, n = r.field, r.m, r.n
    ker = rel.subspace_vectors(rel.kernel(r))
    dom = rel.subspace_vectors(rel.domain(r))
    ind = rel.subspace_vectors(rel.indeterminacy(r))
    img = rel.subspace_vectors(rel.image(r))

    k_I, k_D = ker.ncols, ind.ncols
    k_T, k_S = m - dom.ncols, n - img.ncols
    n_r = dom.ncols - k_I
    if n_r != img.ncols - k_D or r.dim != n_r + k_I + k_D:
        raise InconsistencyError(f"dimension bookkeeping failed for {r!r}")

    v_block = _random_recombine(ker, rng)
    u_block = _complete(v_block, dom, rng)
    if u_block.ncols != n_r:
        raise InconsistencyError("kernel does not extend to the domain as expected")

    # partners: (x_i, y_i) in R, found by expressing x_i in the left block of the basis
    if n_r:
        coeffs = solve(r.left_block().T, u_block)
        if coeffs is None:
            raise InconsistencyError("domain representative has no partner")
        y_block = r.right_block().T @ coeffs
    else:
        y_block = Matrix.zeros(f, n, 0)

    w_block = _random_recombine(ind, rng)
    t_block = _complete(hstack(u_block, v_block), Matrix.identity(f, m), rng)
    uw = hstack(y_block, w_block)
    if rank(uw) != uw.ncols or not column_space_contains(img, uw):
        raise InconsistencyError("partners and indeterminacy do not form an image basis")
    s_block = _complete(uw, Matrix.identity(f, n), rng)

    p_inv = hstack(u_block, v_block, t_block)
    q_inv = hstack(y_block, s_block, w_block)
    shape = WireShape(r=n_r, k_I=k_I, k_S=k_S, k_T=k_T, k_D=k_D)
    if p_inv.shape != (m, m) or q_inv.shape != (n, n):
        raise InconsistencyError(f"base changes have wrong shape {p_inv.shape}, {q_inv.shape}")
    if shape.m != m or shape.n != n:
        raise InconsistencyError(f"shape {shape} does not match arity {m}->{n}")
    return CospanDecomposition(p=inverse_via_rref(p_inv), p_inv=p_inv,
                               q=inverse_via_rref(q_inv), q_inv=q_inv, shape=shape)


def wire_shape(r: LinearRelation) -> WireShape:
    """The five invariants, straight from the derived subspaces."""
    k_I = rel.kernel(r).dim
    k_D = rel.indeterminacy(r).dim
    d = rel.domain(r).dim
    return WireShape(r=d - k_I, k_I=k_I, k_S=r.n - rel.image(r).dim, k_T=r.m - d, k_D=k_D)


def classify_shape(shape: WireShape) -> PropertyReport:
    return PropertyReport(total=shape.k_T == 0, deterministic=shape.k_D == 0,
                          injective=shape.k_I == 0, surjective=shape.k_S == 0)


def classify(r: LinearRelation) -> PropertyReport:
    """Fundamental properties read off the vanishing wire counts."""
    report = classify_shape(cospan_decompose(r).shape)
    direct = rel.properties(r)
    if report != direct:
        raise InconsistencyError(f"shape route {report} disagrees with predicates {direct}")
    return report


# ---------------------------------------------------------------------------
# witnesses for a cospan {(x, y) : A x = B y}


def _check_legs(a: Matrix, b: Matrix):
    if a.nrows != b.nrows:
        raise ShapeError(f"cospan legs need a shared codomain, got {a.nrows} and {b.nrows} rows")
    if a.field != b.field:
        raise ShapeError(f"field mismatch: {a.field} vs {b.field}")


def total_witness(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """S with ``b @ S == a``; exists iff the cospan is total.

    Then graph(S) ⊆ {(x, y) : a x = b y}.
    """
    _check_legs(a, b)
    return solve(b, a)


def det_witness(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """S with ``S @ b == I``; exists iff the cospan is deterministic.

    Then the cospan is contained in graph(S @ a): b y = a x forces y = S a x.
    """
    _check_legs(a, b)
    st = solve(b.T, Matrix.identity(b.field, b.ncols))
    return None if st is None else st.T


def sur_witness(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """S with ``a @ S == b``; exists iff the cospan is surjective."""
    return total_witness(b, a)


def inj_witness(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """S with ``S @ a == I``; exists iff the cospan is injective."""
    return det_witness(b, a)


PROPERTIES = ("TOT", "DET", "SUR", "INJ")


@dataclass(frozen=True)
class CospanDictRow:
    prop: str
    predicate: bool
    shape: bool
    witness: bool
    inclusion: bool
    relational: bool

    @property
    def value(self) -> bool:
        return self.predicate

    @property
    def agree(self) -> bool:
        return len({self.predicate, self.shape, self.witness, self.inclusion,
                    self.relational}) == 1

    def as_dict(self) -> dict:
        return {"predicate": self.predicate, "shape": self.shape, "witness": self.witness,
                "inclusion": self.inclusion, "relational": self.relational}


def _witness_ok(prop: str, a: Matrix, b: Matrix, s: Optional[Matrix]) -> bool:
    if s is None:
        return False
    f = a.field
    if prop == "TOT":
        ok = b @ s == a
    elif prop == "SUR":
        ok = a @ s == b
    elif prop == "DET":
        ok = s @ b == Matrix.identity(f, b.ncols)
    else:
        ok = s @ a == Matrix.identity(f, a.ncols)
    if not ok:
        raise InconsistencyError(f"{prop} witness does not satisfy its equation")
    return True


def cospan_dict_rows(a: Matrix, b: Matrix, strict: bool = True) -> Dict[str, CospanDictRow]:
    """Evaluate every equivalent form of each property of {(x, y) : a x = b y}.

    Forms: direct predicate on the relation; vanishing wire count; existence of
    a witness map (checked against its defining equation); matrix inclusion
    (im a ⊆ im b, im b ⊆ im a, ker b = 0, ker a = 0); and the relational form
    (diagonal of im a inside diagonal of im b, {(y, y') : b y = b y'} ⊆ id, ...).
    """
    _check_legs(a, b)
    f = a.field
    R = rel.from_cospan(a, b)
    pred = rel.properties(R)
    shape = cospan_decompose(R).shape
    by_shape = classify_shape(shape)

    wit = {
        "TOT": total_witness(a, b),
        "SUR": sur_witness(a, b),
        "DET": det_witness(a, b),
        "INJ": inj_witness(a, b),
    }
    incl = {
        "TOT": column_space_contains(b, a),
        "SUR": column_space_contains(a, b),
        "DET": rank(b) == b.ncols,
        "INJ": rank(a) == a.ncols,
    }
    relational = {
        "TOT": rel.includes(rel.from_span(b, b), rel.from_span(a, a)),
        "SUR": rel.includes(rel.from_span(a, a), rel.from_span(b, b)),
        "DET": rel.includes(rel.identity(f, b.ncols), rel.from_cospan(b, b)),
        "INJ": rel.includes(rel.identity(f, a.ncols), rel.from_cospan(a, a)),
    }
    values = {
        "TOT": (pred.total, by_shape.total),
        "DET": (pred.deterministic, by_shape.deterministic),
        "SUR": (pred.surjective, by_shape.surjective),
        "INJ": (pred.injective, by_shape.injective),
    }
    out = {}
    for prop in PROPERTIES:
        p, s = values[prop]
        row = CospanDictRow(prop, p, s, _witness_ok(prop, a, b, wit[prop]), incl[prop],
                            relational[prop])
        if strict and not row.agree:
            raise InconsistencyError(f"{prop} forms disagree for cospan {a!r}, {b!r}: "
                                     f"{row.as_dict()}")
        out[prop] = row
    return out
