"""Linear relations R ⊆ K^m x K^n as canonical values.

A relation is stored as the reduced row-echelon basis of its subspace of
K^(m+n); each basis row is a vector ``(x | y)`` with the left block first.
Because RREF bases are canonical, ``==`` is equality of subspaces.

A subspace V ⊆ K^n is the relation ``V ⊆ K^0 x K^n`` (``m == 0``).
"""

from __future__ import annotations

from dataclasses import dataclass
from operator import xor
from typing import Iterator, Sequence, Tuple

from .errors import FieldError, ShapeError
from .field import FieldSpec
from .matrix import Matrix, _rref_rows, hstack, kernel_basis, row_reduce


class LinearRelation:
    __slots__ = ("field", "m", "n", "basis", "_hash")

    def __init__(self, field: FieldSpec, m: int, n: int, basis: Matrix):
        # Callers inside the module pass canonical bases; use from_subspace_basis otherwise.
        if m < 0 or n < 0:
            raise ShapeError("arities must be nonnegative")
        if basis.ncols != m + n:
            raise ShapeError(f"basis has {basis.ncols} columns, expected {m + n}")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LinearRelation is immutable")

    @property
    def dim(self) -> int:
        return self.basis.nrows

    @property
    def arity(self) -> Tuple[int, int]:
        return self.m, self.n

    def left_block(self) -> Matrix:
        return self.basis.select_columns(range(self.m))

    def right_block(self) -> Matrix:
        return self.basis.select_columns(range(self.m, self.m + self.n))

    def contains(self, x: Sequence, y: Sequence = ()) -> bool:
        """Membership test for the pair ``(x, y)``."""
        v = [self.field.coerce(a) for a in list(x) + list(y)]
        if len(v) != self.m + self.n:
            raise ShapeError(f"vector of length {len(v)} for a {self.m}x{self.n} relation")
        rows = [list(r) for r in self.basis.data]
        return len(_rref_rows(self.field, rows + [v], len(v))[1]) == self.dim

    def vectors(self) -> Iterator[Tuple]:
        """Every element of the subspace (prime fields only)."""
        f = self.field
        if not f.is_prime:
            raise FieldError("only finite fields have enumerable subspaces")
        p = f.modulus
        acc = [(0,) * (self.m + self.n)]
        if p == 2:
            for row in self.basis.data:
                acc += [tuple(map(xor, v, row)) for v in acc]
            return iter(acc)
        for row in self.basis.data:
            multiples = [tuple(c * b % p for b in row) for c in range(1, p)]
            acc += [tuple((a + b) % p for a, b in zip(v, w)) for v in acc for w in multiples]
        return iter(acc)

    def __eq__(self, other):
        if not isinstance(other, LinearRelation):
            return NotImplemented
        return (self.field == other.field and self.m == other.m and self.n == other.n
                and self.basis == other.basis)

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.m, self.n, self.basis)))
        return self._hash

    def __le__(self, other: "LinearRelation") -> bool:
        return includes(other, self)

    def __ge__(self, other: "LinearRelation") -> bool:
        return includes(self, other)

    def __repr__(self):
        return (f"LinearRelation({self.field}, m={self.m}, n={self.n}, "
                f"basis={self.basis.to_strings()})")

    def __str__(self):
        head = f"{self.m}->{self.n} relation over {self.field}, dim {self.dim}"
        if not self.dim:
            return head
        fmt = self.field.format_value
        lines = []
        for r in self.basis.data:
            left = " ".join(fmt(a) for a in r[:self.m])
            right = " ".join(fmt(a) for a in r[self.m:])
            lines.append(f"  ({left} | {right})")
        return head + "\n" + "\n".join(lines)

    # operator sugar for the relation algebra
    def __rshift__(self, other):
        return compose(self, other)

    def __mul__(self, other):
        return direct_product(self, other)

    def __and__(self, other):
        return meet(self, other)

    def __or__(self, other):
        return join(self, other)

    @property
    def op(self) -> "LinearRelation":
        return opposite(self)


def _check_same(r: LinearRelation, s: LinearRelation):
    if r.field != s.field:
        raise ShapeError(f"field mismatch: {r.field} vs {s.field}")
    if r.arity != s.arity:
        raise ShapeError(f"arity mismatch: {r.arity} vs {s.arity}")


# ---------------------------------------------------------------------------
# construction


def from_subspace_basis(field: FieldSpec, m: int, n: int, rows: Matrix) -> LinearRelation:
    """The relation spanned by the rows of ``rows`` (dependent rows are dropped)."""
    if rows.ncols != m + n:
        raise ShapeError(f"rows have {rows.ncols} columns, expected m+n = {m + n}")
    if rows.field != field:
        raise ShapeError(f"field mismatch: {rows.field} vs {field}")
    basis, _ = row_reduce(rows)
    return LinearRelation(field, m, n, basis)


def from_rows(field: FieldSpec, m: int, n: int, rows) -> LinearRelation:
    return from_subspace_basis(field, m, n, Matrix(field, rows, m + n))


def subspace(basis_columns: Matrix) -> LinearRelation:
    """The span of the columns of ``basis_columns`` as a ``0 -> n`` relation."""
    return from_subspace_basis(basis_columns.field, 0, basis_columns.nrows, basis_columns.T)


def graph_of_map(a: Matrix) -> LinearRelation:
    """{(x, a x)} for ``a : K^cols -> K^rows``."""
    rows = hstack(Matrix.identity(a.field, a.ncols), a.T)
    return LinearRelation(a.field, a.ncols, a.nrows, row_reduce(rows)[0])


def from_cospan(a: Matrix, b: Matrix) -> LinearRelation:
    """{(x, y) : a x = b y}, the kernel of ``[a | -b]``."""
    if a.nrows != b.nrows:
        raise ShapeError(f"cospan legs need a shared codomain, got {a.nrows} and {b.nrows} rows")
    if a.field != b.field:
        raise ShapeError(f"field mismatch: {a.field} vs {b.field}")
    k = kernel_basis(hstack(a, -b))
    return from_subspace_basis(a.field, a.ncols, b.ncols, k.T)


def from_span(c: Matrix, d: Matrix) -> LinearRelation:
    """{(c z, d z)}, the image of the stacked map."""
    if c.ncols != d.ncols:
        raise ShapeError(f"span legs need a shared domain, got {c.ncols} and {d.ncols} columns")
    if c.field != d.field:
        raise ShapeError(f"field mismatch: {c.field} vs {d.field}")
    return from_subspace_basis(c.field, c.nrows, d.nrows, hstack(c.T, d.T))


def to_cospan(r: LinearRelation) -> Tuple[Matrix, Matrix]:
    """Maps (A, B) with r == from_cospan(A, B): the rows of [A | -B] span the annihilator."""
    ann = kernel_basis(r.basis).T
    return (ann.select_columns(range(r.m)),
            -ann.select_columns(range(r.m, r.m + r.n)))


def to_span(r: LinearRelation) -> Tuple[Matrix, Matrix]:
    """Maps (C, D) with r == from_span(C, D)."""
    return r.left_block().T, r.right_block().T


# ---------------------------------------------------------------------------
# named generators


def identity(field: FieldSpec, n: int) -> LinearRelation:
    return graph_of_map(Matrix.identity(field, n))


def twist(field: FieldSpec, m: int, n: int) -> LinearRelation:
    """(y, x) -> (x, y) with y in K^m, x in K^n."""
    # output block order (x, y): row i of the map picks input coordinate order[i]
    order = list(range(m, m + n)) + list(range(m))
    rows = [[field.one if j == order[i] else field.zero for j in range(m + n)]
            for i in range(m + n)]
    return graph_of_map(Matrix(field, rows, m + n))


def zero(field: FieldSpec, n: int) -> LinearRelation:
    """The zero map K^0 -> K^n, i.e. the subspace {0} ⊆ K^n."""
    return graph_of_map(Matrix.zeros(field, n, 0))


def discard(field: FieldSpec, n: int) -> LinearRelation:
    """x -> 0 : K^n -> K^0."""
    return graph_of_map(Matrix.zeros(field, 0, n))


def codiscard(field: FieldSpec, n: int) -> LinearRelation:
    """Opposite of discard: the full subspace K^n as a 0 -> n relation."""
    return opposite(discard(field, n))


def cozero(field: FieldSpec, n: int) -> LinearRelation:
    """Opposite of zero: {(0, ())} ⊆ K^n x K^0."""
    return opposite(zero(field, n))


def sum_map(field: FieldSpec, n: int) -> LinearRelation:
    """(x, y) -> x + y : K^2n -> K^n."""
    eye = Matrix.identity(field, n)
    return graph_of_map(hstack(eye, eye))


def copy(field: FieldSpec, n: int) -> LinearRelation:
    """x -> (x, x) : K^n -> K^2n."""
    eye = Matrix.identity(field, n)
    return graph_of_map(eye.vstack(eye))


def full(field: FieldSpec, m: int, n: int) -> LinearRelation:
    return LinearRelation(field, m, n, Matrix.identity(field, m + n))


def zero_relation(field: FieldSpec, m: int, n: int) -> LinearRelation:
    return LinearRelation(field, m, n, Matrix.zeros(field, 0, m + n))


_GENERATORS = {
    "identity": identity,
    "zero": zero,
    "sum": sum_map,
    "copy": copy,
    "discard": discard,
}


def generator(name: str, field: FieldSpec, *arity: int) -> LinearRelation:
    """One of identity, twist, zero, sum, copy, discard; twist takes (m, n)."""
    if name == "twist":
        if len(arity) != 2:
            raise ShapeError("twist takes two arities")
        return twist(field, *arity)
    if name not in _GENERATORS:
        raise ValueError(f"unknown generator {name!r}")
    if len(arity) != 1:
        raise ShapeError(f"{name} takes one arity")
    return _GENERATORS[name](field, arity[0])


# ---------------------------------------------------------------------------
# algebra


def _permute_columns(rows: Matrix, order) -> Matrix:
    return rows.select_columns(order)


def opposite(r: LinearRelation) -> LinearRelation:
    order = list(range(r.m, r.m + r.n)) + list(range(r.m))
    return from_subspace_basis(r.field, r.n, r.m, _permute_columns(r.basis, order))


def includes(r: LinearRelation, s: LinearRelation) -> bool:
    """True iff s ⊆ r."""
    _check_same(r, s)
    if s.dim > r.dim:
        return False
    rows = [list(x) for x in r.basis.data] + [list(x) for x in s.basis.data]
    return len(_rref_rows(r.field, rows, r.m + r.n)[1]) == r.dim


def join(r: LinearRelation, s: LinearRelation) -> LinearRelation:
    """Subspace sum."""
    _check_same(r, s)
    rows = [list(x) for x in r.basis.data] + [list(x) for x in s.basis.data]
    return _as_relation(r.field, r.m, r.n, _eliminated_tail(r.field, rows, 0))


def _eliminated_tail(field: FieldSpec, rows, split: int):
    """Row-reduce and keep the rows whose pivot lies at or beyond ``split``, cut there.

    Those rows span the vectors of the row space that vanish before ``split``
    and, restricted to the tail columns, are already in canonical RREF.
    """
    width = len(rows[0]) if rows else split
    rows, pivots = _rref_rows(field, rows, width)
    return [row[split:] for row, p in zip(rows, pivots) if p >= split]


def _as_relation(field: FieldSpec, m: int, n: int, rows) -> LinearRelation:
    return LinearRelation(field, m, n, Matrix(field, rows, m + n, _trusted=True))


def meet(r: LinearRelation, s: LinearRelation) -> LinearRelation:
    """Subspace intersection (Zassenhaus: reduce [u | u] over [w | 0])."""
    _check_same(r, s)
    if r.dim == 0 or s.dim == 0:
        return zero_relation(r.field, r.m, r.n)
    z = [r.field.zero] * (r.m + r.n)
    rows = [list(u) * 2 for u in r.basis.data] + [list(w) + z for w in s.basis.data]
    return _as_relation(r.field, r.m, r.n, _eliminated_tail(r.field, rows, r.m + r.n))


def compose(r: LinearRelation, s: LinearRelation) -> LinearRelation:
    """{(x, z) : exists y, (x, y) in r and (y, z) in s}.

    Rows (y | x | 0) from r and (-y | 0 | z) from s span {(y - y', x, z)};
    eliminating the middle block first leaves exactly the composite.
    """
    if r.field != s.field:
        raise ShapeError(f"field mismatch: {r.field} vs {s.field}")
    if r.n != s.m:
        raise ShapeError(f"cannot compose {r.m}->{r.n} with {s.m}->{s.n}")
    f = r.field
    m, k, n = r.m, r.n, s.n
    zm, zn = [f.zero] * m, [f.zero] * n
    rows = [list(row[m:]) + list(row[:m]) + zn for row in r.basis.data]
    rows += [[f.neg(y) for y in row[:k]] + zm + list(row[k:]) for row in s.basis.data]
    return _as_relation(f, m, n, _eliminated_tail(f, rows, k))


def direct_product(r: LinearRelation, s: LinearRelation) -> LinearRelation:
    """{((x, w), (y, z)) : (x, y) in r, (w, z) in s}."""
    if r.field != s.field:
        raise ShapeError(f"field mismatch: {r.field} vs {s.field}")
    f = r.field
    z = f.zero
    rows = []
    for row in r.basis.data:
        rows.append(list(row[:r.m]) + [z] * s.m + list(row[r.m:]) + [z] * s.n)
    for row in s.basis.data:
        rows.append([z] * r.m + list(row[:s.m]) + [z] * r.n + list(row[s.m:]))
    m, n = r.m + s.m, r.n + s.n
    return from_subspace_basis(f, m, n, Matrix(f, rows, m + n, _trusted=True))


# ---------------------------------------------------------------------------
# derived subspaces and fundamental properties


def kernel(r: LinearRelation) -> LinearRelation:
    """{x : (x, 0) in r} as a 0 -> m relation."""
    return compose(zero(r.field, r.n), opposite(r))


def image(r: LinearRelation) -> LinearRelation:
    """{y : exists x, (x, y) in r} as a 0 -> n relation."""
    return compose(codiscard(r.field, r.m), r)


def domain(r: LinearRelation) -> LinearRelation:
    """{x : exists y, (x, y) in r} as a 0 -> m relation."""
    return compose(codiscard(r.field, r.n), opposite(r))


def indeterminacy(r: LinearRelation) -> LinearRelation:
    """{y : (0, y) in r} as a 0 -> n relation."""
    return compose(zero(r.field, r.m), r)


def subspace_vectors(v: LinearRelation) -> Matrix:
    """Basis of a 0 -> n relation as matrix columns."""
    return v.right_block().T


@dataclass(frozen=True)
class PropertyReport:
    total: bool
    deterministic: bool
    injective: bool
    surjective: bool

    @property
    def is_map(self) -> bool:
        return self.total and self.deterministic

    @property
    def is_bijective(self) -> bool:
        return self.total and self.deterministic and self.injective and self.surjective

    def labels(self) -> Tuple[str, ...]:
        names = (("TOT", self.total), ("DET", self.deterministic),
                 ("INJ", self.injective), ("SUR", self.surjective))
        return tuple(name for name, ok in names if ok)

    def as_dict(self) -> dict:
        return {"TOT": self.total, "DET": self.deterministic, "INJ": self.injective,
                "SUR": self.surjective, "map": self.is_map, "bijective": self.is_bijective}

    def __str__(self):
        return " ".join(self.labels()) or "(none)"


def _pivot_split(r: LinearRelation) -> Tuple[int, int]:
    """(dim domain, dim image) read off the canonical basis and its mirror."""
    m = r.m
    pivots = [next(j for j, x in enumerate(row) if x) for row in r.basis.data]
    dom = sum(1 for p in pivots if p < m)
    mirrored = [list(row[m:]) + list(row[:m]) for row in r.basis.data]
    img = sum(1 for p in _rref_rows(r.field, mirrored, r.m + r.n)[1] if p < r.n)
    return dom, img


def properties(r: LinearRelation) -> PropertyReport:
    # dim R = dim domain + dim indeterminacy = dim image + dim kernel
    dom, img = _pivot_split(r)
    return PropertyReport(
        total=dom == r.m,
        deterministic=dom == r.dim,
        injective=img == r.dim,
        surjective=img == r.n,
    )


def is_total(r: LinearRelation) -> bool:
    return domain(r).dim == r.m


def is_deterministic(r: LinearRelation) -> bool:
    return indeterminacy(r).dim == 0


def is_injective(r: LinearRelation) -> bool:
    return kernel(r).dim == 0


def is_surjective(r: LinearRelation) -> bool:
    return image(r).dim == r.n


def is_map(r: LinearRelation) -> bool:
    return is_total(r) and is_deterministic(r)


def as_matrix(r: LinearRelation) -> Matrix:
    """The matrix A with r == graph_of_map(A); r must be a map."""
    if not is_map(r):
        raise ShapeError("relation is not the graph of a map")
    # a map's RREF basis is exactly [I_m | A^T]
    return r.right_block().T
