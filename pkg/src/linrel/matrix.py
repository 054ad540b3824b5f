"""Dense exact matrices and Gauss-Jordan elimination.

A ``Matrix`` with ``nrows`` rows and ``ncols`` columns is the linear map
K^ncols -> K^nrows.  Zero-sized matrices are legal everywhere (K^0 = {0}).
Bases of subspaces are returned as matrices whose *columns* are the basis
vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import ShapeError
from .field import QQ, FieldSpec


class Matrix:
    """Immutable m x n matrix over a :class:`FieldSpec`."""

    __slots__ = ("field", "nrows", "ncols", "data", "_hash")

    def __init__(self, field: FieldSpec, rows: Iterable[Iterable], ncols: Optional[int] = None,
                 _trusted: bool = False):
        if _trusted:
            data = tuple(map(tuple, rows))
        else:
            data = tuple(tuple(field.coerce(x) for x in r) for r in rows)
        if ncols is None:
            if not data:
                raise ShapeError("column count is ambiguous for a matrix with no rows")
            ncols = len(data[0])
        if not _trusted:
            for r in data:
                if len(r) != ncols:
                    raise ShapeError(f"ragged rows: expected {ncols} entries, got {len(r)}")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "nrows", len(data))
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> "Matrix":
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols, _trusted=True)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)], n,
                   _trusted=True)

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        cols = [[field.coerce(x) for x in c] for c in columns]
        for c in cols:
            if len(c) != nrows:
                raise ShapeError(f"column of length {len(c)} in a {nrows}-row matrix")
        return cls(field, [[c[i] for c in cols] for i in range(nrows)], len(cols),
                   _trusted=True)

    @classmethod
    def parse(cls, field: FieldSpec, text: str) -> "Matrix":
        """Parse whitespace-separated rows, e.g. ``"1 1/2; 0 3"``."""
        rows = [r.split() for r in text.replace("\n", ";").split(";") if r.strip()]
        return cls(field, rows)

    # -- basic access -------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> Tuple:
        return self.data[i]

    def col(self, j: int) -> Tuple:
        return tuple(r[j] for r in self.data)

    def columns(self) -> List[Tuple]:
        return [self.col(j) for j in range(self.ncols)]

    def rows(self) -> List[Tuple]:
        return list(self.data)

    def select_columns(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.field, [[r[j] for j in idx] for r in self.data], len(idx), _trusted=True)

    def select_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.field, [self.data[i] for i in idx], self.ncols, _trusted=True)

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, [self.col(j) for j in range(self.ncols)], self.nrows,
                      _trusted=True)

    def transpose(self) -> "Matrix":
        return self.T

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    # -- arithmetic ---------------------------------------------------------

    def _check_field(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.field != self.field:
            raise ShapeError(f"field mismatch: {self.field} vs {other.field}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        f = self.field
        cols = other.columns()
        return Matrix(f, [[f.dot(r, c) for c in cols] for r in self.data], other.ncols,
                      _trusted=True)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        add = self.field.add
        return Matrix(self.field, [[add(a, b) for a, b in zip(r, s)]
                                   for r, s in zip(self.data, other.data)], self.ncols,
                      _trusted=True)

    def __neg__(self) -> "Matrix":
        neg = self.field.neg
        return Matrix(self.field, [[neg(a) for a in r] for r in self.data], self.ncols,
                      _trusted=True)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.field.coerce(c)
        return Matrix(self.field, [self.field.scale(list(r), c) for r in self.data], self.ncols,
                      _trusted=True)

    def apply(self, v: Sequence) -> Tuple:
        """Image of the vector ``v`` under this map."""
        if len(v) != self.ncols:
            raise ShapeError(f"vector of length {len(v)} for a {self.shape} matrix")
        return tuple(self.field.dot(r, v) for r in self.data)

    def hstack(self, *others: "Matrix") -> "Matrix":
        return hstack(self, *others)

    def vstack(self, *others: "Matrix") -> "Matrix":
        return vstack(self, *others)

    # -- comparison / display -----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self.data == other.data)

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.field, self.shape, self.data)))
        return self._hash

    def to_strings(self) -> List[List[str]]:
        fmt = self.field.format_value
        return [[fmt(x) for x in r] for r in self.data]

    def __str__(self):
        if self.nrows == 0 or self.ncols == 0:
            return f"[{self.nrows}x{self.ncols} empty]"
        cells = self.to_strings()
        w = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)

    def __repr__(self):
        return f"Matrix({self.field}, {self.to_strings()}, ncols={self.ncols})"


def hstack(*ms: Matrix) -> Matrix:
    if not ms:
        raise ShapeError("hstack of nothing")
    f, n = ms[0].field, ms[0].nrows
    for m in ms:
        ms[0]._check_field(m)
        if m.nrows != n:
            raise ShapeError(f"hstack needs equal row counts, got {[x.nrows for x in ms]}")
    rows = [sum((m.data[i] for m in ms), ()) for i in range(n)]
    return Matrix(f, rows, sum(m.ncols for m in ms), _trusted=True)


def vstack(*ms: Matrix) -> Matrix:
    if not ms:
        raise ShapeError("vstack of nothing")
    n = ms[0].ncols
    for m in ms:
        ms[0]._check_field(m)
        if m.ncols != n:
            raise ShapeError(f"vstack needs equal column counts, got {[x.ncols for x in ms]}")
    return Matrix(ms[0].field, [r for m in ms for r in m.data], n, _trusted=True)


def direct_sum(*ms: Matrix) -> Matrix:
    """Block-diagonal matrix."""
    if not ms:
        raise ShapeError("direct_sum of nothing")
    f = ms[0].field
    z = f.zero
    total = sum(m.ncols for m in ms)
    rows, offset = [], 0
    for m in ms:
        ms[0]._check_field(m)
        for r in m.data:
            rows.append((z,) * offset + r + (z,) * (total - offset - m.ncols))
        offset += m.ncols
    return Matrix(f, rows, total, _trusted=True)


def mat_arith(a: Matrix, b: Matrix, op: str) -> Matrix:
    """``op`` in {'mul', 'add', 'hstack', 'vstack', 'direct_sum'}."""
    if op == "mul":
        return a @ b
    if op == "add":
        return a + b
    if op == "hstack":
        return hstack(a, b)
    if op == "vstack":
        return vstack(a, b)
    if op == "direct_sum":
        return direct_sum(a, b)
    raise ValueError(f"unknown matrix operation {op!r}")


def permutation(field: FieldSpec, perm: Sequence[int]) -> Matrix:
    """Matrix sending basis vector e_j to e_perm[j]."""
    n = len(perm)
    rows = [[field.zero] * n for _ in range(n)]
    for j, i in enumerate(perm):
        rows[i][j] = field.one
    return Matrix(field, rows, n, _trusted=True)


# ---------------------------------------------------------------------------
# elimination


def _rref_rows(field: FieldSpec, rows: List[list], limit: int) -> Tuple[List[list], List[int]]:
    """Gauss-Jordan on ``rows`` in place, pivoting only in columns ``< limit``.

    Pivot choice is the first nonzero entry in column order.
    """
    if field.is_prime:
        return _rref_rows_mod(field.modulus, rows, limit)
    if field == QQ:
        return _rref_rows_qq(rows, limit)
    pivots = []
    r = 0
    nrows = len(rows)
    axpy, scale, inv = field.axpy, field.scale, field.inv
    for c in range(limit):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        lead = rows[r][c]
        if lead != 1:
            rows[r] = scale(rows[r], inv(lead))
        pr = rows[r]
        tail = pr[c:]  # the pivot row vanishes left of its pivot
        for i in range(nrows):
            if i != r and rows[i][c]:
                row = rows[i]
                row[c:] = axpy(row[c:], row[c], tail)
        pivots.append(c)
        r += 1
    return rows, pivots


def _rref_rows_mod(p: int, rows: List[list], limit: int) -> Tuple[List[list], List[int]]:
    """Same contract as ``_rref_rows`` with the field operations inlined for GF(p)."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(limit):
        if r == nrows:
            break
        for i in range(r, nrows):
            if rows[i][c]:
                break
        else:
            continue
        if i != r:
            rows[r], rows[i] = rows[i], rows[r]
        pr = rows[r]
        lead = pr[c]
        if lead != 1:
            li = pow(lead, -1, p)
            pr = rows[r] = [x * li % p for x in pr]
        tail = pr[c:]  # the pivot row vanishes left of its pivot
        for i in range(nrows):
            if i != r:
                row = rows[i]
                a = row[c]
                if a:
                    if p == 2:
                        row[c:] = [x ^ y for x, y in zip(row[c:], tail)]
                    else:
                        row[c:] = [(x - a * y) % p for x, y in zip(row[c:], tail)]
        pivots.append(c)
        r += 1
    return rows, pivots


def _rref_rows_qq(rows: List[list], limit: int) -> Tuple[List[list], List[int]]:
    """Same contract as ``_rref_rows`` over QQ, eliminating fraction-free.

    Each row is scaled to primitive integers; fractions come back only when the
    pivot rows are normalised at the end.
    """
    ints = []
    for row in rows:
        den = lcm(*(x.denominator for x in row)) if row else 1
        ints.append(_primitive([x.numerator * (den // x.denominator) for x in row]))
    pivots = []
    r = 0
    nrows = len(ints)
    for c in range(limit):
        if r == nrows:
            break
        for i in range(r, nrows):
            if ints[i][c]:
                break
        else:
            continue
        if i != r:
            ints[r], ints[i] = ints[i], ints[r]
        pr = ints[r]
        lead = pr[c]
        tail = pr[c:]
        for i in range(nrows):
            if i != r:
                row = ints[i]
                a = row[c]
                if a:
                    if lead == 1:  # the pivot row vanishes left of its pivot
                        row[c:] = [x - a * y for x, y in zip(row[c:], tail)]
                    else:
                        row = [lead * x - a * y for x, y in zip(row, pr)]
                    ints[i] = _primitive(row)
        pivots.append(c)
        r += 1
    out = []
    for i, row in enumerate(ints):
        if i < r:
            lead = row[pivots[i]]
            out.append([Fraction(x, lead) if x else _ZERO for x in row])
        else:
            # zero left of limit; any tail survives up to a nonzero integer factor
            out.append([Fraction(x) if x else _ZERO for x in row])
    return out, pivots


_ZERO = Fraction(0)


def _primitive(row: list) -> list:
    g = gcd(*row)
    if g > 1:
        return [x // g for x in row]
    return row


@dataclass(frozen=True)
class RrefResult:
    rref: Matrix
    rank: int
    pivot_cols: Tuple[int, ...]
    transform: Matrix


def rref(m: Matrix) -> RrefResult:
    """Reduced row-echelon form with the invertible transform: ``transform @ m == rref``."""
    f, n = m.field, m.ncols
    z, o = f.zero, f.one
    rows = [list(r) + [o if i == j else z for j in range(m.nrows)]
            for i, r in enumerate(m.data)]
    rows, pivots = _rref_rows(f, rows, n)
    R = Matrix(f, [r[:n] for r in rows], n, _trusted=True)
    T = Matrix(f, [r[n:] for r in rows], m.nrows, _trusted=True)
    return RrefResult(R, len(pivots), tuple(pivots), T)


def row_reduce(m: Matrix) -> Tuple[Matrix, Tuple[int, ...]]:
    """RREF without the transform, zero rows dropped: a canonical row-space basis."""
    rows, pivots = _rref_rows(m.field, [list(r) for r in m.data], m.ncols)
    return Matrix(m.field, rows[:len(pivots)], m.ncols, _trusted=True), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(_rref_rows(m.field, [list(r) for r in m.data], m.ncols)[1])


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of {x : m x = 0}."""
    f, n = m.field, m.ncols
    rows, pivots = _rref_rows(f, [list(r) for r in m.data], n)
    pivot_set = set(pivots)
    cols = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = [f.zero] * n
        v[free] = f.one
        for i, c in enumerate(pivots):
            v[c] = f.neg(rows[i][free])
        cols.append(v)
    return Matrix.from_columns(f, cols, n)


def image_basis(m: Matrix) -> Matrix:
    """The pivot columns of ``m``, which form a basis of its column space."""
    _, pivots = _rref_rows(m.field, [list(r) for r in m.data], m.ncols)
    return m.select_columns(pivots)


def solve(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """A particular solution X of ``a @ X == b`` (free variables zero), or None."""
    if a.field != b.field:
        raise ShapeError(f"field mismatch: {a.field} vs {b.field}")
    if a.nrows != b.nrows:
        raise ShapeError(f"solve needs equal row counts, got {a.shape} and {b.shape}")
    f, n = a.field, a.ncols
    rows = [list(r) + list(s) for r, s in zip(a.data, b.data)]
    rows, pivots = _rref_rows(f, rows, n)
    for r in rows[len(pivots):]:
        if any(r[n:]):
            return None
    x = [[f.zero] * b.ncols for _ in range(n)]
    for i, c in enumerate(pivots):
        x[c] = rows[i][n:]
    return Matrix(f, x, b.ncols, _trusted=True)


def in_column_space(basis: Matrix, v: Sequence) -> bool:
    col = Matrix(basis.field, [[x] for x in v], 1)
    return solve(basis, col) is not None


def column_space_contains(big: Matrix, small: Matrix) -> bool:
    """True iff every column of ``small`` lies in the column space of ``big``."""
    if big.nrows != small.nrows:
        raise ShapeError(f"ambient dimensions differ: {big.nrows} vs {small.nrows}")
    return rank(hstack(big, small)) == rank(big)


def extend_to_basis(cols: Matrix, candidates: Optional[Matrix] = None) -> Matrix:
    """Columns from ``candidates`` (default: the standard basis) that extend the
    independent columns of ``cols`` to a basis of their joint span.

    Greedy left to right: a candidate is kept iff it is not in the span of
    ``cols`` and the candidates kept before it, i.e. iff it is a pivot column.
    """
    f, n = cols.field, cols.nrows
    if candidates is None:
        candidates = Matrix.identity(f, n)
    k = cols.ncols
    _, pivots = _rref_rows(f, [list(r) for r in hstack(cols, candidates).data], k + candidates.ncols)
    return candidates.select_columns([c - k for c in pivots if c >= k])


def is_invertible(m: Matrix) -> bool:
    return m.is_square() and rank(m) == m.nrows


def random_matrix(field: FieldSpec, nrows: int, ncols: int, rng) -> Matrix:
    return Matrix(field, [[field.random(rng) for _ in range(ncols)] for _ in range(nrows)], ncols,
                  _trusted=True)


def random_invertible(field: FieldSpec, n: int, rng, steps: Optional[int] = None) -> Matrix:
    """Product of random elementary row operations (always invertible)."""
    rows = Matrix.identity(field, n).rows()
    rows = [list(r) for r in rows]
    if steps is None:
        steps = 3 * n
    for _ in range(steps if n else 0):
        kind = rng.randrange(3)
        i = rng.randrange(n)
        if kind == 0:
            j = rng.randrange(n)
            rows[i], rows[j] = rows[j], rows[i]
        elif kind == 1:
            rows[i] = field.scale(rows[i], field.random(rng, nonzero=True))
        elif n > 1:
            j = rng.choice([k for k in range(n) if k != i])
            rows[i] = field.axpy(rows[i], field.neg(field.random(rng)), rows[j])
    return Matrix(field, rows, n, _trusted=True)


def random_of_rank(field: FieldSpec, nrows: int, ncols: int, r: int, rng) -> Matrix:
    """A random matrix of rank exactly ``r``."""
    if r > min(nrows, ncols):
        raise ShapeError(f"rank {r} impossible for a {nrows}x{ncols} matrix")
    core = direct_sum(Matrix.identity(field, r), Matrix.zeros(field, nrows - r, ncols - r))
    return random_invertible(field, nrows, rng) @ core @ random_invertible(field, ncols, rng)


# ---------------------------------------------------------------------------
# canonical decomposition and inverses


@dataclass(frozen=True)
class CanonicalDecomposition:
    """``p_inv @ middle @ q_inv == original`` with ``middle = [[I_r, 0], [0, 0]]``."""

    p: Matrix
    p_inv: Matrix
    q: Matrix
    q_inv: Matrix
    rank: int

    @property
    def middle(self) -> Matrix:
        f = self.p.field
        return rank_block(f, self.p.nrows, self.q.nrows, self.rank)

    def reconstruct(self) -> Matrix:
        return self.p_inv @ self.middle @ self.q_inv


def rank_block(field: FieldSpec, nrows: int, ncols: int, r: int) -> Matrix:
    return direct_sum(Matrix.identity(field, r), Matrix.zeros(field, nrows - r, ncols - r))


def inverse_via_rref(m: Matrix) -> Matrix:
    """Inverse of a matrix already known to be invertible."""
    res = rref(m)
    if res.rank != m.nrows or not m.is_square():
        raise ShapeError("matrix is not invertible")
    return res.transform


def canonical_decomposition(m: Matrix) -> CanonicalDecomposition:
    """Rank-revealing factorisation ``m = P^-1 [I 0; 0 0] Q^-1``.

    With T m = R in RREF and a column permutation moving pivot columns first,
    R Pi = [[I, X], [0, 0]] = [[I, 0], [0, 0]] [[I, X], [0, I]].
    """
    f = m.field
    res = rref(m)
    r, piv = res.rank, list(res.pivot_cols)
    n = m.ncols
    free = [j for j in range(n) if j not in set(piv)]
    order = piv + free  # new column k is old column order[k]
    # Pi has Pi[order[k], k] = 1, so (R Pi)[:, k] = R[:, order[k]].
    pi = permutation(f, order)
    rpi = res.rref @ pi
    x = rpi.select_rows(range(r)).select_columns(range(r, n))
    upper = Matrix.identity(f, n).rows()
    upper = [list(row) for row in upper]
    lower = [list(row) for row in upper]
    for i in range(r):
        for j in range(n - r):
            upper[i][r + j] = x[i, j]
            lower[i][r + j] = f.neg(x[i, j])
    upper = Matrix(f, upper, n, _trusted=True)
    lower = Matrix(f, lower, n, _trusted=True)
    q_inv = upper @ pi.T
    q = pi @ lower
    return CanonicalDecomposition(p=res.transform, p_inv=inverse_via_rref(res.transform),
                                  q=q, q_inv=q_inv, rank=r)


def _pseudo_inverse(m: Matrix) -> Matrix:
    cd = canonical_decomposition(m)
    return cd.q @ cd.middle.T @ cd.p


def left_inverse(m: Matrix) -> Optional[Matrix]:
    """L with ``L @ m == I`` when ``m`` is injective, else None."""
    if rank(m) != m.ncols:
        return None
    return _pseudo_inverse(m)


def right_inverse(m: Matrix) -> Optional[Matrix]:
    """R with ``m @ R == I`` when ``m`` is surjective, else None."""
    if rank(m) != m.nrows:
        return None
    return _pseudo_inverse(m)


def inverse(m: Matrix) -> Optional[Matrix]:
    if not m.is_square() or rank(m) != m.nrows:
        return None
    return _pseudo_inverse(m)


def matrix(rows, field: FieldSpec = QQ, ncols: Optional[int] = None) -> Matrix:
    """Shorthand constructor: ``matrix([[1, 2], [3, 4]], GF(5))``."""
    return Matrix(field, rows, ncols)
