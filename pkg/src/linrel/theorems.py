"""Executable checks of the structure theorems, plus instance generators.

Each ``check_*`` function evaluates every claim of one theorem on one
instance and returns a :class:`Verdict`.  A failing verdict is a
counterexample to a proved statement, hence a bug in this package.
:func:`run_selftest` drives all checkers over exhaustive GF(2) domains and
seeded random instances.
"""

from __future__ import annotations

import json
import logging
import random
import time
from dataclasses import dataclass, field as dc_field
from functools import wraps
from itertools import combinations, product
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from . import oracle
from . import relation as rel
from .decompose import (canonical_wire_relation, classify_shape, cospan_decompose,
                        cospan_dict_rows, wire_shape)
from .errors import FieldError
from .field import GF, QQ, FieldSpec
from .matrix import (Matrix, column_space_contains, hstack, image_basis, inverse, kernel_basis,
                     left_inverse, random_invertible, random_matrix, random_of_rank, rank,
                     right_inverse)
from .pair import pair_decompose, same_span, subspace_report, uniqueness_defect, zassenhaus
from .relation import LinearRelation

log = logging.getLogger(__name__)

MAX_ENUM_WIDTH = 5


# ---------------------------------------------------------------------------
# serialisation of instances for counterexample reports


def matrix_to_json(m: Matrix) -> dict:
    return {"field": str(m.field), "rows": m.nrows, "cols": m.ncols, "entries": m.to_strings()}


def relation_to_json(r: LinearRelation) -> dict:
    return {"field": str(r.field), "m": r.m, "n": r.n, "basis": r.basis.to_strings()}


def _to_json(obj):
    if isinstance(obj, Matrix):
        return matrix_to_json(obj)
    if isinstance(obj, LinearRelation):
        return relation_to_json(obj)
    return repr(obj)


# ---------------------------------------------------------------------------
# verdicts


@dataclass
class Verdict:
    theorem: str
    ok: bool
    failures: List[str] = dc_field(default_factory=list)
    case: Dict[str, object] = dc_field(default_factory=dict)

    def __bool__(self):
        return self.ok

    def as_dict(self) -> dict:
        return {"theorem": self.theorem, "ok": self.ok, "failures": self.failures,
                "case": {k: _to_json(v) for k, v in self.case.items()}}


def _verdict(theorem: str, claims: List[Tuple[str, bool]], **case) -> Verdict:
    failed = [name for name, ok in claims if not ok]
    return Verdict(theorem, not failed, failed, case)


def _guard(theorem: str, arg_names: Tuple[str, ...]):
    """Turn any exception raised inside a checker into a failing verdict."""

    def deco(fn):
        @wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                return fn(*args, **kwargs)
            except Exception as exc:  # a crash on valid input is a counterexample too
                case = dict(zip(arg_names, args))
                return Verdict(theorem, False, [f"raised {type(exc).__name__}: {exc}"], case)

        return wrapper

    return deco


# ---------------------------------------------------------------------------
# enumeration


def enumerate_rref(field: FieldSpec, rows: int, width: int) -> Iterator[Matrix]:
    """Every rows x width matrix in RREF with no zero rows."""
    elems = list(field.elements())
    for pivots in combinations(range(width), rows):
        pivot_set = set(pivots)
        free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, width)
                if j not in pivot_set]
        for values in product(elems, repeat=len(free)):
            data = [[field.zero] * width for _ in range(rows)]
            for i, p in enumerate(pivots):
                data[i][p] = field.one
            for (i, j), v in zip(free, values):
                data[i][j] = v
            yield Matrix(field, data, width, _trusted=True)


def enumerate_relations(field: FieldSpec, m: int, n: int) -> Iterator[LinearRelation]:
    """Every linear relation K^m -> K^n, each exactly once."""
    if not field.is_prime:
        raise FieldError("exhaustive enumeration needs a finite field")
    if m < 0 or n < 0:
        raise ValueError("arities must be nonnegative")
    if m + n > MAX_ENUM_WIDTH:
        raise ValueError(f"m + n = {m + n} exceeds the enumeration bound {MAX_ENUM_WIDTH}")
    for d in range(m + n + 1):
        for basis in enumerate_rref(field, d, m + n):
            yield LinearRelation(field, m, n, basis)


def enumerate_matrices(field: FieldSpec, nrows: int, ncols: int) -> Iterator[Matrix]:
    if not field.is_prime:
        raise FieldError("exhaustive enumeration needs a finite field")
    elems = list(field.elements())
    for values in product(elems, repeat=nrows * ncols):
        yield Matrix(field, [values[i * ncols:(i + 1) * ncols] for i in range(nrows)], ncols,
                     _trusted=True)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


# ---------------------------------------------------------------------------
# random instances


@dataclass
class InstanceGen:
    """Seeded source of random matrices and relations; same seed, same stream."""

    field: FieldSpec
    max_dim: int = 6
    seed: int = 0
    rng: random.Random = dc_field(init=False, repr=False)

    def __post_init__(self):
        self.rng = random.Random(self.seed)

    def dim(self, lo: int = 0) -> int:
        return self.rng.randint(lo, self.max_dim)

    def matrix(self, nrows: int, ncols: int, rank_: Optional[int] = None) -> Matrix:
        """Uniform entries, or a random matrix of the given rank."""
        if rank_ is None:
            return random_matrix(self.field, nrows, ncols, self.rng)
        return random_of_rank(self.field, nrows, ncols, rank_, self.rng)

    def any_rank_matrix(self, nrows: int, ncols: int) -> Matrix:
        # half uniform, half with a uniformly chosen rank, so low ranks show up over QQ too
        if self.rng.random() < 0.5:
            return self.matrix(nrows, ncols)
        return self.matrix(nrows, ncols, self.rng.randint(0, min(nrows, ncols)))

    def invertible(self, n: int) -> Matrix:
        return random_invertible(self.field, n, self.rng)

    def cospan(self, k: Optional[int] = None, m: Optional[int] = None,
               n: Optional[int] = None) -> Tuple[Matrix, Matrix]:
        k = self.dim() if k is None else k
        m = self.dim() if m is None else m
        n = self.dim() if n is None else n
        return self.any_rank_matrix(k, m), self.any_rank_matrix(k, n)

    def relation(self, m: Optional[int] = None, n: Optional[int] = None) -> LinearRelation:
        m = self.dim() if m is None else m
        n = self.dim() if n is None else n
        if self.rng.random() < 0.5:
            a, b = self.cospan(m=m, n=n)
            return rel.from_cospan(a, b)
        d = self.rng.randint(0, m + n)
        return rel.from_subspace_basis(self.field, m, n, self.any_rank_matrix(d, m + n))

    def larger(self, r: LinearRelation) -> LinearRelation:
        """A relation containing ``r``."""
        extra = self.any_rank_matrix(self.rng.randint(0, 2), r.m + r.n)
        return rel.join(r, rel.from_subspace_basis(self.field, r.m, r.n, extra))

    def square(self, n: Optional[int] = None) -> Matrix:
        """Invertible or singular with equal odds (singular needs n >= 1)."""
        n = self.dim(lo=1) if n is None else n
        if n == 0 or self.rng.random() < 0.5:
            return self.invertible(n)
        return self.matrix(n, n, self.rng.randint(0, n - 1))


# ---------------------------------------------------------------------------
# checkers


class ElementCache:
    """Memoised element sets; the exhaustive suite revisits the same relations."""

    def __init__(self):
        self._sets: Dict[tuple, oracle.PairSet] = {}

    def __call__(self, r: LinearRelation) -> oracle.PairSet:
        key = (r.m, r.n, r.basis.data)
        out = self._sets.get(key)
        if out is None:
            out = self._sets[key] = oracle.elements(r)
        return out


@_guard("oracle", ("r", "s"))
def check_oracle(r: LinearRelation, s: Optional[LinearRelation] = None,
                 elements: Optional[Callable] = None) -> Verdict:
    """Compare the algebra with set semantics.

    With one relation: opposite and the four properties.  With two: every
    binary operation their arities allow.
    """
    f = r.field
    el = elements or oracle.elements
    er = el(r)
    if s is None:
        claims = [
            ("opposite", el(rel.opposite(r)) == oracle.opposite(er)),
            ("properties", all(rel.properties(r).as_dict()[k] == v
                               for k, v in oracle.properties(f, er, r.m, r.n).items())),
        ]
        return _verdict("oracle", claims, r=r)
    es = el(s)
    claims = []
    if r.arity == s.arity:
        claims.append(("meet", el(rel.meet(r, s)) == oracle.meet(er, es)))
        claims.append(("join", el(rel.join(r, s)) == oracle.join(f, er, es)))
        claims.append(("includes", rel.includes(r, s) == (es <= er)))
    if r.n == s.m:
        claims.append(("compose", el(rel.compose(r, s)) == oracle.compose(er, es)))
    if r.m + r.n + s.m + s.n <= 4:
        claims.append(("product", el(rel.direct_product(r, s)) == oracle.product_(er, es)))
    return _verdict("oracle", claims, r=r, s=s)


@_guard("cospan_decomposition", ("r",))
def check_decomposition(r: LinearRelation, rng=None) -> Verdict:
    """Reconstruction, shape bookkeeping, shape uniqueness, specialisation to maps."""
    f = r.field
    cd = cospan_decompose(r)
    cd2 = cospan_decompose(r, rng=rng or random.Random(0))
    sh = cd.shape
    claims = [
        ("p invertible", cd.p @ cd.p_inv == Matrix.identity(f, r.m)),
        ("q invertible", cd.q @ cd.q_inv == Matrix.identity(f, r.n)),
        ("reconstruction", cd.reconstruct() == r),
        ("pointwise convention", all(
            canonical_wire_relation(sh, f).contains(cd.p.apply(row[:r.m]), cd.q.apply(row[r.m:]))
            for row in r.basis.data)),
        ("randomised reconstruction", cd2.reconstruct() == r),
        ("m = r + kI + kT", r.m == sh.r + sh.k_I + sh.k_T),
        ("n = r + kS + kD", r.n == sh.r + sh.k_S + sh.k_D),
        ("dim R = r + kI + kD", r.dim == sh.r + sh.k_I + sh.k_D),
        ("shape unique", cd2.shape == sh and wire_shape(r) == sh),
    ]
    if rel.is_map(r):
        a = rel.as_matrix(r)
        claims.append(("map specialises", sh.k_T == 0 and sh.k_D == 0 and sh.r == rank(a)))
    return _verdict("cospan_decomposition", claims, r=r)


@_guard("wire_classification", ("r",))
def check_classification(r: LinearRelation) -> Verdict:
    by_shape = classify_shape(cospan_decompose(r).shape)
    direct = rel.properties(r)
    op = rel.properties(rel.opposite(r))
    claims = [
        ("TOT <=> kT = 0", by_shape.total == direct.total),
        ("DET <=> kD = 0", by_shape.deterministic == direct.deterministic),
        ("INJ <=> kI = 0", by_shape.injective == direct.injective),
        ("SUR <=> kS = 0", by_shape.surjective == direct.surjective),
        ("mirror symmetry", (direct.total, direct.deterministic, direct.injective,
                             direct.surjective) == (op.surjective, op.injective,
                                                    op.deterministic, op.total)),
    ]
    return _verdict("wire_classification", claims, r=r)


@_guard("implications", ("r",))
def check_poset(r: LinearRelation) -> Verdict:
    p = rel.properties(r)
    tot, det, inj, sur = p.total, p.deterministic, p.injective, p.surjective
    m, n = r.m, r.n

    def implies(h, c):
        return (not h) or c

    claims = [
        ("TOT INJ SUR m>=n => DET", implies(tot and inj and sur and m >= n, det)),
        ("DET INJ SUR m<=n => TOT", implies(det and inj and sur and m <= n, tot)),
        ("DET TOT INJ m>=n => SUR", implies(det and tot and inj and m >= n, sur)),
        ("DET TOT SUR m<=n => INJ", implies(det and tot and sur and m <= n, inj)),
        ("TOT INJ => m<=n", implies(tot and inj, m <= n)),
        ("DET SUR => m>=n", implies(det and sur, m >= n)),
    ]
    return _verdict("implications", claims, r=r)


@_guard("pigeonhole", ("a", "b"))
def check_pigeonhole(a: Matrix, b: Matrix) -> Verdict:
    r = rel.from_cospan(a, b)
    p = rel.properties(r)
    claims = [
        ("TOT INJ => m <= n", (not (p.total and p.injective)) or a.ncols <= b.ncols),
        ("DET SUR => m >= n", (not (p.deterministic and p.surjective)) or a.ncols >= b.ncols),
    ]
    return _verdict("pigeonhole", claims, a=a, b=b)


@_guard("exchange", ("a", "b"))
def check_exchange_equivalence(a: Matrix, b: Matrix) -> Verdict:
    """A injective with im B ⊇ im A  <=>  the cospan is TOT and INJ."""
    lhs = kernel_basis(a).ncols == 0 and column_space_contains(b, a)
    p = rel.properties(rel.from_cospan(a, b))
    rhs = p.total and p.injective
    claims = [("injective into im B <=> TOT INJ", lhs == rhs)]
    if lhs:
        claims.append(("dimension bound m <= n", a.ncols <= b.ncols))
    return _verdict("exchange", claims, a=a, b=b)


@_guard("property_forms", ("a", "b"))
def check_cospan_dict(a: Matrix, b: Matrix) -> Verdict:
    rows = cospan_dict_rows(a, b, strict=False)
    claims = [(f"{prop} forms agree", row.agree) for prop, row in rows.items()]
    return _verdict("property_forms", claims, a=a, b=b)


@_guard("imt", ("a",))
def check_imt(a: Matrix) -> Verdict:
    f = a.field
    inj = kernel_basis(a).ncols == 0
    sur = image_basis(a).ncols == a.nrows
    g = rel.properties(rel.graph_of_map(a))
    L, R = left_inverse(a), right_inverse(a)
    claims = [
        ("graph INJ <=> kernel 0", g.injective == inj),
        ("graph SUR <=> image full", g.surjective == sur),
        ("graph is a map", g.is_map),
        ("left inverse <=> INJ", (L is not None) == inj),
        ("right inverse <=> SUR", (R is not None) == sur),
        ("L a = I", L is None or L @ a == Matrix.identity(f, a.ncols)),
        ("a R = I", R is None or a @ R == Matrix.identity(f, a.nrows)),
        ("INJ => cols <= rows", (not inj) or a.ncols <= a.nrows),
        ("SUR => cols >= rows", (not sur) or a.ncols >= a.nrows),
    ]
    rows = cospan_dict_rows(a, Matrix.identity(f, a.nrows), strict=False)
    claims.append(("matrix theorem rows agree", all(row.agree for row in rows.values())))
    if a.is_square():
        inv = inverse(a)
        claims += [
            ("square: INJ <=> SUR", inj == sur),
            ("square: inverse <=> INJ", (inv is not None) == inj),
        ]
        if inv is not None:
            eye = Matrix.identity(f, a.nrows)
            claims += [
                ("inverse both sides", inv @ a == eye and a @ inv == eye),
                ("one-sided inverses coincide", L == inv and R == inv),
            ]
    return _verdict("imt", claims, a=a)


@_guard("inverse_laws", ("a", "r", "s"))
def check_props_inverse_laws(a: Matrix, r: LinearRelation, s: LinearRelation) -> Verdict:
    """Consequences of one-sided inverses, in relational form.

    Left laws apply when ``r, s`` end in K^cols(a); right laws when they
    start in K^rows(a).  Matrix product ``B @ A == I`` is the diagram A ; B = id.
    """
    ga = rel.graph_of_map(a)
    claims = []
    L, R = left_inverse(a), right_inverse(a)
    if L is not None and r.n == a.ncols and s.n == a.ncols:
        gl = rel.graph_of_map(L)
        ra = rel.compose(r, ga)
        claims += [
            ("left: A injective", rel.is_injective(ga)),
            ("left: A ⊆ op(B)", rel.includes(rel.opposite(gl), ga)),
            ("left: R;A = S => R = S;B", rel.compose(ra, gl) == r),
            ("left: cancellation", (r == s) == (ra == rel.compose(s, ga))),
        ]
    if R is not None and r.m == a.nrows and s.m == a.nrows:
        gr = rel.graph_of_map(R)
        ar = rel.compose(ga, r)
        claims += [
            ("right: A surjective", rel.is_surjective(ga)),
            ("right: A ⊇ op(B)", rel.includes(ga, rel.opposite(gr))),
            ("right: A;R = S => R = B;S", rel.compose(gr, ar) == r),
            ("right: cancellation", (r == s) == (ar == rel.compose(ga, s))),
        ]
    if L is not None and R is not None:
        claims.append(("two-sided: A = op(B)", ga == rel.opposite(rel.graph_of_map(L))))
    return _verdict("inverse_laws", claims, a=a, r=r, s=s)


@_guard("pair", ("a", "b"))
def check_pair(a: Matrix, b: Matrix, rng=None) -> Verdict:
    f, k = a.field, a.nrows
    dec = pair_decompose(a, b, rng=rng)
    sh = dec.shape
    R = rel.from_cospan(a, b)
    claims = [
        ("A = H D1 P", dec.h @ dec.d1 @ dec.p == a),
        ("B = H D2 Q", dec.h @ dec.d2 @ dec.q == b),
        ("P, Q invertible", rank(dec.p) == a.ncols and rank(dec.q) == b.ncols),
        ("H injective", rank(dec.h) == dec.h.ncols),
        ("H surjective <=> [A|B] full row rank",
         (rank(dec.h) == k) == (rank(hstack(a, b)) == k)),
        ("unique", uniqueness_defect(dec) == 0),
        ("shape matches cospan", sh == wire_shape(R)),
        ("selectors present W", rel.from_cospan(dec.d1, dec.d2) == canonical_wire_relation(sh, f)),
        ("selectors 0/1", all(x in (0, 1) for mm in (dec.d1, dec.d2) for row in mm.data
                              for x in row)),
        ("H width", dec.h.ncols == sh.r + sh.k_T + sh.k_S),
    ]
    return _verdict("pair", claims, a=a, b=b)


@_guard("subspaces", ("a", "b"))
def check_subspaces(a: Matrix, b: Matrix) -> Verdict:
    rep = subspace_report(a, b)
    z_sum, z_meet = zassenhaus(a, b)
    S = rel.subspace
    f, k = a.field, a.nrows
    zero = rel.zero(f, k)

    def complements(x, y, whole):
        return rel.join(S(x), S(y)) == S(whole) and rel.meet(S(x), S(y)) == zero

    claims = [
        ("im A", same_span(rep.im_a, a)),
        ("im B", same_span(rep.im_b, b)),
        ("sum = Zassenhaus", same_span(rep.sum, z_sum)),
        ("intersection = Zassenhaus", same_span(rep.intersection, z_meet)),
        ("sum = A + B", S(rep.sum) == rel.join(S(a), S(b))),
        ("intersection = A ∩ B", S(rep.intersection) == rel.meet(S(a), S(b))),
        ("intersection ⊆ im A ⊆ sum", S(rep.intersection) <= S(rep.im_a) <= S(rep.sum)),
        ("complement of A", complements(rep.im_a, rep.complement_of_a, rep.sum)),
        ("complement of B", complements(rep.im_b, rep.complement_of_b, rep.sum)),
        ("complement of intersection",
         complements(rep.intersection, rep.complement_of_intersection, rep.sum)),
        ("bases independent", all(rank(m) == m.ncols for _, m in rep.items())),
        ("Grassmann", rank(rep.sum) == rank(a) + rank(b) - rank(rep.intersection)),
        ("zero subspace", rep.zero.ncols == 0 and S(rep.zero) == zero),
    ]
    return _verdict("subspaces", claims, a=a, b=b)


@_guard("laws", ("r", "s", "t", "u"))
def check_laws(r: LinearRelation, s: LinearRelation, t: LinearRelation,
               u: LinearRelation, s_big: LinearRelation) -> Verdict:
    """Algebraic laws for r: m->k, s: k->l, t: l->n and an extra u: n->p.

    ``s_big`` must contain ``s``.
    """
    C, X, op = rel.compose, rel.direct_product, rel.opposite
    claims = [
        ("associativity", C(C(r, s), t) == C(r, C(s, t))),
        ("interchange", X(C(r, s), C(t, u)) == C(X(r, t), X(s, u))),
        ("contravariance", op(C(r, s)) == C(op(s), op(r))),
        ("product associativity", X(X(r, s), t) == X(r, X(s, t))),
        ("left unit", C(rel.identity(r.field, r.m), r) == r),
        ("right unit", C(r, rel.identity(r.field, r.n)) == r),
        ("monotone right", rel.includes(C(r, s_big), C(r, s))),
        ("monotone left", rel.includes(C(s_big, t), C(s, t))),
    ]
    return _verdict("laws", claims, r=r, s=s, t=t, u=u)


@_guard("functoriality", ("f", "g"))
def check_graph_functor(f: Matrix, g: Matrix) -> Verdict:
    gf = rel.graph_of_map
    claims = [
        ("graph(g f) = graph f ; graph g", rel.compose(gf(f), gf(g)) == gf(g @ f)),
        ("cospan(A, I) = graph A", rel.from_cospan(f, Matrix.identity(f.field, f.nrows)) == gf(f)),
        ("graph total and deterministic", rel.is_map(gf(f))),
        ("cospan round trip", rel.from_cospan(*rel.to_cospan(gf(f))) == gf(f)),
    ]
    return _verdict("functoriality", claims, f=f, g=g)


# ---------------------------------------------------------------------------
# suites


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    total: int = 0
    seconds: float = 0.0
    failures: List[Verdict] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def add(self, v: Verdict):
        self.total += 1
        if v.ok:
            self.passed += 1
        elif len(self.failures) < 5:
            self.failures.append(v)


class Harness:
    """Accumulates verdicts per theorem."""

    def __init__(self):
        self.suites: Dict[str, SuiteResult] = {}

    def run(self, name: str, verdicts):
        suite = self.suites.setdefault(name, SuiteResult(name))
        t0 = time.perf_counter()
        for v in verdicts:
            suite.add(v)
        suite.seconds += time.perf_counter() - t0
        return suite

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.suites.values())

    def failures(self) -> List[Verdict]:
        return [v for s in self.suites.values() for v in s.failures]


def exhaustive_relations(field: FieldSpec = GF(2), max_width: int = 4) -> List[LinearRelation]:
    return [r for w in range(max_width + 1) for m in range(w + 1)
            for r in enumerate_relations(field, m, w - m)]


def exhaustive_cospans(field: FieldSpec = GF(2), max_dim: int = 2):
    for k, m, n in product(range(max_dim + 1), repeat=3):
        bs = list(enumerate_matrices(field, k, n))
        for a in enumerate_matrices(field, k, m):
            for b in bs:
                yield a, b


def oracle_suite(field: FieldSpec = GF(2), max_width: int = 4) -> Iterator[Verdict]:
    """Every relation alone, every same-arity pair and every composable pair."""
    rels = exhaustive_relations(field, max_width)
    by_arity: Dict[Tuple[int, int], List[LinearRelation]] = {}
    for r in rels:
        by_arity.setdefault(r.arity, []).append(r)
    el = ElementCache()
    for r in rels:
        yield check_oracle(r, elements=el)
    for group in by_arity.values():
        for r in group:
            for s in group:
                yield check_oracle(r, s, elements=el)
    for (m, k), left in by_arity.items():
        for (k2, n), right in by_arity.items():
            if k2 != k or (m, k) == (k2, n):
                continue  # same arity: composed above
            for r in left:
                for s in right:
                    yield check_oracle(r, s, elements=el)


def random_relations(field: FieldSpec, count: int, seed: int, max_dim: int = 6):
    gen = InstanceGen(field, max_dim, seed)
    return [gen.relation() for _ in range(count)]


def random_pairs(field: FieldSpec, count: int, seed: int, max_dim: int = 6):
    gen = InstanceGen(field, max_dim, seed)
    return [gen.cospan() for _ in range(count)]


def random_squares(field: FieldSpec, count: int, seed: int, max_dim: int = 6):
    gen = InstanceGen(field, max_dim, seed)
    return [gen.square() for _ in range(count)]


def random_law_cases(field: FieldSpec, count: int, seed: int, max_dim: int = 3):
    gen = InstanceGen(field, max_dim, seed)
    out = []
    for _ in range(count):
        m, k, l, n, p = (gen.dim() for _ in range(5))
        r, s, t, u = gen.relation(m, k), gen.relation(k, l), gen.relation(l, n), gen.relation(n, p)
        out.append((r, s, t, u, gen.larger(s)))
    return out


def random_inverse_law_cases(field: FieldSpec, count: int, seed: int, max_dim: int = 4):
    gen = InstanceGen(field, max_dim, seed)
    out = []
    for _ in range(count):
        rows, cols = gen.dim(), gen.dim()
        if gen.rng.random() < 0.5:
            a = gen.matrix(rows, cols, min(rows, cols))  # full rank: one inverse exists
        else:
            a = gen.any_rank_matrix(rows, cols)
        j = gen.dim()
        r = gen.relation(j, cols)
        s = r if gen.rng.random() < 0.3 else gen.relation(j, cols)
        out.append((a, r, s))
        r2 = gen.relation(rows, j)
        s2 = r2 if gen.rng.random() < 0.3 else gen.relation(rows, j)
        out.append((a, r2, s2))
    return out


@dataclass
class SelftestReport:
    harness: Harness
    seconds: float
    repro_path: Optional[Path] = None

    @property
    def ok(self) -> bool:
        return self.harness.ok

    def lines(self) -> List[str]:
        out = []
        for s in self.harness.suites.values():
            status = "PASS" if s.ok else "FAIL"
            out.append(f"{status} {s.name:<22} {s.passed:>6}/{s.total:<6} {s.seconds:6.2f}s")
        out.append(f"{'ALL PASS' if self.ok else 'FAILURES'} in {self.seconds:.2f}s")
        return out


def run_selftest(quick: bool = False, seed: int = 0, trials: int = 1000,
                 repro_dir: Optional[Path] = None,
                 progress: Optional[Callable[[str], None]] = None) -> SelftestReport:
    """Exhaustive GF(2) suites, then (unless ``quick``) seeded random suites.

    ``quick`` keeps only the exhaustive suites, with the oracle comparison cut
    to m + n <= 3 and square matrices to 2x2.

    On failure the first counterexamples are written to
    ``repro_dir/linrel-counterexamples.json``.
    """
    t0 = time.perf_counter()
    h = Harness()
    say = progress or (lambda msg: None)
    F2, F5, F7 = GF(2), GF(5), GF(7)

    say("exhaustive GF(2) relations")
    rels = exhaustive_relations(F2, 4)
    h.run("oracle", oracle_suite(F2, 3 if quick else 4))
    h.run("cospan_decomposition", (check_decomposition(r, random.Random(seed + i))
                                   for i, r in enumerate(rels)))
    h.run("wire_classification", (check_classification(r) for r in rels))
    h.run("implications", (check_poset(r) for r in rels))
    cospans = list(exhaustive_cospans(F2, 2))
    h.run("property_forms", (check_cospan_dict(a, b) for a, b in cospans))
    h.run("pigeonhole", (check_pigeonhole(a, b) for a, b in cospans))
    h.run("exchange", (check_exchange_equivalence(a, b) for a, b in cospans))
    h.run("pair", (check_pair(a, b) for a, b in cospans))
    h.run("subspaces", (check_subspaces(a, b) for a, b in cospans))
    squares = [a for n in range(3 if quick else 4) for a in enumerate_matrices(F2, n, n)]
    h.run("imt", (check_imt(a) for a in squares))

    if not quick:
        half = max(1, trials // 2)
        for fld, s in ((F5, seed + 1), (QQ, seed + 2)):
            say(f"random relations over {fld}")
            rs = random_relations(fld, trials, s)
            rng = random.Random(s)
            h.run("cospan_decomposition", (check_decomposition(r, rng) for r in rs))
            h.run("wire_classification", (check_classification(r) for r in rs))
            h.run("implications", (check_poset(r) for r in rs))
        say("random cospans over GF(5)")
        pairs5 = random_pairs(F5, trials, seed + 3)
        h.run("property_forms", (check_cospan_dict(a, b) for a, b in pairs5))
        h.run("pigeonhole", (check_pigeonhole(a, b) for a, b in pairs5))
        h.run("exchange", (check_exchange_equivalence(a, b) for a, b in pairs5))
        for fld, s in ((F5, seed + 4), (QQ, seed + 5)):
            say(f"pair decompositions over {fld}")
            ps = random_pairs(fld, half, s)
            h.run("pair", (check_pair(a, b) for a, b in ps))
            h.run("subspaces", (check_subspaces(a, b) for a, b in ps))
        for fld, s in ((F7, seed + 6), (QQ, seed + 7)):
            say(f"square matrices over {fld}")
            h.run("imt", (check_imt(a) for a in random_squares(fld, half, s)))
            h.run("inverse_laws", (check_props_inverse_laws(*c)
                                   for c in random_inverse_law_cases(fld, half // 2, s)))
        say("algebraic laws")
        for fld, s in ((F5, seed + 8), (QQ, seed + 9)):
            h.run("laws", (check_laws(*c) for c in random_law_cases(fld, half, s)))
            gen = InstanceGen(fld, 4, s)
            h.run("functoriality", (check_graph_functor(*_composable_maps(gen))
                                    for _ in range(half)))

    report = SelftestReport(h, time.perf_counter() - t0)
    if not h.ok:
        directory = Path(repro_dir) if repro_dir is not None else Path.cwd()
        directory.mkdir(parents=True, exist_ok=True)
        path = directory / "linrel-counterexamples.json"
        path.write_text(json.dumps([v.as_dict() for v in h.failures()], indent=2))
        report.repro_path = path
        log.error("selftest failed; counterexamples written to %s", path)
    return report


def _composable_maps(gen: InstanceGen) -> Tuple[Matrix, Matrix]:
    m, k, n = gen.dim(), gen.dim(), gen.dim()
    return gen.any_rank_matrix(k, m), gen.any_rank_matrix(n, k)
