"""Set-enumeration semantics of relations over a finite prime field.

Everything here works on explicit sets of pairs ``(x, y)`` of tuples and uses
nothing from the elimination code, so it can serve as an independent check of
the relation algebra on small instances.
"""

from __future__ import annotations

from itertools import product
from operator import xor
from typing import Dict, FrozenSet, Set, Tuple

from .field import FieldSpec

Vec = Tuple[int, ...]
Pair = Tuple[Vec, Vec]
PairSet = FrozenSet[Pair]


def all_vectors(field: FieldSpec, n: int):
    return product(range(field.modulus), repeat=n)


def elements(r) -> PairSet:
    """All pairs of a :class:`LinearRelation` over a prime field."""
    return frozenset((v[:r.m], v[r.m:]) for v in r.vectors())


def span_pairs(field: FieldSpec, m: int, gens) -> PairSet:
    """Closure of generator vectors (length m+n) under linear combination."""
    p = field.modulus
    gens = [tuple(g) for g in gens]
    width = len(gens[0]) if gens else 0
    out: Set[Vec] = set()
    for coeffs in product(range(p), repeat=len(gens)):
        v = [0] * width
        for c, g in zip(coeffs, gens):
            if c:
                v = [(a + c * b) % p for a, b in zip(v, g)]
        out.add(tuple(v))
    return frozenset((v[:m], v[m:]) for v in out)


def compose(r: PairSet, s: PairSet) -> PairSet:
    by_mid: Dict[Vec, list] = {}
    for y, z in s:
        by_mid.setdefault(y, []).append(z)
    return frozenset((x, z) for x, y in r for z in by_mid.get(y, ()))


def product_(r: PairSet, s: PairSet) -> PairSet:
    return frozenset((x + w, y + z) for x, y in r for w, z in s)


def opposite(r: PairSet) -> PairSet:
    return frozenset((y, x) for x, y in r)


def meet(r: PairSet, s: PairSet) -> PairSet:
    return r & s


def join(field: FieldSpec, r: PairSet, s: PairSet) -> PairSet:
    """Closure of r ∪ s under addition, grown one new element at a time."""
    p = field.modulus
    if p == 2:
        def add(u, v):
            return tuple(map(xor, u, v))
    else:
        def add(u, v):
            return tuple((a + b) % p for a, b in zip(u, v))

    def times(c, u):
        return tuple(c * a % p for a in u)

    out = set(r)
    for x, y in s:
        if (x, y) in out:
            continue
        shifts = [(times(c, x), times(c, y)) for c in range(1, p)]
        out |= {(add(u, sx), add(v, sy)) for u, v in list(out) for sx, sy in shifts}
    return frozenset(out)


def properties(field: FieldSpec, r: PairSet, m: int, n: int) -> Dict[str, bool]:
    """The quantifier definitions, checked point by point."""
    xs = list(all_vectors(field, m))
    ys = list(all_vectors(field, n))
    out_of: Dict[Vec, int] = {x: 0 for x in xs}
    into: Dict[Vec, int] = {y: 0 for y in ys}
    for x, y in r:
        out_of[x] += 1
        into[y] += 1
    return {
        "TOT": all(out_of[x] >= 1 for x in xs),
        "DET": all(out_of[x] <= 1 for x in xs),
        "SUR": all(into[y] >= 1 for y in ys),
        "INJ": all(into[y] <= 1 for y in ys),
    }
