"""Exact scalar arithmetic over QQ and prime fields GF(p).

Matrices store *raw* field values for speed: :class:`fractions.Fraction` over
QQ, a reduced ``int`` in ``[0, p)`` over GF(p).  :class:`FieldSpec` owns the
arithmetic on raw values; :class:`Scalar` is the checked, operator-friendly
wrapper for code that handles individual elements.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Union

from .errors import FieldError

RATIONALS = "QQ"
PRIME = "GF"

_GF_RE = re.compile(r"^\s*GF\(\s*(\d+)\s*\)\s*$")
_QQ_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$")
_INT_RE = re.compile(r"^\s*[+-]?\d+\s*$")

_MAX_MODULUS = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``modulus=None``) or GF(modulus)."""

    kind: str = RATIONALS
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.kind == RATIONALS:
            if self.modulus is not None:
                raise FieldError("QQ takes no modulus")
        elif self.kind == PRIME:
            if not isinstance(self.modulus, int) or not is_prime(self.modulus):
                raise FieldError(f"GF modulus must be prime, got {self.modulus!r}")
            if self.modulus >= _MAX_MODULUS:
                raise FieldError(f"modulus {self.modulus} exceeds word-size bound")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``"QQ"`` or ``"GF(p)"``."""
        if text.strip() == RATIONALS:
            return QQ
        m = _GF_RE.match(text)
        if not m:
            raise FieldError(f"cannot parse field {text!r}; expected 'QQ' or 'GF(p)'")
        return GF(int(m.group(1)))

    def __str__(self):
        return RATIONALS if self.kind == RATIONALS else f"GF({self.modulus})"

    def __repr__(self):
        return f"FieldSpec({str(self)!r})"

    @property
    def is_prime(self) -> bool:
        return self.kind == PRIME

    @property
    def characteristic(self) -> int:
        return self.modulus if self.kind == PRIME else 0

    # -- raw value arithmetic -------------------------------------------------

    @property
    def zero(self):
        return 0 if self.kind == PRIME else Fraction(0)

    @property
    def one(self):
        return 1 if self.kind == PRIME else Fraction(1)

    def coerce(self, x):
        """Bring an int, Fraction, Scalar or text into canonical raw form."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldError(f"scalar from {x.field} used in {self}")
            return x.value
        if isinstance(x, str):
            return self.parse_value(x)
        if isinstance(x, bool):
            x = int(x)
        if self.kind == PRIME:
            if isinstance(x, int):
                return x % self.modulus
            if isinstance(x, Fraction):
                if x.denominator % self.modulus == 0:
                    raise FieldError(f"{x} has no image in {self}")
                return x.numerator * pow(x.denominator, -1, self.modulus) % self.modulus
        else:
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
        raise FieldError(f"cannot interpret {x!r} as an element of {self}")

    def parse_value(self, text: str):
        if self.kind == PRIME:
            if not _INT_RE.match(text):
                raise FieldError(f"bad {self} element {text!r}; expected a decimal integer")
            return int(text) % self.modulus
        m = _QQ_RE.match(text)
        if not m:
            raise FieldError(f"bad rational {text!r}; expected 'a' or 'a/b'")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise FieldError(f"zero denominator in {text!r}")
        return Fraction(num, den)

    def format_value(self, x) -> str:
        return str(x)

    def add(self, a, b):
        if self.kind == PRIME:
            return (a + b) % self.modulus
        return a + b

    def sub(self, a, b):
        if self.kind == PRIME:
            return (a - b) % self.modulus
        return a - b

    def neg(self, a):
        if self.kind == PRIME:
            return -a % self.modulus
        return -a

    def mul(self, a, b):
        if self.kind == PRIME:
            return a * b % self.modulus
        return a * b

    def inv(self, a):
        if not a:
            raise FieldError("inverse of zero")
        if self.kind == PRIME:
            return pow(a, -1, self.modulus)
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    # row kernels used by elimination; rows are lists of raw values

    def axpy(self, target, factor, source):
        """``target - factor * source`` elementwise."""
        if self.kind == PRIME:
            p = self.modulus
            return [(t - factor * s) % p for t, s in zip(target, source)]
        return [t - factor * s if s else t for t, s in zip(target, source)]

    def scale(self, row, factor):
        if self.kind == PRIME:
            p = self.modulus
            return [x * factor % p for x in row]
        return [x * factor for x in row]

    def dot(self, u, v):
        s = sum(a * b for a, b in zip(u, v) if a and b)
        if self.kind == PRIME:
            return s % self.modulus
        return Fraction(s)

    # -- enumeration and sampling --------------------------------------------

    def elements(self) -> Iterator[int]:
        if self.kind != PRIME:
            raise FieldError("QQ is infinite and cannot be enumerated")
        return iter(range(self.modulus))

    def random(self, rng, nonzero: bool = False):
        """Uniform over GF(p); over QQ numerator in [-9, 9], denominator in [-9, 9]\\{0}."""
        if self.kind == PRIME:
            lo = 1 if nonzero else 0
            return rng.randrange(lo, self.modulus)
        while True:
            num = rng.randint(-9, 9)
            if num or not nonzero:
                break
        den = 0
        while den == 0:
            den = rng.randint(-9, 9)
        return Fraction(num, den)

    def __call__(self, x) -> "Scalar":
        return Scalar(self, self.coerce(x))


QQ = FieldSpec(RATIONALS)


def GF(p: int) -> FieldSpec:
    return FieldSpec(PRIME, p)


class Scalar:
    """A field element bound to its field.

    Arithmetic between scalars of different fields raises :class:`FieldError`.
    Plain ints and Fractions are promoted into the scalar's field.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", field.coerce(value))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldError(f"cannot combine {self.field} and {other.field} scalars")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if not b:
            raise FieldError("division by zero")
        return Scalar(self.field, self.field.div(self.value, b))

    def __rtruediv__(self, other):
        return Scalar(self.field, self._other(other)) / self

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.coerce(other)
        except FieldError:
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return self.field.format_value(self.value)

    def __repr__(self):
        return f"Scalar({self.field}, {self})"


ScalarLike = Union[Scalar, int, Fraction, str]


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Apply ``op`` in {'add', 'sub', 'mul', 'div'} to two same-field scalars."""
    if not isinstance(a, Scalar) or not isinstance(b, Scalar):
        raise TypeError("scalar_arith expects Scalar operands")
    if a.field != b.field:
        raise FieldError(f"field mismatch: {a.field} vs {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def scalar_inverse(a: Scalar) -> Scalar:
    return a.inverse()
