from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from linrel import GF, QQ, Matrix
from linrel import relation as rel

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FIELDS = [QQ, GF(2), GF(3), GF(5), GF(7)]
fields = st.sampled_from(FIELDS)
prime_fields = st.sampled_from([GF(2), GF(3), GF(5)])


def scalars(field):
    if field.is_prime:
        return st.integers(0, field.modulus - 1)
    # small entries, zero-heavy so that low ranks show up
    return st.one_of(st.just(Fraction(0)),
                     st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3)))


@st.composite
def matrices(draw, field=None, rows=None, cols=None, max_dim=4):
    field = field or draw(fields)
    rows = draw(st.integers(0, max_dim)) if rows is None else rows
    cols = draw(st.integers(0, max_dim)) if cols is None else cols
    data = [[draw(scalars(field)) for _ in range(cols)] for _ in range(rows)]
    return Matrix(field, data, cols)


@st.composite
def relations(draw, field=None, m=None, n=None, max_dim=3):
    field = field or draw(fields)
    m = draw(st.integers(0, max_dim)) if m is None else m
    n = draw(st.integers(0, max_dim)) if n is None else n
    gens = draw(matrices(field, draw(st.integers(0, m + n)), m + n))
    return rel.from_subspace_basis(field, m, n, gens)


@st.composite
def cospans(draw, field=None, max_dim=4):
    field = field or draw(fields)
    k = draw(st.integers(0, max_dim))
    a = draw(matrices(field, k, draw(st.integers(0, max_dim))))
    b = draw(matrices(field, k, draw(st.integers(0, max_dim))))
    return a, b


def sympy_matrix(m):
    import sympy

    return sympy.Matrix(m.nrows, m.ncols, [sympy.Rational(x.numerator, x.denominator)
                                           for row in m.data for x in row])
