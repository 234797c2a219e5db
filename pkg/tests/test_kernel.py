import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from trihw.kernel import (GF, QQ, FieldError, LaurentPoly, NoSolution, RationalFunction,
                          Singular, Subspace, cyclotomic, cyclotomic_polynomial,
                          field_from_descriptor, identity_rows, inverse_rows, kernel_rows,
                          laurent_matmul, laurentMatrixInverse, matmul, matvec, rank,
                          rational_matmul, solve_rows, to_rational_matrix)

FIELDS = [QQ, GF(2), GF(3), GF(5), cyclotomic(3), cyclotomic(4), cyclotomic(5)]
FIELD_IDS = [F.descriptor for F in FIELDS]


def elements(F):
    return st.integers(0, 2**32).map(lambda s: F.random(random.Random(s)))


@st.composite
def field_and_elems(draw, k=3):
    F = draw(st.sampled_from(FIELDS))
    return F, [draw(elements(F)) for _ in range(k)]


@st.composite
def field_and_matrix(draw, max_n=4):
    F = draw(st.sampled_from(FIELDS))
    m = draw(st.integers(1, max_n))
    n = draw(st.integers(1, max_n))
    rows = [[draw(elements(F)) for _ in range(n)] for _ in range(m)]
    return F, rows, n


@given(field_and_elems())
def test_field_ring_axioms(data):
    F, (a, b, c) = data
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.add(a, F.zero) == a and F.mul(a, F.one) == a
    assert F.is_zero(F.add(a, F.neg(a)))
    assert F.sub(a, b) == F.add(a, F.neg(b))


@given(field_and_elems(1))
def test_field_inverse(data):
    F, (a,) = data
    if F.is_zero(a):
        with pytest.raises((ZeroDivisionError, FieldError)):
            F.inv(a)
    else:
        assert F.is_one(F.mul(a, F.inv(a)))
        assert F.div(a, a) == F.one


@given(field_and_elems(1))
def test_format_parse_round_trip(data):
    F, (a,) = data
    assert F.parse(F.format(a)) == a


@pytest.mark.parametrize("desc", ["Q", "Fp:7", "Cyclotomic:6"])
def test_descriptor_round_trip(desc):
    assert field_from_descriptor(desc).descriptor == desc


@pytest.mark.parametrize("bad", ["R", "Fp:x", "Cyclotomic:", "Fp:4"])
def test_bad_descriptor(bad):
    with pytest.raises((FieldError, ValueError)):
        field_from_descriptor(bad)


@pytest.mark.parametrize("n,expected", [(1, (-1, 1)), (2, (1, 1)), (3, (1, 1, 1)),
                                        (4, (1, 0, 1)), (6, (1, -1, 1))])
def test_cyclotomic_polynomials(n, expected):
    assert tuple(int(c) for c in cyclotomic_polynomial(n)) == expected


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 8])
def test_zeta_has_exact_order(n):
    F = cyclotomic(n)
    z = F.zeta()
    acc = F.one
    for k in range(1, n + 1):
        acc = F.mul(acc, z)
        assert F.is_one(acc) == (k == n)


def test_prime_field_elements_and_parse():
    F = GF(5)
    assert list(F.elements()) == [0, 1, 2, 3, 4]
    assert F.parse("-1") == 4 and F.parse("1/2") == 3
    with pytest.raises(FieldError):
        QQ.elements()


# ------------------------------------------------------------ linear algebra


@given(field_and_matrix())
def test_rank_nullity(data):
    F, rows, n = data
    ker = kernel_rows(F, rows, n)
    assert rank(F, rows, n) + len(ker) == n
    for v in ker:
        assert all(F.is_zero(x) for x in matvec(F, rows, v))


@given(field_and_matrix())
def test_solve_finds_preimage(data):
    F, rows, n = data
    rng = random.Random(len(rows) * 31 + n)
    x = [F.random(rng) for _ in range(n)]
    b = matvec(F, rows, x)
    sol = solve_rows(F, rows, n, b)
    assert sol is not NoSolution
    assert tuple(matvec(F, rows, sol)) == tuple(b)


def test_solve_reports_no_solution():
    assert solve_rows(QQ, [[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]], 2,
                      [Fraction(1), Fraction(3)]) is NoSolution


@given(field_and_matrix())
def test_inverse(data):
    F, rows, n = data
    if len(rows) != n or rank(F, rows, n) != n:
        return
    inv = inverse_rows(F, rows)
    assert tuple(map(tuple, matmul(F, rows, inv))) == tuple(map(tuple, identity_rows(F, n)))


@given(field_and_matrix())
def test_subspace_canonical_and_intersection(data):
    F, rows, n = data
    S = Subspace(F, n, rows)
    T = Subspace(F, n, list(reversed(rows)))
    assert S == T
    assert S.dim == rank(F, rows, n)
    full = Subspace.full(F, n)
    assert S.intersect(full) == S
    assert S.intersect(Subspace.zero(F, n)).dim == 0
    for v in rows:
        assert S.contains(tuple(v))
    ann = S.annihilator()
    assert ann.dim + S.dim == n


# ------------------------------------------------------------ Laurent polynomials


laurents = st.dictionaries(st.integers(-4, 4), st.integers(-3, 3), max_size=4).map(LaurentPoly)


@given(laurents, laurents, laurents)
def test_laurent_ring(p, q, r):
    assert p * (q + r) == p * q + p * r
    assert (p * q) * r == p * (q * r)
    assert p + (-p) == LaurentPoly()
    assert (p * q).at_one() == p.at_one() * q.at_one()


@given(laurents, st.integers(-3, 3))
def test_laurent_shift_and_bar(p, n):
    assert p.shift(n) == p * LaurentPoly({n: 1})
    assert p.bar().bar() == p
    assert LaurentPoly.from_json(p.to_json()) == p


def test_laurent_matrix_inverse():
    one, t = LaurentPoly({0: 1}), LaurentPoly({1: 1})
    m = ((one, t), (LaurentPoly(), one))
    inv = laurentMatrixInverse(m)
    prod = rational_matmul(to_rational_matrix(m), inv)
    assert all(prod[i][j].to_laurent() == (one if i == j else LaurentPoly())
               for i in range(2) for j in range(2))
    assert laurentMatrixInverse(((one, one), (one, one))) is Singular
    assert laurent_matmul(m, ((one,), (one,))) == ((one + t,), (one,))


def test_rational_function_reduction():
    one = LaurentPoly({0: 1})
    f = RationalFunction.from_laurent(one + LaurentPoly({1: 1}))
    g = f * f.inverse()
    assert g.to_laurent() == one
