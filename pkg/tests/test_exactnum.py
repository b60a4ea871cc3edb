from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonresonance.errors import FieldMismatchError, ShapeError, UndefinedRootSetError
from nonresonance.exactnum import (
    ANY_INTEGER,
    NONNEG_INTEGER,
    CycloMatrix,
    QMatrix,
    QPolynomial,
    as_rational,
    charpoly,
    cyclotomic_field,
    cyclotomic_polynomial,
    format_rational,
    integer_roots,
    parse_rational,
    rank,
    rank_and_kernel,
)


def naive_rank(rows) -> int:
    # textbook Gauss-Jordan over Fraction, first nonzero pivot
    M = [[Fraction(x) for x in r] for r in rows]
    r = 0
    cols = len(M[0]) if M else 0
    for c in range(cols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
    return r


def poly(*coeffs):
    return QPolynomial(Fraction(c) for c in coeffs)


@pytest.mark.parametrize("token,value", [("3", Fraction(3)), ("-2/4", Fraction(-1, 2)), ("0", Fraction(0)), ("7/1", Fraction(7))])
def test_parse_rational(token, value):
    assert parse_rational(token) == value


@pytest.mark.parametrize("token", ["1.5", "1/0", "", "1 /2", "a", "--1", "1/-2"])
def test_parse_rational_rejects(token):
    with pytest.raises(ValueError):
        parse_rational(token)


def test_format_round_trip():
    for q in (Fraction(-7, 3), Fraction(5), Fraction(0)):
        assert parse_rational(format_rational(q)) == q
    assert format_rational(Fraction(4, 2)) == "2"


def test_floats_refused():
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_rank_identity_and_zero():
    assert rank_and_kernel(QMatrix.identity(3)) == (3, [])
    r, ker = rank_and_kernel(QMatrix.zeros(2, 2))
    assert r == 0 and len(ker) == 2


def test_rank_kernel_small():
    M = QMatrix([[1, 2], [2, 4]])
    r, ker = rank_and_kernel(M)
    assert r == 1
    (v,) = ker
    assert v[0] / v[1] == -2
    assert (M @ QMatrix([[x] for x in v])).is_zero()


small_matrices = st.integers(1, 5).flatmap(
    lambda rows: st.integers(1, 5).flatmap(
        lambda cols: st.lists(st.lists(st.integers(-4, 4), min_size=cols, max_size=cols), min_size=rows, max_size=rows)
    )
)


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_bareiss_matches_naive_elimination(rows):
    M = QMatrix(rows)
    r, ker = rank_and_kernel(M)
    assert r == naive_rank(rows)
    assert r + len(ker) == M.cols
    for v in ker:
        assert (M @ QMatrix([[x] for x in v])).is_zero()
    if ker:
        assert naive_rank([list(v) for v in ker]) == len(ker)


def test_charpoly_examples():
    assert charpoly(QMatrix([[5]])) == poly(-5, 1)
    assert charpoly(QMatrix([[0, 1], [-1, 0]])) == poly(1, 0, 1)
    assert charpoly(QMatrix.zeros(2, 2)) == poly(0, 0, 1)
    with pytest.raises(ShapeError):
        charpoly(QMatrix([[1, 2]]))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_cayley_hamilton(rows):
    M = QMatrix(rows)
    p = charpoly(M)
    assert p.degree == M.rows and p.leading() == 1
    assert p(M).is_zero()


def test_integer_roots_examples():
    assert integer_roots(poly(1, 0, 1), ANY_INTEGER) == []
    assert integer_roots(poly(0, -1, 1), NONNEG_INTEGER) == [0, 1]
    # (t + 2)(t - 1/2) = t^2 + 3/2 t - 1
    assert integer_roots(poly(-1, Fraction(3, 2), 1), ANY_INTEGER) == [-2]
    with pytest.raises(UndefinedRootSetError):
        integer_roots(QPolynomial(), ANY_INTEGER)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-12, 12), min_size=1, max_size=4), st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=3), max_size=2))
def test_integer_roots_are_exact_and_nested(int_roots, other_roots):
    p = poly(1)
    for r in list(int_roots) + list(other_roots):
        p = p * poly(-r, 1)
    anyz = integer_roots(p, ANY_INTEGER)
    nonneg = integer_roots(p, NONNEG_INTEGER)
    assert set(nonneg) <= set(anyz)
    assert all(x >= 0 for x in nonneg)
    assert set(int_roots) <= set(anyz)
    for r in anyz:
        assert p(Fraction(r)) == 0
    expected = set(int_roots) | {int(r) for r in other_roots if r.denominator == 1}
    assert set(anyz) == expected


@pytest.mark.parametrize("d,coeffs", [(1, (-1, 1)), (2, (1, 1)), (4, (1, 0, 1)), (6, (1, -1, 1)), (12, (1, 0, -1, 0, 1))])
def test_cyclotomic_polynomials(d, coeffs):
    assert cyclotomic_polynomial(d) == poly(*coeffs)
    assert cyclotomic_field(d).degree == len(coeffs) - 1


def test_cyclotomic_rejects_zero():
    with pytest.raises(ValueError):
        cyclotomic_field(0)


@pytest.mark.parametrize("d", [1, 2, 3, 5, 6, 8, 9, 10])
def test_generator_has_order_d(d):
    F = cyclotomic_field(d)
    z = F.gen()
    assert F.power_of_gen(d) == F.one()
    # Phi_d evaluated at the generator reduces to zero
    acc = F.zero()
    for i, c in enumerate(cyclotomic_polynomial(d).coeffs):
        acc = acc + F.element([c]) * F.power_of_gen(i)
    assert acc.is_zero()
    for e in range(1, d):
        assert F.power_of_gen(e) != F.one()
    if d > 1:
        assert (z - F.one()) * (z - F.one()).inverse() == F.one()


def test_cyclo_inverse_and_laurent():
    F = cyclotomic_field(5)
    x = F.from_laurent({-1: 2, 3: 1})
    assert x * x.inverse() == F.one()
    assert F.from_laurent({-1: 1}) == F.power_of_gen(4)


def test_cyclo_matrix_rank_and_field_mismatch():
    F = cyclotomic_field(3)
    z = F.gen()
    M = CycloMatrix([[F.one(), z], [z, z * z]])
    assert rank_and_kernel(M)[0] == 1
    G = cyclotomic_field(4)
    with pytest.raises(FieldMismatchError):
        CycloMatrix([[F.one(), G.one()]])


def test_rank_helper_on_wide_matrix():
    assert rank(QMatrix([[1, 0, 0, 0], [0, 0, 0, 0]])) == 1
