from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, example, given, settings
from hypothesis import strategies as st

from adestringy.exactalg import (
    ONE,
    W,
    ZERO,
    PolyParseError,
    Polynomial,
    RationalFunction,
    _kronecker_mul,
    cyclotomic,
    geom_sum,
    monomial,
    parse_polynomial,
    poly_arith,
    poly_gcd,
    rf_arith,
    rf_as_polynomial,
    rf_dual,
    rf_limit_at_one,
    rf_make,
)

from conftest import nonzero_polys, polys

_w = sympy.Symbol("w")


def to_sympy(p: Polynomial) -> sympy.Poly:
    return sympy.Poly(list(reversed(p.coeffs)) or [0], _w, domain="ZZ")


def from_sympy(p: sympy.Poly) -> Polynomial:
    return Polynomial(reversed([int(c) for c in p.all_coeffs()]))


# -- polynomials -----------------------------------------------------------

def test_poly_examples():
    assert poly_arith(W - 1, W + 1, "mul") == W**2 - 1
    p = W**3 - 4
    assert poly_arith(p, ZERO, "add") == p
    assert poly_arith(W**2 + W, W**2 + W, "sub").is_zero()
    with pytest.raises(ValueError):
        poly_arith(p, p, "div")


def test_zero_has_no_degree():
    assert ZERO.degree is None
    assert Polynomial([0, 0, 0]) == ZERO
    assert Polynomial([1, 2, 0, 0]).degree == 1


def test_geom_sum_examples():
    assert geom_sum(1) == ONE
    assert geom_sum(3) == W**2 + W + 1
    assert geom_sum(4)(1) == 4
    with pytest.raises(ValueError):
        geom_sum(0)


@pytest.mark.parametrize("a", range(1, 65))
def test_geom_sum_telescopes(a):
    assert (geom_sum(a) * (W - 1) + 1 - monomial(a)).is_zero()


@pytest.mark.parametrize("n", range(1, 40))
def test_cyclotomic_factorization(n):
    prod = ONE
    for d in range(1, n + 1):
        if n % d == 0:
            prod = prod * cyclotomic(d)
    assert prod == monomial(n) - 1


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p + q == q + p
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert p - p == ZERO


@given(polys, nonzero_polys)
def test_exact_division_cancels(p, q):
    assert (p * q).exact_div(q) == p


@given(polys, nonzero_polys)
@example(Polynomial([1, 0, 1]), Polynomial([0, -1]))
def test_pseudo_remainder_matches_sympy(p, q):
    assume(q.degree is not None and (p.is_zero() or p.degree >= q.degree))
    expected = sympy.prem(to_sympy(p), to_sympy(q))
    assert to_sympy(p.pseudo_rem(q)) == expected


@given(polys, polys)
def test_gcd_matches_sympy(p, q):
    assume(not (p.is_zero() and q.is_zero()))
    g = poly_gcd(p, q)
    expected = from_sympy(sympy.gcd(to_sympy(p), to_sympy(q)))
    assert g == expected


@settings(max_examples=30)
@given(st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=80),
       st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=80))
def test_kronecker_matches_convolution(a, b):
    naive = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            naive[i + j] += x * y
    assert Polynomial(_kronecker_mul(tuple(a), tuple(b))) == Polynomial(naive)


def test_large_products_use_the_fast_path_correctly():
    p = geom_sum(120) * 3 - W**7
    q = geom_sum(90) + W**89 * 5
    assert (p * q).exact_div(q) == p


def test_division_by_non_divisor_raises():
    with pytest.raises(ArithmeticError):
        (W**2 + 1).exact_div(2 * W + 1)


def test_rendering():
    p = W**3 + 5 * W**2 - W - 2
    assert p.to_text() == "w^3 + 5w^2 - w - 2"
    assert p.to_latex() == "w^{3}+5w^{2}-w-2"
    assert ZERO.to_text() == "0"
    assert Polynomial.from_json(p.to_json()) == p


# -- parsing ---------------------------------------------------------------

@pytest.mark.parametrize("text", [
    "w^3 + 5w^2 - w - 2",
    "w**3+5*w**2-w-2",
    "  -2 - w + 5 w^{2} + w^3\n",
    '["-2", "-1", "5", "1"]',
    "[-2, -1, 5, 1]",
])
def test_parse_polynomial_forms(text):
    assert parse_polynomial(text) == W**3 + 5 * W**2 - W - 2


@given(polys)
def test_parse_inverts_rendering(p):
    assert parse_polynomial(p.to_text()) == p


@pytest.mark.parametrize("text, line, column", [
    ("w^3 + 5w^^2", 1, 10),
    ("w + 1\n+ x", 2, 3),
    ("[1, 2,", 1, 7),
])
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(PolyParseError) as info:
        parse_polynomial(text)
    assert (info.value.line, info.value.column) == (line, column)


# -- rational functions ----------------------------------------------------

def test_rf_make_examples():
    f = rf_make(W**2 - 1, W - 1)
    assert (f.num, f.den) == (W + 1, ONE)
    g = rf_make(2 * W - 2, 2)
    assert (g.num, g.den) == (W - 1, ONE)
    h = rf_make((W**3 + 2 * W**5 + W**7) * (W - 1), W**7 - 1)
    assert ((monomial(7) - 1).divmod_exact(h.den))[1].is_zero()
    with pytest.raises(ZeroDivisionError):
        rf_make(W, ZERO)


def test_rf_make_sign_convention():
    f = rf_make(W, 1 - W)
    assert f.den.leading > 0
    assert f == rf_make(-W, W - 1)


def test_rf_arith_examples():
    f = rf_make(W + 3, W**2 + 1)
    assert rf_arith(f, 0, "add") == f
    assert rf_arith(rf_make(W - 1, W**3 - 1), rf_make(W**3 - 1, W - 1), "mul") == RationalFunction(1)
    d4 = rf_arith(1, rf_make((W - 1) * (W**3 + 2 * W**5 + W**7), W**7 - 1), "add")
    assert d4.den == geom_sum(7)
    assert d4.num == W**7 + W**6 + 3 * W**5 + W**4 + 2 * W**3 + W**2 + W + 1


@given(polys, nonzero_polys, st.integers(-50, 50).filter(bool))
def test_rf_make_ignores_common_scalars(p, q, a):
    assert rf_make(a * p, a * q) == rf_make(p, q)


@given(polys, nonzero_polys, polys, nonzero_polys)
def test_field_operations(p, q, r, s):
    f, g = rf_make(p, q), rf_make(r, s)
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) - g == f
    if not g.is_zero():
        assert (f * g) / g == f


def test_rf_as_polynomial():
    assert rf_as_polynomial(rf_make(2 * W + 1, 1)) == 2 * W + 1
    assert rf_as_polynomial(rf_make(W**4 - 1, W**3 - 1)) is None
    assert rf_as_polynomial(RationalFunction(0)) == ZERO


def test_limit_at_one_examples():
    assert rf_limit_at_one(rf_make(W**4 - 1, W**3 - 1)) == Fraction(4, 3)
    assert rf_limit_at_one(RationalFunction(2 * W + 1)) == 3
    d4 = 1 + rf_make((W - 1) * (W**3 + 2 * W**5 + W**7), W**7 - 1)
    assert rf_limit_at_one(d4) == Fraction(11, 7)
    with pytest.raises(ValueError):
        rf_limit_at_one(rf_make(1, W - 1))


@pytest.mark.parametrize("a", range(1, 33))
def test_limit_of_geometric_ratio(a):
    for b in range(1, 33):
        assert rf_limit_at_one(rf_make(geom_sum(a), geom_sum(b))) == Fraction(a, b)


def test_dual_examples():
    E = W**3 + 5 * W**2 + 5 * W + 1
    assert rf_dual(RationalFunction(E), 3) == E
    assert rf_dual(RationalFunction(1), 5) == RationalFunction(monomial(5))
    assert rf_dual(RationalFunction(W + 1), 3) == RationalFunction(W**3 + W**2)


@given(polys, nonzero_polys, st.integers(0, 3))
def test_dual_is_an_involution(p, q, extra):
    f = rf_make(p, q)
    d = max(f.num.degree or 0, f.den.degree) + extra
    assert rf_dual(rf_dual(f, d), d) == f


def test_json_round_trip():
    f = rf_make(W**4 - 1, W**3 - 1)
    assert RationalFunction.from_json(f.to_json()) == f
    assert f.to_text() == "(w^3 + w^2 + w + 1)/(w^2 + w + 1)"
    assert f.to_latex() == "\\frac{w^{3}+w^{2}+w+1}{w^{2}+w+1}"
