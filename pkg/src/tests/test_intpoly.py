import random
from fractions import Fraction

import pytest
import sympy

from errors import InputError
from intlinalg import IntMatrix, companion
from intpoly import (IntPoly, cyclotomic, discriminant, exact_quotient, factor_mod_p,
                     factor_rational, has_root_of_unity_factor, poly_gcd, powmod_quotient,
                     pseudo_divmod, rational_divmod, reduce_quotient)

X = sympy.Symbol("x")


def from_sympy(poly):
    return IntPoly(tuple(int(c) for c in reversed(sympy.Poly(poly, X).all_coeffs())))


def to_sympy(f: IntPoly):
    return sum(c * X ** i for i, c in enumerate(f.coeffs))


def random_poly(rng, degree, bound=9):
    coeffs = [rng.randint(-bound, bound) for _ in range(degree)]
    return IntPoly(tuple(coeffs) + (rng.choice([1, 2, 3, -1, -2]),))


# ====================================================================== basics

def test_coefficients_are_stripped_and_printed():
    f = IntPoly((1, -3, 1, 0, 0))
    assert f.coeffs == (1, -3, 1)
    assert f.degree == 2
    assert str(f) == "x^2 - 3x + 1"
    assert str(IntPoly()) == "0"


def test_recurrence_coefficients_round_trip(cat_poly):
    assert cat_poly.recurrence_coeffs() == [-1, 3]
    assert IntPoly.from_recurrence([-1, 3]) == cat_poly


def test_non_monic_has_no_recurrence_coefficients():
    with pytest.raises(InputError):
        IntPoly((1, 2)).recurrence_coeffs()


def test_product_of_linear_factors():
    assert IntPoly((-1, 1)) * IntPoly((1, 1)) == IntPoly((-1, 0, 1))


def test_non_integer_coefficients_are_rejected():
    with pytest.raises(InputError):
        IntPoly((1, 0.5))


# ====================================================================== division and gcd

def test_pseudo_division_example(cat_poly):
    q, r = pseudo_divmod(IntPoly((0, 0, 0, 1)), cat_poly)
    assert q == IntPoly((3, 1))
    assert r == IntPoly((-3, 8))


def test_pseudo_division_non_monic():
    q, r = pseudo_divmod(IntPoly((0, 0, 1)), IntPoly((1, 2)))
    assert q == IntPoly((-1, 2))
    assert r == IntPoly((1,))


def test_pseudo_division_identity():
    rng = random.Random(7)
    for _ in range(100):
        a = random_poly(rng, rng.randint(0, 6))
        b = random_poly(rng, rng.randint(1, 4))
        q, r = pseudo_divmod(a, b)
        e = max(a.degree - b.degree + 1, 0)
        assert a * b.lc ** e == q * b + r
        assert r.is_zero or r.degree < b.degree


def test_rational_division_identity():
    rng = random.Random(11)
    for _ in range(50):
        a = random_poly(rng, rng.randint(1, 6))
        b = random_poly(rng, rng.randint(1, 3))
        q, r = rational_divmod(a, b)
        assert len(r) <= b.degree
        for point in (Fraction(0), Fraction(1), Fraction(-2), Fraction(3, 7)):
            lhs = a(point)
            qv = sum(c * point ** i for i, c in enumerate(q))
            rv = sum(c * point ** i for i, c in enumerate(r))
            assert lhs == qv * b(point) + rv


def test_exact_quotient():
    f = IntPoly((-1, 0, 1))
    assert exact_quotient(f, IntPoly((-1, 1))) == IntPoly((1, 1))
    assert exact_quotient(f, IntPoly((1, 2))) is None


def test_gcd_with_derivative_is_one(cat_poly):
    assert poly_gcd(cat_poly, cat_poly.derivative()) == IntPoly((1,))


def test_gcd_detects_repeated_factor():
    g = IntPoly((1, 0, 1))
    f = g * g * IntPoly((-3, 1))
    assert poly_gcd(f, f.derivative()) == g


# ====================================================================== discriminant

def test_discriminant_examples(cat_poly):
    assert discriminant(cat_poly) == 5
    assert discriminant(IntPoly((1, 0, 1))) == -4
    assert discriminant(IntPoly((1, -2, 1))) == 0


@pytest.mark.parametrize("coeffs", [
    (1, -3, 1), (-1, -1, 0, 1), (2, 0, -3, 0, 1), (1, 2, 0, 5), (-7, 3, 2), (1, 1, 1, 1, 1),
])
def test_discriminant_agrees_with_sympy(coeffs):
    f = IntPoly(coeffs)
    assert discriminant(f) == int(sympy.discriminant(to_sympy(f), X))


@pytest.mark.parametrize("coeffs", [(1, -2, 1), (-1, 0, 1), (0, 0, 1, 1), (1, 0, 2, 0, 1)])
def test_zero_discriminant_iff_repeated_factor(coeffs):
    f = IntPoly(coeffs)
    repeated = poly_gcd(f, f.derivative()).degree > 0
    assert (discriminant(f) == 0) == repeated


# ====================================================================== factorization

def test_factor_mod_p_of_cat_poly(cat_poly):
    # x - 9 = x + 2 and x - 5 = x + 6 mod 11
    assert factor_mod_p(cat_poly, 11) == [IntPoly((2, 1)), IntPoly((6, 1))]


def test_irreducible_quartics_stay_whole():
    for f in (IntPoly((1, 0, 0, 0, 1)), IntPoly((1, 0, -10, 0, 1))):
        assert factor_rational(f) == [(f, 1)]


def test_factor_rational_examples(cat_poly):
    linear = IntPoly((-2, 1))
    assert factor_rational(cat_poly * linear) == [(linear, 1), (cat_poly, 1)]
    assert factor_rational(IntPoly((1, -2, 1))) == [(IntPoly((-1, 1)), 2)]


@pytest.mark.parametrize("expr", [
    (X ** 2 + 1) ** 2 * (X - 3) * (2 * X + 1),
    (X ** 4 + 3 * X ** 2 + 2),
    (X ** 3 - X - 1) * (X ** 2 - 3 * X + 1),
    (X - 1) ** 3 * (X + 2) ** 2,
    (2 * X + 1) * (3 * X - 2) * (X + 2) * (X - 3),
])
def test_factor_rational_agrees_with_sympy(expr):
    f = from_sympy(sympy.expand(expr))
    ours = factor_rational(f)
    _, theirs = sympy.Poly(sympy.expand(expr), X).factor_list()
    expected = sorted(((from_sympy(g.as_expr()).primitive(), e) for g, e in theirs),
                      key=lambda item: (item[0].degree, item[0].coeffs))
    assert ours == expected

    product = IntPoly((1,))
    for g, e in ours:
        product = product * g ** e
    assert product == f.primitive()


def test_factor_degree_cap():
    with pytest.raises(InputError):
        factor_rational(IntPoly((1,) * 10))


# ====================================================================== roots of unity

def test_cyclotomic_polynomials():
    assert cyclotomic(1) == IntPoly((-1, 1))
    assert cyclotomic(4) == IntPoly((1, 0, 1))
    assert cyclotomic(6) == IntPoly((1, -1, 1))


@pytest.mark.parametrize("coeffs, expected", [
    ((1, 0, 1), (True, 4)),
    ((1, -3, 1), (False, None)),
    ((-1, 1), (True, 1)),
    ((1, 1, 1), (True, 3)),
    ((1, 0, 0, 0, 1), (True, 8)),
    ((-2, 0, 1), (False, None)),
])
def test_root_of_unity_examples(coeffs, expected):
    assert has_root_of_unity_factor(IntPoly(coeffs)) == expected


@pytest.mark.parametrize("coeffs", [
    (1, 0, 1), (1, 1, 1), (-1, 1), (1, 1), (-1, 0, 1), (1, 2, 2, 1),
    (1, -3, 1), (-2, 0, 1), (-1, -1, 0, 1), (-2, 1), (-2, 0, 0, 1),
])
def test_root_of_unity_agrees_with_companion_powers(coeffs):
    # these fixtures are squarefree and have either only or no unity roots
    f = IntPoly(coeffs)
    C = companion(f)
    identity = IntMatrix.identity(f.degree)
    periodic = any(C.power(m) == identity for m in range(1, 13))
    assert has_root_of_unity_factor(f)[0] == periodic


# ====================================================================== quotient ring

def test_powers_of_x_in_quotient_ring(cat_poly):
    x = IntPoly.x()
    assert powmod_quotient(x, 5, cat_poly, 1331) == IntPoly((1310, 55))
    assert powmod_quotient(x, 5, cat_poly, 11) == IntPoly((1,))
    assert powmod_quotient(x, 1, cat_poly, 7) == x


def test_quotient_power_is_multiplicative(cat_poly):
    rng = random.Random(3)
    x = IntPoly.x()
    for _ in range(20):
        a, b, m = rng.randint(0, 200), rng.randint(0, 200), rng.choice([11, 121, 1000, 97])
        lhs = powmod_quotient(x, a + b, cat_poly, m)
        rhs = reduce_quotient(powmod_quotient(x, a, cat_poly, m) * powmod_quotient(x, b, cat_poly, m),
                              cat_poly, m)
        assert lhs == rhs


def test_quotient_needs_monic_modulus():
    with pytest.raises(InputError):
        powmod_quotient(IntPoly.x(), 3, IntPoly((1, 2)), 7)
