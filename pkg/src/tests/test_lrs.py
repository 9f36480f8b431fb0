import pytest
import sympy

import config as settings
from errors import InputError
from intlinalg import IntMatrix, companion
from intpoly import IntPoly
from lrs import (LrsSpec, induced_lrs, lrs_certificate, lrs_period_bruteforce,
                 lrs_period_profile, lrs_terms_mod, root_period_lcm)

# irreducible, no root-of-unity factor
FIXTURES = {
    "cat": IntPoly((1, -3, 1)),
    "golden": IntPoly((-1, -1, 1)),
    "sqrt2": IntPoly((-2, 0, 1)),
    "two": IntPoly((-2, 1)),
    "three": IntPoly((-3, 1)),
    "plastic": IntPoly((-1, -1, 0, 1)),
    "cbrt2": IntPoly((-2, 0, 0, 1)),
}


def period_law_cases(max_p, max_k, max_degree):
    for name, f in FIXTURES.items():
        if f.degree > max_degree:
            continue
        for p in sympy.primerange(3, max_p + 1):
            if f(0) % p == 0:
                continue
            for k in range(1, max_k + 1):
                yield name, f, p, k


def check_period_law(f, p, k):
    spec = LrsSpec(tuple(f.recurrence_coeffs()))
    _, Tk = lrs_period_profile(f, p, k)
    assert Tk == lrs_period_bruteforce(spec, p ** k), (str(f), p, k)


# ====================================================================== recurrences

def test_induced_recurrences(cat):
    spec = induced_lrs(cat)
    assert spec.coeffs == (-1, 3)
    assert spec.initial == (0, 1)
    assert induced_lrs(IntMatrix.from_rows([[2]])).coeffs == (2,)
    assert induced_lrs(companion(FIXTURES["plastic"])).coeffs == (1, 1, 0)


def test_terms_mod(cat):
    spec = induced_lrs(cat)
    assert lrs_terms_mod(spec, 11, 7) == [0, 1, 3, 8, 10, 0, 1]
    assert lrs_terms_mod(spec, 1, 4) == [0, 0, 0, 0]
    assert lrs_terms_mod(spec, 10 ** 6, 5) == [0, 1, 3, 8, 21]


def test_bruteforce_periods(cat):
    spec = induced_lrs(cat)
    assert lrs_period_bruteforce(spec, 11) == 5
    assert lrs_period_bruteforce(spec, 121) == 55
    assert lrs_period_bruteforce(LrsSpec((1,)), 7) == 1


@pytest.mark.parametrize("block", [1, 5, 7, 55])
def test_bruteforce_period_across_block_boundaries(monkeypatch, cat, block):
    monkeypatch.setattr(settings, "BRUTE_PERIOD_BLOCK", block)
    spec = induced_lrs(cat)
    assert lrs_period_bruteforce(spec, 121) == 55
    assert lrs_period_bruteforce(spec, 11) == 5


def test_bruteforce_rejects_shared_factor():
    with pytest.raises(InputError):
        lrs_period_bruteforce(LrsSpec((2,)), 4)


# ====================================================================== period law

def test_profile_of_cat_poly(cat_poly):
    profile, T3 = lrs_period_profile(cat_poly, 11, 3)
    assert (profile.T1, profile.t) == (5, 1)
    assert T3 == 605
    assert profile.to_json(2)["Tk"] == 55


def test_profile_below_the_lifting_exponent():
    f = IntPoly((-10, 1))
    profile, T2 = lrs_period_profile(f, 3, 2)
    assert (profile.T1, profile.t) == (1, 2)
    assert T2 == 1
    assert profile.period(3) == 3
    assert lrs_period_bruteforce(LrsSpec((10,)), 9) == 1
    assert lrs_period_bruteforce(LrsSpec((10,)), 27) == 3


@pytest.mark.parametrize("f, p", [
    (IntPoly((1, 0, 1)), 5),
    (IntPoly((3, -3, 1)), 3),
    (IntPoly((1, -3, 1)), 9),
])
def test_profile_rejects_bad_inputs(f, p):
    with pytest.raises(InputError):
        lrs_period_profile(f, p, 1)


def test_period_law_small_grid():
    for _, f, p, k in period_law_cases(13, 2, 3):
        check_period_law(f, p, k)


@pytest.mark.slow
def test_period_law_full_grid():
    for _, f, p, k in period_law_cases(31, 3, 3):
        check_period_law(f, p, k)


def test_tower_grows_by_one_or_p(cat_poly):
    profile, _ = lrs_period_profile(cat_poly, 11, 1)
    for k in range(1, 8):
        assert profile.period(k + 1) // profile.period(k) in (1, 11)


# ====================================================================== certificates

def test_certificate_examples(cat_poly):
    assert lrs_certificate(cat_poly, 11, 1, 5)
    assert not lrs_certificate(cat_poly, 11, 1, 4)
    with pytest.raises(InputError):
        lrs_certificate(cat_poly, 11, 1, 0)


def test_certificate_holds_exactly_on_multiples(cat_poly):
    for T in range(1, 131):
        assert lrs_certificate(cat_poly, 11, 2, T) == (T % 55 == 0)


def test_root_orders_recover_the_period(cat_poly, cat_cert):
    profile, _ = lrs_period_profile(cat_poly, cat_cert.p, 1)
    for k in (1, 2, 3):
        assert root_period_lcm(cat_poly, cat_cert, k) == profile.period(k)
