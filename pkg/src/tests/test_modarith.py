import random

import pytest
import sympy

from errors import InputError, ScanCapExceeded
from intpoly import IntPoly
from modarith import (find_split_primes, hensel_lift, mult_order, order_profile, roots_mod_p,
                      vp)


def brute_order(a, m):
    e, value = 1, a % m
    while value != 1:
        value = value * a % m
        e += 1
    return e


# ====================================================================== valuations and orders

def test_valuation_examples():
    assert vp(1210, 11) == 2
    assert vp(-27, 3) == 3
    assert vp(7, 5) == 0
    with pytest.raises(InputError):
        vp(0, 3)


def test_order_examples():
    assert mult_order(5, 11, 1) == 5
    assert mult_order(5, 11, 3) == 605
    assert mult_order(12, 11, 1) == 1
    assert mult_order(12, 11, 2) == 11


def test_order_profile_fields():
    profile = order_profile(10, 3)
    assert (profile.d, profile.t) == (1, 2)
    assert profile.order(2) == 1
    assert profile.order(3) == 3


@pytest.mark.parametrize("a, p", [(0, 5), (10, 5), (1, 7), (-1, 7), (3, 9), (3, 2)])
def test_order_rejects_bad_inputs(a, p):
    with pytest.raises(InputError):
        mult_order(a, p, 1)


def test_order_matches_brute_force_for_small_primes():
    for p in sympy.primerange(3, 20):
        for a in range(2, p):
            for k in (1, 2, 3):
                assert mult_order(a, p, k) == brute_order(a, p ** k), (a, p, k)


def test_order_matches_sympy_grid():
    for p in sympy.primerange(3, 50):
        for a in range(2, p):
            for k in (1, 2, 3):
                assert mult_order(a, p, k) == sympy.n_order(a, p ** k), (a, p, k)


def test_lifting_the_exponent_identity():
    rng = random.Random(2024)
    primes = list(sympy.primerange(3, 50))
    for _ in range(1000):
        p = rng.choice(primes)
        x = rng.randint(1, 10 ** 6)
        if x % p == 0:
            x += 1
        y = x + p * rng.choice([s for s in range(-50, 51) if s])
        k = rng.randint(1, 200)
        assert vp(x ** k - y ** k, p) == vp(x - y, p) + vp(k, p)


# ====================================================================== roots and split primes

def test_roots_mod_p(cat_poly):
    assert roots_mod_p(cat_poly, 11) == [5, 9]
    assert roots_mod_p(IntPoly((1, 0, 1)), 3) == []
    assert roots_mod_p(IntPoly((0, 1)), 7) == [0]


def test_roots_scan_cap(cat_poly):
    with pytest.raises(InputError):
        roots_mod_p(cat_poly, 2 ** 21)


def test_first_split_prime_of_cat_poly(cat_poly):
    cert = find_split_primes(cat_poly, 1)[0]
    assert cert.p == 11
    assert cert.roots == (5, 9)
    assert cert.disc == 5
    assert cert.f0 == 1
    assert cert.verify(cat_poly)


def test_split_primes_examples():
    assert [c.p for c in find_split_primes(IntPoly((1, 0, 1)), 2)] == [5, 13]
    assert [c.p for c in find_split_primes(IntPoly((-3, 1)), 1)] == [5]
    assert [c.p for c in find_split_primes(IntPoly((-2, 1)), 2)] == [3, 5]


def test_split_primes_honour_exclusions_and_floor(cat_poly):
    assert [c.p for c in find_split_primes(cat_poly, 2, exclude=(11,))] == [19, 29]
    assert [c.p for c in find_split_primes(cat_poly, 1, p_min=12)] == [19]


def test_split_primes_every_certificate_verifies():
    f = IntPoly((-1, -1, 0, 1))
    for cert in find_split_primes(f, 3):
        assert cert.verify(f)
        assert len(cert.roots) == 3
        assert all(f(r) % cert.p == 0 for r in cert.roots)


def test_forged_certificate_fails(cat_poly):
    cert = find_split_primes(cat_poly, 1)[0]
    forged = type(cert)(p=cert.p, roots=(5, 8), disc=cert.disc, f0=cert.f0)
    assert not forged.verify(cat_poly)


def test_parallel_scan_matches_serial(cat_poly):
    serial = find_split_primes(cat_poly, 4)
    parallel = find_split_primes(cat_poly, 4, jobs=2)
    assert serial == parallel


def test_scan_cap_exceeded():
    with pytest.raises(ScanCapExceeded) as info:
        find_split_primes(IntPoly((1, 0, 1)), 1, scan_cap=4)
    assert info.value.cap == 4
    assert isinstance(info.value, InputError)


# ====================================================================== Hensel lifting

def test_hensel_lift_examples(cat_poly):
    assert hensel_lift(cat_poly, 11, 5, 2) == 38
    assert hensel_lift(cat_poly, 11, 9, 2) == 86
    assert hensel_lift(cat_poly, 11, 5, 1) == 5


def test_hensel_tower_is_consistent(cat_poly):
    for root in (5, 9):
        previous = root
        for k in range(1, 11):
            lifted = hensel_lift(cat_poly, 11, root, k)
            assert cat_poly(lifted) % 11 ** k == 0
            assert lifted % 11 ** (k - 1) == previous % 11 ** (k - 1)
            previous = lifted
    assert hensel_lift(cat_poly, 11, 5, 6) % 11 != hensel_lift(cat_poly, 11, 9, 6) % 11


def test_hensel_rejects_repeated_root():
    f = IntPoly((-2, 1)) * IntPoly((-2, 1))
    with pytest.raises(InputError):
        hensel_lift(f, 11, 2, 2)


def test_hensel_rejects_non_root(cat_poly):
    with pytest.raises(InputError):
        hensel_lift(cat_poly, 11, 4, 2)
