"""
Integer Polynomials

Exact arithmetic on integer polynomials, stored constant term first.
Characteristic polynomials are kept in standard form det(xI - A); the
recurrence-style coefficients c_i of  f(x) = x^n - c_{n-1}x^{n-1} - ... - c_0
are read off with IntPoly.recurrence_coeffs() and built with IntPoly.from_recurrence().
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations
from math import gcd, isqrt
from typing import List, Optional, Sequence, Tuple

import sympy

import config
from errors import InputError


def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _as_int(value):
    if isinstance(value, bool):
        raise InputError(f"Not an integer coefficient: {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    raise InputError(f"Not an integer coefficient: {value!r}")


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coeffs[i] is the coefficient of x^i"""

    coeffs: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(_as_int(c) for c in _strip(self.coeffs)))

    # ------------------------------------------------------------------ constructors
    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def from_recurrence(cls, cs: Sequence[int]) -> "IntPoly":
        """x^n - c_{n-1}x^{n-1} - ... - c_0 from (c_0, ..., c_{n-1})"""
        return cls(tuple(-c for c in cs) + (1,))

    # ------------------------------------------------------------------ properties
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return self.lc == 1

    def recurrence_coeffs(self) -> List[int]:
        """(c_0, ..., c_{n-1}) with f = x^n - sum c_i x^i"""
        if not self.is_monic:
            raise InputError(f"Recurrence coefficients need a monic polynomial, got {self}")
        return [-c for c in self.coeffs[:-1]]

    # ------------------------------------------------------------------ arithmetic
    def __add__(self, other):
        other = _coerce(other)
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (size - len(self.coeffs))
        b = other.coeffs + (0,) * (size - len(other.coeffs))
        return IntPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if self.is_zero or other.is_zero:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise InputError("Negative polynomial power")
        result = IntPoly((1,))
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __call__(self, value):
        """Horner evaluation, works for int and Fraction arguments"""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def content(self) -> int:
        return reduce(gcd, self.coeffs, 0)

    def primitive(self) -> "IntPoly":
        """Divide out the content, leading coefficient made positive"""
        if self.is_zero:
            return self
        c = self.content()
        if self.lc < 0:
            c = -c
        return IntPoly(tuple(x // c for x in self.coeffs))

    def mod(self, m: int) -> "IntPoly":
        return IntPoly(tuple(c % m for c in self.coeffs))

    def symmetric_mod(self, m: int) -> "IntPoly":
        half = m // 2
        return IntPoly(tuple((c % m) - m if (c % m) > half else c % m for c in self.coeffs))

    # ------------------------------------------------------------------ presentation
    def to_json(self) -> List[int]:
        return list(self.coeffs)

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                power = "x" if i == 1 else f"x^{i}"
                body = power if mag == 1 else f"{mag}{power}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


def _coerce(value) -> IntPoly:
    if isinstance(value, IntPoly):
        return value
    return IntPoly((value,))


# ====================================================================== division / gcd

def pseudo_divmod(a: IntPoly, b: IntPoly) -> Tuple[IntPoly, IntPoly]:
    """q, r with lc(b)^e * a = q*b + r, e = max(deg a - deg b + 1, 0)"""
    if b.is_zero:
        raise InputError("Division by the zero polynomial")
    if a.degree < b.degree:
        return IntPoly(), a
    e = a.degree - b.degree + 1
    q, r = IntPoly(), a
    while not r.is_zero and r.degree >= b.degree:
        s = IntPoly((0,) * (r.degree - b.degree) + (r.lc,))
        q = q * b.lc + s
        r = r * b.lc - s * b
        e -= 1
    scale = b.lc ** e
    return q * scale, r * scale


def _frac_divmod(a: List[Fraction], b: List[Fraction]):
    if not b:
        raise InputError("Division by the zero polynomial")
    r = list(a)
    db = len(b) - 1
    q = [Fraction(0)] * max(len(a) - db, 0)
    for i in range(len(a) - 1 - db, -1, -1):
        c = r[i + db] / b[-1]
        q[i] = c
        if c:
            for j in range(db + 1):
                r[i + j] -= c * b[j]
    return _strip(q), _strip(r[:db])


def rational_divmod(a: IntPoly, b: IntPoly) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
    """Quotient and remainder over Q, as Fraction coefficient tuples"""
    q, r = _frac_divmod([Fraction(c) for c in a.coeffs], [Fraction(c) for c in b.coeffs])
    return tuple(q), tuple(r)


def exact_quotient(a: IntPoly, b: IntPoly) -> Optional[IntPoly]:
    """a / b when b divides a in Z[x], else None"""
    q, r = rational_divmod(a, b)
    if r or any(c.denominator != 1 for c in q):
        return None
    return IntPoly(tuple(c.numerator for c in q))


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """gcd over Q as a primitive integer polynomial (primitive remainder sequence)"""
    a, b = a.primitive(), b.primitive()
    while not b.is_zero:
        _, r = pseudo_divmod(a, b)
        a, b = b, r.primitive()
    return a.primitive()


# ====================================================================== resultant / discriminant

def _frac_resultant(a: List[Fraction], b: List[Fraction]) -> Fraction:
    if not a or not b:
        return Fraction(0)
    da, db = len(a) - 1, len(b) - 1
    if db == 0:
        return b[0] ** da
    if da == 0:
        return a[0] ** db
    _, r = _frac_divmod(a, b)
    if not r:
        return Fraction(0)
    dr = len(r) - 1
    sign = -1 if (da * db) % 2 else 1
    return sign * b[-1] ** (da - dr) * _frac_resultant(b, r)


def resultant(a: IntPoly, b: IntPoly) -> int:
    value = _frac_resultant([Fraction(c) for c in a.coeffs], [Fraction(c) for c in b.coeffs])
    return int(value)


def discriminant(f: IntPoly) -> int:
    """(-1)^{n(n-1)/2} Res(f, f') / lc(f)"""
    n = f.degree
    if n < 1:
        raise InputError("Discriminant needs degree >= 1")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    value = Fraction(sign * resultant(f, f.derivative()), f.lc)
    return int(value)


# ====================================================================== arithmetic mod p (lists)

def _mod_strip(a, p):
    return _strip([c % p for c in a])


def _pm_add(a, b, p):
    size = max(len(a), len(b))
    return _mod_strip([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(size)], p)


def _pm_sub(a, b, p):
    size = max(len(a), len(b))
    return _mod_strip([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(size)], p)


def _pm_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _mod_strip(out, p)


def _pm_divmod(a, b, p):
    a, b = _mod_strip(a, p), _mod_strip(b, p)
    if not b:
        raise InputError("Division by the zero polynomial mod p")
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    r = list(a)
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1 - db, -1, -1):
        c = r[i + db] * inv % p
        q[i] = c
        if c:
            for j in range(db + 1):
                r[i + j] = (r[i + j] - c * b[j]) % p
    return _strip(q), _mod_strip(r[:db], p)


def _pm_monic(a, p):
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _pm_gcd(a, b, p):
    a, b = _mod_strip(a, p), _mod_strip(b, p)
    while b:
        a, b = b, _pm_divmod(a, b, p)[1]
    return _pm_monic(a, p)


def _pm_xgcd(a, b, p):
    """g, s, t with s*a + t*b = g (monic) mod p"""
    r0, r1 = _mod_strip(a, p), _mod_strip(b, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _pm_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _pm_sub(s0, _pm_mul(q, s1, p), p)
        t0, t1 = t1, _pm_sub(t0, _pm_mul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    scale = lambda v: [c * inv % p for c in v]
    return scale(r0), scale(s0), scale(t0)


def _pm_powmod(base, exponent, modulus, p):
    result = [1]
    base = _pm_divmod(base, modulus, p)[1]
    while exponent:
        if exponent & 1:
            result = _pm_divmod(_pm_mul(result, base, p), modulus, p)[1]
        base = _pm_divmod(_pm_mul(base, base, p), modulus, p)[1]
        exponent >>= 1
    return _pm_divmod(result, modulus, p)[1]


def _distinct_degree(f, p):
    found = []
    h = [0, 1]
    g = list(f)
    d = 0
    while len(g) - 1 >= 2 * (d + 1):
        d += 1
        h = _pm_powmod(h, p, g, p)
        factor = _pm_gcd(g, _pm_sub(h, [0, 1], p), p)
        if len(factor) > 1:
            found.append((factor, d))
            g = _pm_divmod(g, factor, p)[0]
            h = _pm_divmod(h, g, p)[1]
    if len(g) > 1:
        found.append((g, len(g) - 1))
    return found


def _equal_degree(f, d, p, rng):
    n = len(f) - 1
    if n == d:
        return [f]
    exponent = (p ** d - 1) // 2
    while True:
        a = _strip([rng.randrange(p) for _ in range(n)])
        if len(a) <= 1:
            continue
        b = _pm_sub(_pm_powmod(a, exponent, f, p), [1], p)
        g = _pm_gcd(f, b, p)
        if 0 < len(g) - 1 < n:
            other = _pm_divmod(f, g, p)[0]
            return _equal_degree(g, d, p, rng) + _equal_degree(other, d, p, rng)


def factor_mod_p(f: IntPoly, p: int) -> List[IntPoly]:
    """Monic irreducible factors of a squarefree f mod an odd prime p"""
    monic = _pm_monic(_mod_strip(f.coeffs, p), p)
    rng = random.Random(config.FACTOR_SEED * 1_000_003 + p)
    factors = []
    for block, d in _distinct_degree(monic, p):
        factors.extend(_equal_degree(block, d, p, rng))
    factors = sorted(factors, key=lambda c: (len(c), c))
    return [IntPoly(tuple(c)) for c in factors]


# ====================================================================== factorization over Q

def _mignotte_exponent(f: IntPoly, p: int) -> int:
    norm = isqrt(sum(c * c for c in f.coeffs)) + 1
    bound = 2 * abs(f.lc) * (2 ** f.degree) * norm
    a, power = 1, p
    while power <= bound:
        a += 1
        power *= p
    return a


def _lift_pair(F: IntPoly, G0: List[int], H0: List[int], p: int, a: int):
    _, s, t = _pm_xgcd(G0, H0, p)
    G, H = IntPoly(tuple(G0)), IntPoly(tuple(H0))
    pk = p
    for _ in range(1, a):
        nxt = pk * p
        err = (F - G * H).mod(nxt)
        e = _mod_strip([c // pk for c in err.coeffs], p)
        if e:
            dG = _pm_divmod(_pm_mul(t, e, p), G0, p)[1]
            dH = _pm_divmod(_pm_sub(e, _pm_mul(dG, H0, p), p), G0, p)[0]
            G = (G + IntPoly(tuple(dG)) * pk).mod(nxt)
            H = (H + IntPoly(tuple(dH)) * pk).mod(nxt)
        pk = nxt
    return G, H


def _hensel_lift_factors(f: IntPoly, factors: List[IntPoly], p: int, a: int) -> List[IntPoly]:
    modulus = p ** a
    lifted = []
    F = f
    remaining = [list(g.coeffs) for g in factors]
    while len(remaining) > 1:
        G0 = remaining.pop(0)
        H0 = [F.lc % p]
        for g in remaining:
            H0 = _pm_mul(H0, g, p)
        G, H = _lift_pair(F, G0, H0, p, a)
        lifted.append(G)
        F = H
    inv = pow(F.lc, -1, modulus)
    lifted.append((F * inv).mod(modulus))
    return lifted


def _recombine(f: IntPoly, lifted: List[IntPoly], modulus: int) -> List[IntPoly]:
    found = []
    remaining = list(lifted)
    F = f
    d = 1
    while 2 * d <= len(remaining):
        hit = None
        for subset in combinations(range(len(remaining)), d):
            candidate = IntPoly((F.lc,))
            for i in subset:
                candidate = (candidate * remaining[i]).mod(modulus)
            candidate = candidate.symmetric_mod(modulus).primitive()
            quotient = exact_quotient(F, candidate)
            if quotient is not None:
                hit = (subset, candidate, quotient)
                break
        if hit is None:
            d += 1
            continue
        subset, candidate, quotient = hit
        found.append(candidate)
        F = quotient.primitive()
        remaining = [g for i, g in enumerate(remaining) if i not in subset]
    if F.degree > 0:
        found.append(F.primitive())
    return found


def _factor_squarefree(f: IntPoly) -> List[IntPoly]:
    if f.degree <= 1:
        return [f]
    disc = discriminant(f)
    best = None
    tries = 0
    for p in sympy.primerange(3, 10**6):
        if f.lc % p == 0 or disc % p == 0:
            continue
        modular = factor_mod_p(f, p)
        if len(modular) == 1:
            return [f]
        if best is None or len(modular) < len(best[1]):
            best = (p, modular)
        tries += 1
        if tries >= config.FACTOR_PRIME_TRIES:
            break
    p, modular = best
    a = _mignotte_exponent(f, p)
    lifted = _hensel_lift_factors(f, modular, p, a)
    return _recombine(f, lifted, p ** a)


def factor_rational(f: IntPoly) -> List[Tuple[IntPoly, int]]:
    """Irreducible factors over Q (primitive, positive leading coefficient) with multiplicities"""
    if f.is_zero:
        raise InputError("Cannot factor the zero polynomial")
    if f.degree > config.FACTOR_DEGREE_CAP:
        raise InputError(f"Degree {f.degree} exceeds the factorization cap {config.FACTOR_DEGREE_CAP}")
    if f.degree == 0:
        return []
    f = f.primitive()
    square_part = poly_gcd(f, f.derivative())
    squarefree = exact_quotient(f, square_part).primitive()
    result = []
    for g in _factor_squarefree(squarefree):
        multiplicity, rest = 0, f
        while True:
            quotient = exact_quotient(rest, g)
            if quotient is None:
                break
            multiplicity += 1
            rest = quotient
        result.append((g, multiplicity))
    return sorted(result, key=lambda item: (item[0].degree, item[0].coeffs))


# ====================================================================== cyclotomic test

@lru_cache(maxsize=None)
def cyclotomic(m: int) -> IntPoly:
    poly = sympy.Poly(sympy.cyclotomic_poly(m, sympy.Symbol("x")))
    return IntPoly(tuple(int(c) for c in reversed(poly.all_coeffs())))


def has_root_of_unity_factor(f: IntPoly) -> Tuple[bool, Optional[int]]:
    """(True, m) for the least m with Phi_m | f, else (False, None)"""
    n = f.degree
    if n < 1:
        raise InputError("Root-of-unity test needs degree >= 1")
    # phi(m) >= sqrt(m/2) bounds every candidate by 2n^2
    for m in range(1, 2 * n * n + 1):
        if sympy.totient(m) > n:
            continue
        _, r = pseudo_divmod(f, cyclotomic(m))
        if r.is_zero:
            return True, m
    return False, None


# ====================================================================== quotient-ring powers

def reduce_quotient(a: IntPoly, modulus_poly: IntPoly, modulus_int: int) -> IntPoly:
    """a mod (modulus_int, modulus_poly) with coefficients in [0, modulus_int)"""
    n = modulus_poly.degree
    g = modulus_poly.coeffs
    r = [c % modulus_int for c in a.coeffs]
    for i in range(len(r) - 1, n - 1, -1):
        c = r[i]
        if c:
            for j in range(n + 1):
                r[i - n + j] = (r[i - n + j] - c * g[j]) % modulus_int
    return IntPoly(tuple(r[:n]))


def powmod_quotient(base: IntPoly, exponent: int, modulus_poly: IntPoly, modulus_int: int) -> IntPoly:
    """base^exponent in (Z/m)[x]/(g) by square-and-multiply"""
    if not modulus_poly.is_monic or modulus_poly.degree < 1:
        raise InputError(f"Quotient modulus must be monic of degree >= 1, got {modulus_poly}")
    if exponent < 0:
        raise InputError("Negative exponent")
    if modulus_int < 1:
        raise InputError("Integer modulus must be positive")
    result = reduce_quotient(IntPoly((1,)), modulus_poly, modulus_int)
    b = reduce_quotient(base, modulus_poly, modulus_int)
    while exponent:
        if exponent & 1:
            result = reduce_quotient(result * b, modulus_poly, modulus_int)
        b = reduce_quotient(b * b, modulus_poly, modulus_int)
        exponent >>= 1
    return result
