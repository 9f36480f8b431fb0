"""
Modular Arithmetic
p-adic valuations, multiplicative orders via the lifting-the-exponent shortcut,
roots mod p, Hensel lifting and the split-prime scan.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
import sympy

import config
from console import say
from errors import InputError, ScanCapExceeded
from intpoly import IntPoly, discriminant

SCAN_CHUNK = 4096  # residues per worker task in the parallel scan


def _require_odd_prime(p: int):
    if p < 3 or not sympy.isprime(p):
        raise InputError(f"{p} is not an odd prime")


def vp(m: int, p: int) -> int:
    """Exponent of the largest power of p dividing m"""
    if m == 0:
        raise InputError("vp(0) is undefined")
    if p < 2:
        raise InputError(f"Bad prime {p}")
    m = abs(m)
    count = 0
    while m % p == 0:
        m //= p
        count += 1
    return count


@dataclass(frozen=True)
class OrderProfile:
    """d = order of a mod p, t = v_p(a^d - 1)"""

    a: int
    p: int
    d: int
    t: int

    def order(self, k: int) -> int:
        return self.d * self.p ** max(0, k - self.t)

    def to_json(self) -> Dict:
        return {"a": self.a, "p": self.p, "d": self.d, "t": self.t}


def order_profile(a: int, p: int) -> OrderProfile:
    _require_odd_prime(p)
    if a % p == 0:
        raise InputError(f"{a} is divisible by {p}")
    if abs(a) == 1:
        raise InputError("a = +-1 has no finite lifting exponent")
    d = next(q for q in sympy.divisors(p - 1) if pow(a, q, p) == 1)
    # a^d != 1 because |a| != 1, so the loop stops
    t = 1
    while pow(a, d, p ** (t + 1)) == 1:
        t += 1
    return OrderProfile(a=a, p=p, d=d, t=t)


def mult_order(a: int, p: int, k: int) -> int:
    """Order of a mod p^k as d * p^max(0, k - t)"""
    if k < 1:
        raise InputError("k must be positive")
    return order_profile(a, p).order(k)


def roots_mod_p(f: IntPoly, p: int) -> List[int]:
    """All x in [0, p) with f(x) = 0 mod p, by vectorized Horner evaluation"""
    if p >= config.ROOT_SCAN_CAP:
        raise InputError(f"p = {p} exceeds the root scan cap {config.ROOT_SCAN_CAP}")
    if p < 2:
        raise InputError(f"Bad prime {p}")
    if f.is_zero:
        raise InputError("Every residue is a root of the zero polynomial")
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(f.coeffs):
        acc = (acc * xs + (c % p)) % p
    return [int(x) for x in np.flatnonzero(acc == 0)]


@dataclass(frozen=True)
class SplitPrimeCert:
    """p with n distinct nonzero roots of f and the nondivisibility witnesses"""

    p: int
    roots: Tuple[int, ...]
    disc: int
    f0: int

    def verify(self, f: IntPoly) -> bool:
        p = self.p
        if len(self.roots) != f.degree or len(set(r % p for r in self.roots)) != len(self.roots):
            return False
        if any(r % p == 0 for r in self.roots):
            return False
        if self.disc % p == 0 or self.f0 % p == 0:
            return False
        expanded = IntPoly((f.lc,))
        for r in self.roots:
            expanded = expanded * IntPoly((-r, 1))
        return expanded.mod(p) == f.mod(p)

    def to_json(self) -> Dict:
        return {"p": self.p, "roots": list(self.roots), "disc": self.disc, "f0": self.f0}


def _certify(coeffs: Tuple[int, ...], p: int, disc: int, f0: int) -> Optional[SplitPrimeCert]:
    f = IntPoly(coeffs)
    if (disc * f0) % p == 0 or f.lc % p == 0:
        return None
    roots = roots_mod_p(f, p)
    if len(roots) != f.degree or 0 in roots:
        return None
    return SplitPrimeCert(p=p, roots=tuple(roots), disc=disc, f0=f0)


def _scan_range(task) -> List[SplitPrimeCert]:
    coeffs, lo, hi, disc, f0 = task
    found = []
    for p in sympy.primerange(lo, hi):
        cert = _certify(coeffs, p, disc, f0)
        if cert is not None:
            found.append(cert)
    return found


def find_split_primes(f: IntPoly, count: int, p_min: int = config.DEFAULT_P_MIN,
                      scan_cap: Optional[int] = None, jobs: int = 1,
                      exclude: Tuple[int, ...] = ()) -> List[SplitPrimeCert]:
    """First `count` odd primes >= p_min where f splits into distinct nonzero roots"""
    if count < 1:
        raise InputError("count must be positive")
    if f.degree < 1:
        raise InputError("Split primes need degree >= 1")
    cap = scan_cap if scan_cap is not None else config.SCAN_CAP
    cap = min(cap, config.ROOT_SCAN_CAP - 1)
    lo = max(p_min, config.DEFAULT_P_MIN)
    disc = discriminant(f)
    f0 = f(0)
    found: List[SplitPrimeCert] = []

    if jobs <= 1:
        for p in sympy.primerange(lo, cap + 1):
            if p in exclude:
                continue
            cert = _certify(f.coeffs, p, disc, f0)
            if cert is not None:
                found.append(cert)
                if len(found) >= count:
                    break
    else:
        say(f"🔎 Scanning split primes for {f} with {jobs} workers", "cyan")
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            start = lo
            while start <= cap and len(found) < count:
                tasks = []
                for i in range(jobs):
                    a = start + i * SCAN_CHUNK
                    b = min(a + SCAN_CHUNK, cap + 1)
                    if a < b:
                        tasks.append((f.coeffs, a, b, disc, f0))
                for part in pool.map(_scan_range, tasks):
                    found.extend(c for c in part if c.p not in exclude)
                start += jobs * SCAN_CHUNK
        found = sorted(found, key=lambda c: c.p)

    if len(found) < count:
        raise ScanCapExceeded(
            f"No split prime found below cap {cap} for {f} "
            f"(wanted {count}, found {len(found)})", cap=cap)
    return found[:count]


def hensel_lift(f: IntPoly, p: int, root: int, k: int) -> int:
    """Lift a simple nonzero root mod p to a root mod p^k"""
    _require_odd_prime(p)
    if k < 1:
        raise InputError("k must be positive")
    if f(root) % p:
        raise InputError(f"{root} is not a root of {f} mod {p}")
    if root % p == 0:
        raise InputError("Zero root cannot be lifted into a unit")
    fprime = f.derivative()
    if fprime(root) % p == 0:
        raise InputError(f"Derivative of {f} vanishes at {root} mod {p} (not a simple root)")

    x = root % p
    for level in range(1, k):
        value = f(x)
        if value % p ** (level + 1) == 0:
            continue
        # f(x) = p^level * r with p not dividing r
        r = value // p ** level
        s = (-r * pow(fprime(x), -1, p)) % p
        x += s * p ** level
    return x % p ** k
