"""
Linear Recurrence Sequences
The recurrence induced by a matrix, its terms mod m, brute-force periods and the
prime-power period law T_k = T_1 for k <= t, T_1 * p^(k-t) beyond.
"""

from dataclasses import dataclass
from functools import reduce
from math import gcd, lcm
from typing import Dict, List, Tuple

import numpy as np
import sympy

import config
from errors import InputError
from intlinalg import IntMatrix, char_poly
from intpoly import IntPoly, has_root_of_unity_factor, powmod_quotient, reduce_quotient
from modarith import SplitPrimeCert, hensel_lift, mult_order, vp


@dataclass(frozen=True)
class LrsSpec:
    """u_{k+n} = c_{n-1} u_{k+n-1} + ... + c_0 u_k, started at (0, ..., 0, 1)"""

    coeffs: Tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @property
    def initial(self) -> Tuple[int, ...]:
        return (0,) * (self.order - 1) + (1,)

    @property
    def polynomial(self) -> IntPoly:
        return IntPoly.from_recurrence(self.coeffs)

    def __str__(self):
        n = self.order
        terms = [f"{c}*u[k+{i}]" for i, c in enumerate(self.coeffs) if c]
        return f"u[k+{n}] = " + (" + ".join(reversed(terms)) if terms else "0")


def induced_lrs(A: IntMatrix) -> LrsSpec:
    return LrsSpec(tuple(char_poly(A).recurrence_coeffs()))


def _step(state, coeffs, m):
    nxt = sum(c * u for c, u in zip(coeffs, state)) % m
    return state[1:] + (nxt,)


def lrs_terms_mod(spec: LrsSpec, m: int, count: int) -> List[int]:
    if m < 1:
        raise InputError("Modulus must be positive")
    if count < spec.order:
        raise InputError(f"count must be at least the recurrence order {spec.order}")
    state = tuple(u % m for u in spec.initial)
    terms = list(state)
    while len(terms) < count:
        state = _step(state, spec.coeffs, m)
        terms.append(state[-1])
    return terms


def _shift_matrix(coeffs: Tuple[int, ...], m: int) -> np.ndarray:
    n = len(coeffs)
    S = np.zeros((n, n), dtype=np.int64)
    S[np.arange(n - 1), np.arange(1, n)] = 1
    S[-1] = [c % m for c in coeffs]
    return S


def _matrix_power_mod(S: np.ndarray, e: int, m: int) -> np.ndarray:
    result = np.eye(S.shape[0], dtype=np.int64)
    base = S % m
    while e:
        if e & 1:
            result = (result @ base) % m
        base = (base @ base) % m
        e >>= 1
    return result


def lrs_period_bruteforce(spec: LrsSpec, m: int) -> int:
    """
    Least T returning the state vector to the initial state.
    Every step is compared, a block of BRUTE_PERIOD_BLOCK consecutive states at a time.
    """
    if m < 1:
        raise InputError("Modulus must be positive")
    if m > config.BRUTE_PERIOD_CAP:
        raise InputError(f"Modulus {m} exceeds the brute-force cap {config.BRUTE_PERIOD_CAP}")
    if gcd(m, spec.coeffs[0]) != 1:
        raise InputError(f"Modulus {m} shares a factor with c_0 = {spec.coeffs[0]} "
                         "(sequence is only eventually periodic)")
    n, block = spec.order, config.BRUTE_PERIOD_BLOCK
    S = _shift_matrix(spec.coeffs, m)
    start = np.array(spec.initial, dtype=np.int64) % m

    # column j holds the state after j + 1 steps
    states = np.empty((n, block), dtype=np.int64)
    state = start
    for j in range(block):
        state = (S @ state) % m
        states[:, j] = state
    jump = _matrix_power_mod(S, block, m)

    done, limit = 0, m ** n
    while done < limit:
        hits = np.flatnonzero((states == start[:, None]).all(axis=0))
        if hits.size:
            return done + int(hits[0]) + 1
        states = (jump @ states) % m
        done += block
    raise InputError("State space exhausted without returning (not purely periodic)")


@dataclass(frozen=True)
class LrsProfile:
    f: IntPoly
    p: int
    T1: int
    t: int

    def period(self, k: int) -> int:
        if k < 1:
            raise InputError("k must be positive")
        return self.T1 if k <= self.t else self.T1 * self.p ** (k - self.t)

    def to_json(self, k: int) -> Dict:
        return {"p": self.p, "T1": self.T1, "t": self.t, "k": k, "Tk": self.period(k)}


def _check_profile_inputs(f: IntPoly, p: int):
    if p < 3 or not sympy.isprime(p):
        raise InputError(f"{p} is not an odd prime")
    if not f.is_monic or f.degree < 1:
        raise InputError(f"Period profiles need a monic polynomial of degree >= 1, got {f}")
    if f(0) % p == 0:
        raise InputError(f"{p} divides f(0) = {f(0)}")
    found, m = has_root_of_unity_factor(f)
    if found:
        raise InputError(f"{f} has the cyclotomic factor Phi_{m}")


def lrs_period_profile(f: IntPoly, p: int, k: int) -> Tuple[LrsProfile, int]:
    _check_profile_inputs(f, p)
    if k < 1:
        raise InputError("k must be positive")
    one = IntPoly((1,))
    x = IntPoly.x()

    # T1 by repeated multiplication by x, bounded by the unit group order
    power = reduce_quotient(x, f, p)
    T1 = 1
    while power != one:
        power = reduce_quotient(power * x, f, p)
        T1 += 1
        if T1 > p ** f.degree:
            raise InputError(f"x has no finite order mod ({p}, {f})")

    margin = config.LRS_MARGIN
    while True:
        precision = k + margin
        residue = powmod_quotient(x, T1, f, p ** precision) - one
        nonzero = [c for c in residue.mod(p ** precision).coeffs if c]
        if nonzero:
            t = min(vp(c, p) for c in nonzero)
            break
        margin *= 2

    profile = LrsProfile(f=f, p=p, T1=T1, t=t)
    return profile, profile.period(k)


def lrs_certificate(f: IntPoly, p: int, k: int, T: int) -> bool:
    """x^T = 1 mod (p^k, f)"""
    if T < 1:
        raise InputError("Certified periods must be positive")
    _check_profile_inputs(f, p)
    return powmod_quotient(IntPoly.x(), T, f, p ** k) == IntPoly((1,))


def unit_representative(b: int, modulus: int) -> int:
    """Lifted roots equal to 1 are replaced by 1 + p^k so order formulas apply"""
    return b + modulus if b == 1 else b


def root_period_lcm(f: IntPoly, cert: SplitPrimeCert, k: int) -> int:
    """lcm of the orders of the lifted roots, which equals T_k"""
    pk = cert.p ** k
    orders = []
    for root in cert.roots:
        b = hensel_lift(f, cert.p, root, k)
        orders.append(mult_order(unit_representative(b, pk), cert.p, k))
    return reduce(lcm, orders, 1)
