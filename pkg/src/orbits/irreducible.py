"""
Irreducible case
Orbits of the companion matrix B of an irreducible f through eigen points
w = (1, b, ..., b^(n-1)) / p^k, plus the wedge-invariant distance certificate.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import sympy

import config
from console import say
from errors import InputError, InvariantViolation
from intlinalg import IntMatrix, companion, det, frobenius_norm_sq
from intpoly import IntPoly
from lrs import unit_representative
from modarith import SplitPrimeCert, hensel_lift, mult_order, order_profile, vp
from orbits.base_construction import BaseConstruction
from orbits.torus import OrbitRecord, TorusPoint, min_gap_numerator


def eigen_point(f: IntPoly, p: int, k: int, b: int) -> Tuple[TorusPoint, Dict]:
    """w/p^k with B·w = b·w mod p^k for B = companion(f)"""
    pk = p ** k
    if f(b) % pk:
        raise InputError(f"{b} is not a root of {f} mod {p}^{k}")
    if b % p == 0:
        raise InputError(f"Root {b} is divisible by {p}")
    w = tuple(pow(b, i, pk) for i in range(f.degree))
    image = tuple(x % pk for x in companion(f).apply(w))
    expected = tuple(b * x % pk for x in w)
    if image != expected:
        raise InvariantViolation(f"Eigen relation fails for b = {b} mod {p}^{k}")
    return TorusPoint(w, pk), {"b": b, "Bw": list(image)}


@dataclass(frozen=True)
class RootChoice:
    root: int
    lift: int
    period: int
    t: int


def choose_root(f: IntPoly, cert: SplitPrimeCert, k: int) -> RootChoice:
    """Lifted root whose order has maximal p-valuation, ties to the smallest lift"""
    pk = cert.p ** k
    lifts = sorted((hensel_lift(f, cert.p, root, k), root) for root in cert.roots)
    best = None
    for lift, root in lifts:
        a = unit_representative(lift, pk)
        period = mult_order(a, cert.p, k)
        choice = RootChoice(root=root, lift=lift, period=period, t=order_profile(a, cert.p).t)
        if best is None or vp(period, cert.p) > vp(best.period, cert.p):
            best = choice
    return best


def eigen_cycle(f: IntPoly, p: int, k: int, b: int, T: int) -> List[Tuple[int, ...]]:
    """b^j·w for j < T, which is B^j·w"""
    pk = p ** k
    n = f.degree
    powers = [pow(b, i, pk) for i in range(T + n)]
    return [tuple(powers[j:j + n]) for j in range(T)]


def product_of_power_norms(B: IntMatrix) -> int:
    """prod_{i=1}^{n-1} |B^i|_F^2"""
    total, power = 1, IntMatrix.identity(B.n)
    for _ in range(1, B.n):
        power = power @ B
        total *= frobenius_norm_sq(power)
    return total


def distance_lower_bound(B: IntMatrix, p: int, k: int) -> Fraction:
    """Rational q <= d^2 implied by d_sq^n · N · p^(2k) >= 1"""
    n = B.n
    N = product_of_power_norms(B)
    bound = Fraction(1, N * p ** (2 * k))
    if n == 1:
        return bound
    scale = 10 ** 9
    root, _ = sympy.integer_nthroot(bound.numerator * scale ** n // bound.denominator, n)
    return Fraction(int(root), scale)


def construct_irreducible(f: IntPoly, cert: SplitPrimeCert, k: int) -> OrbitRecord:
    """Orbit of the chosen eigen point for companion(f) at level k"""
    if k < 1:
        raise InputError("Level must be positive")
    if not cert.verify(f):
        raise InputError(f"{cert.p} is not a split prime for {f}")
    p, pk = cert.p, cert.p ** k
    choice = choose_root(f, cert, k)
    base, _ = eigen_point(f, p, k, choice.lift)
    B = companion(f)
    prime_data = {"p": p, "k": k, "root": choice.root, "lift": choice.lift, "t": choice.t}

    if choice.period > config.ORBIT_MATERIALIZE_CAP:
        say(f"⚠️ Period {choice.period} above the materialization cap, d is a lower bound", "yellow")
        return OrbitRecord(base=base, T=choice.period, points=None,
                           d_sq=distance_lower_bound(B, p, k), d_exact=False,
                           construction="irreducible", level=k, prime_data=prime_data)

    cycle = eigen_cycle(f, p, k, choice.lift, choice.period)
    d_sq = None
    if choice.period >= 2:
        d_sq = Fraction(min_gap_numerator(cycle, pk, distance_lower_bound(B, p, k)), pk * pk)
    return OrbitRecord(base=base, T=choice.period, points=tuple(cycle), d_sq=d_sq,
                       construction="irreducible", level=k, prime_data=prime_data)


# ====================================================================== wedge certificate

def wedge_invariant(w, B: IntMatrix) -> int:
    """det[w, Bw, ..., B^(n-1) w]"""
    columns = [tuple(w)]
    for _ in range(B.n - 1):
        columns.append(B.apply(columns[-1]))
    return det(IntMatrix(tuple(columns)))


def centered(v, modulus: int) -> Tuple[int, ...]:
    half = modulus // 2
    return tuple((x % modulus) - modulus if (x % modulus) > half else x % modulus for x in v)


@dataclass
class WedgeReport:
    pairs: List[Tuple[int, int]]
    invariants: List[int]
    norm_product: int
    lower_bound: Fraction
    global_bound_ok: bool
    passed: bool
    failures: List[str] = field(default_factory=list)

    def to_json(self) -> Dict:
        return {
            "pairs_checked": len(self.pairs),
            "min_abs_invariant": min((abs(i) for i in self.invariants), default=None),
            "norm_product": self.norm_product,
            "d_sq_lower_bound": str(self.lower_bound),
            "global_bound_ok": self.global_bound_ok,
            "passed": self.passed,
            "failures": self.failures,
        }


def _sample_pairs(T: int, count: int) -> List[Tuple[int, int]]:
    if T * (T - 1) // 2 <= count:
        return [(i, j) for i in range(T) for j in range(i + 1, T)]
    rng = random.Random(config.WEDGE_SAMPLE_SEED)
    pairs = set()
    while len(pairs) < count:
        i, j = rng.randrange(T), rng.randrange(T)
        if i != j:
            pairs.add((min(i, j), max(i, j)))
    return sorted(pairs)


def certify_distance_bound(record: OrbitRecord, B: IntMatrix, p: int, k: int,
                           sample_pairs: Optional[List[Tuple[int, int]]] = None,
                           strict: bool = True, lift: Optional[int] = None) -> WedgeReport:
    """
    For sampled pairs the centered difference a of B^i w - B^j w satisfies
    a != 0, I(a) != 0, p^(k(n-1)) | I(a) and |a|^(2n)·N >= I(a)^2 with
    N = prod |B^i|_F^2; the orbit gap must satisfy d_sq^n·N·p^(2k) >= 1.
    """
    n, pk = B.n, p ** k
    b = lift if lift is not None else record.prime_data.get("lift")
    if b is None:
        raise InputError("Record carries no eigen root (not an irreducible-case orbit)")
    pairs = sample_pairs if sample_pairs is not None else _sample_pairs(record.T, config.WEDGE_SAMPLE_PAIRS)
    N = product_of_power_norms(B)
    divisor = p ** (k * (n - 1))
    failures, invariants = [], []

    def point(i):
        return tuple(pow(b, i + j, pk) for j in range(n))

    for i, j in pairs:
        if i == j:
            raise InputError("Wedge pairs need distinct indices")
        a = centered(tuple(x - y for x, y in zip(point(i), point(j))), pk)
        if not any(a):
            failures.append(f"pair ({i},{j}): centered difference vanishes")
            continue
        inv = wedge_invariant(a, B)
        invariants.append(inv)
        if inv == 0:
            failures.append(f"pair ({i},{j}): I(a) = 0")
        elif inv % divisor:
            failures.append(f"pair ({i},{j}): {p}^{k * (n - 1)} does not divide I(a) = {inv}")
        norm_sq = sum(x * x for x in a)
        if norm_sq ** n * N < inv * inv:
            failures.append(f"pair ({i},{j}): Hadamard bound fails")

    global_ok = True
    if record.d_sq is not None and record.d_exact:
        global_ok = record.d_sq ** n * N * p ** (2 * k) >= 1
        if not global_ok:
            failures.append(f"d_sq = {record.d_sq} below the wedge lower bound")

    report = WedgeReport(pairs=list(pairs), invariants=invariants, norm_product=N,
                         lower_bound=distance_lower_bound(B, p, k), global_bound_ok=global_ok,
                         passed=not failures, failures=failures)
    if strict and failures:
        raise InvariantViolation("Wedge certificate failed: " + "; ".join(failures[:3]))
    return report


class IrreducibleConstruction(BaseConstruction):
    """Orbit sequence for companion(f) at a fixed split prime"""

    def __init__(self, f: IntPoly, cert: SplitPrimeCert):
        super().__init__("irreducible")
        self.f = f
        self.cert = cert
        self.matrix = companion(f)

    def build(self, level: int) -> OrbitRecord:
        return construct_irreducible(self.f, self.cert, level)

    def certify(self, record: OrbitRecord) -> WedgeReport:
        return certify_distance_bound(record, self.matrix, self.cert.p, record.level)
