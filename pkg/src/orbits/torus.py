"""
Rational points on the torus and periodic orbit records
Every orbit shares one denominator m, so squared distances are integers over m^2.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import product
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

import config
from console import say
from errors import InputError, InvariantViolation
from intlinalg import IntMatrix, adjugate, det, frobenius_norm_sq

# Below this denominator the squared wrap distances fit in int64 for n <= 8
INT64_SAFE_DENOMINATOR = 2 ** 29


@dataclass(frozen=True)
class TorusPoint:
    """u/m with 0 <= u_i < m"""

    u: Tuple[int, ...]
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise InputError(f"Denominator must be positive, got {self.m}")
        object.__setattr__(self, "u", tuple(int(x) % self.m for x in self.u))

    @classmethod
    def from_fractions(cls, coords: Sequence) -> "TorusPoint":
        fracs = [Fraction(c) for c in coords]
        m = reduce(lcm, (f.denominator for f in fracs), 1)
        return cls(tuple(int(f * m) for f in fracs), m)

    @classmethod
    def parse(cls, text: str) -> "TorusPoint":
        """Comma-separated num/den entries, e.g. "1/2,0" """
        try:
            coords = [Fraction(tok.strip()) for tok in text.split(",") if tok.strip()]
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"Cannot parse point {text!r}: {e}") from e
        if not coords:
            raise InputError("Empty point")
        return cls.from_fractions(coords)

    @property
    def n(self) -> int:
        return len(self.u)

    def rescale(self, m: int) -> "TorusPoint":
        if m % self.m:
            raise InputError(f"Cannot rescale denominator {self.m} to {m}")
        return TorusPoint(tuple(x * (m // self.m) for x in self.u), m)

    def as_fractions(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(x, self.m) for x in self.u)

    def to_json(self) -> Dict:
        return {"u": list(self.u), "m": self.m}

    def __str__(self):
        return "(" + ", ".join(str(x) for x in self.u) + f")/{self.m}"


def torus_dist_sq(x: TorusPoint, y: TorusPoint) -> Fraction:
    """Squared distance on R^n/Z^n, exact"""
    if x.n != y.n:
        raise InputError("Points live on tori of different dimension")
    m = lcm(x.m, y.m)
    x, y = x.rescale(m), y.rescale(m)
    total = 0
    for a, b in zip(x.u, y.u):
        delta = abs(a - b) % m
        total += min(delta, m - delta) ** 2
    return Fraction(total, m * m)


@dataclass
class OrbitRecord:
    """
    Periodic orbit of u -> A·u mod m
    points holds the integer numerators of the cycle starting at base (None above
    the materialization cap); d_sq is None for fixed points.
    """

    base: TorusPoint
    T: int
    points: Optional[Tuple[Tuple[int, ...], ...]]
    d_sq: Optional[Fraction]
    construction: str
    d_exact: bool = True
    level: Optional[int] = None
    prime_data: Dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def m(self) -> int:
        return self.base.m

    def torus_points(self) -> List[TorusPoint]:
        if self.points is None:
            raise InputError("Orbit points were not materialized")
        return [TorusPoint(u, self.m) for u in self.points]

    @property
    def metric_exact(self) -> Optional[Fraction]:
        """d^n·T as a rational when n is even"""
        if self.d_sq is None or self.n % 2:
            return None
        return self.d_sq ** (self.n // 2) * self.T

    @property
    def metric_float(self) -> Optional[float]:
        if self.d_sq is None:
            return None
        return float(self.d_sq) ** (self.n / 2) * self.T

    def to_json(self) -> Dict:
        return {
            "base": self.base.to_json(),
            "T": self.T,
            "d_sq": None if self.d_sq is None else {"num": self.d_sq.numerator, "den": self.d_sq.denominator},
            "d_exact": self.d_exact,
            "metric_float": self.metric_float,
            "construction": self.construction,
            "level": self.level,
            "prime_data": self.prime_data,
        }


# ====================================================================== minimum gap

def _as_array(vectors: Sequence[Sequence[int]], m: int):
    dtype = np.int64 if m < INT64_SAFE_DENOMINATOR else object
    return np.array([list(v) for v in vectors], dtype=dtype)


def _all_pairs_min(arr, m: int) -> int:
    best = None
    for i in range(len(arr) - 1):
        diff = np.abs(arr[i + 1:] - arr[i])
        wrap = np.minimum(diff, m - diff)
        row_min = int((wrap * wrap).sum(axis=1).min())
        if best is None or row_min < best:
            best = row_min
            if best == 0:
                break
    return best


def _neighbourhood(cell: Tuple[int, ...], grid: int):
    offsets = (-1, 0, 1) if grid >= 3 else tuple(range(grid))
    seen = set()
    for delta in product(offsets, repeat=len(cell)):
        if grid >= 3:
            key = tuple((c + d) % grid for c, d in zip(cell, delta))
        else:
            key = delta
        if key not in seen:
            seen.add(key)
            yield key


def _bucketed_min(arr, m: int, grid: int) -> Tuple[int, bool]:
    """Minimum over neighbouring cells, and whether it is certified global"""
    cells: Dict[Tuple[int, ...], List[int]] = {}
    for i, u in enumerate(arr):
        key = tuple(int(x) * grid // m for x in u)
        cells.setdefault(key, []).append(i)
    best = None
    for key, members in cells.items():
        near = [j for other in _neighbourhood(key, grid) for j in cells.get(other, ())]
        near_arr = arr[near]
        for i in members:
            diff = np.abs(near_arr - arr[i])
            wrap = np.minimum(diff, m - diff)
            dist = (wrap * wrap).sum(axis=1)
            dist = dist[np.array(near) != i]
            if len(dist):
                local = int(dist.min())
                if best is None or local < best:
                    best = local
    # pairs outside neighbouring cells differ by more than m/grid in some coordinate
    certified = grid < 3 or (best is not None and best * grid * grid <= m * m)
    return best, certified


def min_gap_numerator(vectors: Sequence[Sequence[int]], m: int, hint: Optional[Fraction] = None) -> int:
    """min over pairs of the integer sum of squared wrap differences (d_sq * m^2)"""
    if len(vectors) < 2:
        raise InputError("min_gap needs at least two points")
    arr = _as_array(vectors, m)
    count, n = arr.shape
    if count <= config.ALL_PAIRS_MAX:
        return _all_pairs_min(arr, m)

    if hint is not None and hint > 0:
        side = float(hint) ** 0.5
        grid = max(1, int(1 / side))
    else:
        grid = max(1, int(round(count ** (1.0 / n))))
    grid = min(grid, max(1, int((4 * count) ** (1.0 / n))))
    while grid ** n > 4 * count:
        grid -= 1
    while True:
        best, certified = _bucketed_min(arr, m, grid)
        if certified:
            return best
        say(f"⚠️ Bucket grid {grid} not certified, halving", "yellow")
        grid = max(1, grid // 2)


def min_gap(points: Sequence[TorusPoint]) -> Fraction:
    """Exact minimum squared torus distance over all pairs"""
    if len(points) < 2:
        raise InputError("min_gap needs at least two points")
    m = reduce(lcm, (p.m for p in points), 1)
    vectors = [p.rescale(m).u for p in points]
    return Fraction(min_gap_numerator(vectors, m), m * m)


# ====================================================================== brute-force orbits

def record_from_cycle(cycle: List[Tuple[int, ...]], m: int, construction: str,
                      level: Optional[int] = None, prime_data: Optional[Dict] = None,
                      hint: Optional[Fraction] = None) -> OrbitRecord:
    T = len(cycle)
    d_sq = Fraction(min_gap_numerator(cycle, m, hint), m * m) if T >= 2 else None
    return OrbitRecord(base=TorusPoint(cycle[0], m), T=T, points=tuple(cycle), d_sq=d_sq,
                       construction=construction, level=level, prime_data=dict(prime_data or {}))


def orbit_bruteforce(A: IntMatrix, x: TorusPoint, iter_cap: Optional[int] = None,
                     construction: str = "bruteforce") -> Tuple[int, OrbitRecord]:
    """Iterate u -> A·u mod m until a state repeats; returns (preperiod, cycle record)"""
    if A.n != x.n:
        raise InputError(f"Point dimension {x.n} does not match matrix dimension {A.n}")
    m = x.m
    cap = iter_cap if iter_cap is not None else min(m ** A.n, config.ORBIT_MATERIALIZE_CAP)
    seen: Dict[Tuple[int, ...], int] = {}
    states: List[Tuple[int, ...]] = []
    state = x.u
    while state not in seen:
        if len(states) >= cap:
            raise InputError(f"Orbit of {x} did not close within {cap} iterations")
        seen[state] = len(states)
        states.append(state)
        state = tuple(v % m for v in A.apply(state))
    start = seen[state]
    return start, record_from_cycle(states[start:], m, construction)


def _fixed_by(A: IntMatrix, x: TorusPoint, e: int) -> bool:
    image = A.power_mod(e, x.m).apply(x.u)
    return tuple(v % x.m for v in image) == x.u


def certify_period(A: IntMatrix, record: OrbitRecord) -> bool:
    """A^T·base = base mod m and A^(T/q)·base != base for each prime q | T"""
    if not _fixed_by(A, record.base, record.T):
        return False
    return all(not _fixed_by(A, record.base, record.T // q) for q in sympy.primefactors(record.T))


def period_from_multiple(A: IntMatrix, x: TorusPoint, N: int) -> int:
    """Exact period of x from a known multiple N, stripping prime factors while A still fixes x"""
    if N < 1:
        raise InputError("Period multiple must be positive")
    if not _fixed_by(A, x, N):
        raise InvariantViolation(f"A^{N} does not fix {x}, so {N} is not a period multiple")
    T = N
    for q in sympy.primefactors(N):
        while T % q == 0 and _fixed_by(A, x, T // q):
            T //= q
    return T


def orbit_cycle(A: IntMatrix, x: TorusPoint, T: int) -> List[Tuple[int, ...]]:
    """x, A·x, ..., A^(T-1)·x for a point of known period T"""
    m = x.m
    states, state = [], x.u
    for _ in range(T):
        states.append(state)
        state = tuple(v % m for v in A.apply(state))
    if state != x.u:
        raise InvariantViolation(f"Orbit of {x} does not close after {T} steps")
    return states


def record_with_period(A: IntMatrix, x: TorusPoint, T: int, construction: str,
                       lower_bound: Optional[Fraction] = None, level: Optional[int] = None,
                       prime_data: Optional[Dict] = None) -> OrbitRecord:
    """
    Record of a point whose exact period is already known.
    Points are materialized up to ORBIT_MATERIALIZE_CAP; above it d_sq is the given
    certified lower bound and d_exact is False.
    """
    if T <= config.ORBIT_MATERIALIZE_CAP:
        return record_from_cycle(orbit_cycle(A, x, T), x.m, construction, level=level,
                                 prime_data=prime_data, hint=lower_bound)
    if lower_bound is None or lower_bound <= 0:
        raise InputError(f"Period {T} is above the materialization cap and no lower bound for d is known")
    say(f"⚠️ Period {T} above the materialization cap, d is a lower bound", "yellow")
    return OrbitRecord(base=x, T=T, points=None, d_sq=lower_bound, d_exact=False,
                       construction=construction, level=level, prime_data=dict(prime_data or {}))


def pull_back_orbit(P: IntMatrix, orbit_j: OrbitRecord, A: IntMatrix) -> OrbitRecord:
    """
    Orbit of A through v = P^{-1}·x for x the base of an orbit of J, where P·A = J·P.
    The period grows by a factor c in [1, |det P|] and d(O')^2·|P|_F^2 >= d(O)^2.
    """
    D = det(P)
    if D == 0:
        raise InputError("Conjugator must be invertible")
    adj = adjugate(P)
    modulus = abs(D) * orbit_j.m
    sign = 1 if D > 0 else -1
    v = TorusPoint(tuple(sign * x for x in adj.apply(orbit_j.base.u)), modulus)

    # A^T permutes the fibre of P over x, which has at most |det P| points
    step = A.power_mod(orbit_j.T, modulus)
    seen: Dict[Tuple[int, ...], int] = {}
    state = v.u
    while state not in seen:
        if len(seen) > abs(D):
            raise InvariantViolation(f"A^{orbit_j.T} leaves the fibre of P over {orbit_j.base}")
        seen[state] = len(seen)
        state = tuple(s % modulus for s in step.apply(state))
    c = len(seen) - seen[state]
    if not 1 <= c <= abs(D):
        raise InvariantViolation(f"Period multiplier {c} outside [1, {abs(D)}]")

    norm = frobenius_norm_sq(P)
    lower = Fraction(1, modulus * modulus)
    if orbit_j.d_sq is not None:
        lower = max(lower, orbit_j.d_sq / norm)
    pulled = record_with_period(A, TorusPoint(state, modulus), c * orbit_j.T, "pulled-back",
                                lower_bound=lower, level=orbit_j.level,
                                prime_data=dict(orbit_j.prime_data, period_multiplier=c, det_P=D))
    if not certify_period(A, pulled):
        raise InvariantViolation(f"Pulled-back period {pulled.T} does not certify")
    if orbit_j.d_sq is not None and orbit_j.d_exact and pulled.d_exact:
        if pulled.d_sq is None or pulled.d_sq * norm < orbit_j.d_sq:
            raise InvariantViolation("Pulled-back orbit violates d(O')·|P| >= d(O)")
    return pulled
