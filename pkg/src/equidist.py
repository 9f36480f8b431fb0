"""
Equidistribution checks
Box counts of periodic measures against Lebesgue measure, the cell-occupancy and
density inequalities behind weak* convergence, and the packing bound.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

import config
from console import say
from errors import InputError, InvariantViolation
from intlinalg import IntMatrix
from orbits.torus import INT64_SAFE_DENOMINATOR, OrbitRecord, TorusPoint, orbit_bruteforce


@dataclass
class BoxMeasureReport:
    grid: int
    counts: np.ndarray
    T: int
    max_dev_exact: Fraction
    level: Optional[int] = None

    @property
    def max_dev(self) -> float:
        return float(self.max_dev_exact)

    def to_json(self) -> Dict:
        return {"grid": self.grid, "T": self.T, "level": self.level,
                "counts": [int(c) for c in self.counts.ravel()],
                "max_dev": self.max_dev}


def _cell_indices(record: OrbitRecord, g: int) -> np.ndarray:
    if record.points is None:
        raise InputError("Orbit points were not materialized")
    dtype = np.int64 if record.m * g < INT64_SAFE_DENOMINATOR else object
    arr = np.array([list(u) for u in record.points], dtype=dtype)
    # half-open boxes [i/g, (i+1)/g), decided on integers
    return (arr * g) // record.m


def box_counts(record: OrbitRecord, g: int) -> BoxMeasureReport:
    if g < 1:
        raise InputError("Grid side must be positive")
    cells = _cell_indices(record, g).astype(np.int64)
    n = record.n
    flat = np.ravel_multi_index(tuple(cells.T), (g,) * n)
    counts = np.bincount(flat, minlength=g ** n).reshape((g,) * n)
    if int(counts.sum()) != record.T:
        raise InvariantViolation("Box counts do not sum to the period")
    boxes = g ** n
    worst = max(abs(int(c) * boxes - record.T) for c in counts.ravel())
    return BoxMeasureReport(grid=g, counts=counts, T=record.T,
                            max_dev_exact=Fraction(worst, record.T * boxes), level=record.level)


def cell_occupancy_check(record: OrbitRecord) -> bool:
    """Cubes of side 1/G with n/G^2 < d_sq hold at most one orbit point"""
    if record.T < 2:
        return True
    if record.d_sq is None or not record.d_exact:
        raise InputError("Cell occupancy needs an exact d_sq")
    num, den, n = record.d_sq.numerator, record.d_sq.denominator, record.n
    G = math.isqrt(n * den // num) if num else 0
    while G * G * num <= n * den:
        G += 1
    cells = _cell_indices(record, G)
    keys = {tuple(int(x) for x in row) for row in cells}
    ok = len(keys) == record.T
    if not ok:
        say(f"❌ Two orbit points share a cell of side 1/{G}, d^2 = {record.d_sq} is too large", "red")
    return ok


def unit_ball_volume(n: int) -> float:
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1)


def packing_bound_check(record: OrbitRecord) -> bool:
    """T·(d/2)^n·omega_n <= 1"""
    if record.T < 2 or record.d_sq is None:
        return True
    n = record.n
    value = record.T * (float(record.d_sq) / 4) ** (n / 2) * unit_ball_volume(n)
    return value <= 1 + config.PACKING_SLACK


def density_bound_check(record: OrbitRecord, g: int) -> bool:
    """Each box of side 1/g holds at most max(1, 4^n n^(n/2) d^-n g^-n) points"""
    if record.T < 2:
        return True
    if record.d_sq is None or not record.d_exact:
        raise InputError("Density check needs an exact d_sq")
    n = record.n
    report = box_counts(record, g)
    num, den = record.d_sq.numerator, record.d_sq.denominator
    limit_num = 16 ** n * n ** n * den ** n
    for c in report.counts.ravel():
        c = int(c)
        # c^2 · d_sq^n · g^(2n) <= 16^n · n^n
        if c > 1 and c * c * num ** n * g ** (2 * n) > limit_num:
            return False
    return True


@dataclass
class ConvergenceReport:
    table: pd.DataFrame
    decreasing: bool
    note: str = "trend check only: weak* convergence carries no rate"

    def to_json(self) -> Dict:
        return {"decreasing": self.decreasing, "note": self.note,
                "rows": self.table.to_dict(orient="records")}


def convergence_report(records: Sequence[OrbitRecord], g: int, strict: bool = True) -> ConvergenceReport:
    """Per-level max deviation table; the last level must beat the first unless strict is off"""
    if len(records) < 2:
        raise InputError("Convergence report needs at least two records")
    rows = []
    for i, record in enumerate(records, start=1):
        report = box_counts(record, g)
        rows.append({
            "level": record.level if record.level is not None else i,
            "T": record.T,
            "max_dev": report.max_dev,
            "dnT": record.metric_float,
            "density_ok": density_bound_check(record, g),
            "occupancy_ok": cell_occupancy_check(record),
            "packing_ok": packing_bound_check(record),
        })
    table = pd.DataFrame(rows)
    decreasing = bool(table["max_dev"].iloc[-1] < table["max_dev"].iloc[0])
    if strict and not decreasing:
        raise InvariantViolation("max_dev at the deepest level is not below level 1")
    return ConvergenceReport(table=table, decreasing=decreasing)


@dataclass
class NonErgodicReport:
    orbits: int
    max_period: int
    min_max_dev: float

    def to_json(self) -> Dict:
        return {"orbits": self.orbits, "max_period": self.max_period, "min_max_dev": self.min_max_dev}


def nonergodic_scan(A: IntMatrix, max_den: int = config.NONERGODIC_MAX_DENOMINATOR,
                    g: int = config.DEFAULT_GRID) -> NonErgodicReport:
    """Every periodic orbit with denominator <= max_den and its best box deviation"""
    if max_den < 1:
        raise InputError("max_den must be positive")
    n = A.n
    orbits, max_period, best = 0, 0, None
    for m in range(1, max_den + 1):
        visited = set()
        for u in product(range(m), repeat=n):
            if u in visited:
                continue
            _, record = orbit_bruteforce(A, TorusPoint(u, m))
            visited.update(record.points)
            orbits += 1
            max_period = max(max_period, record.T)
            dev = box_counts(record, g).max_dev
            best = dev if best is None else min(best, dev)
    say(f"📊 {orbits} orbits scanned, max period {max_period}, smallest max_dev {best:.4f}", "cyan")
    return NonErgodicReport(orbits=orbits, max_period=max_period, min_max_dev=best)
