"""
General ergodic case
Decompose A into primary cyclic blocks, move every block of d_i = g_i^e_i into its
Jordan-like frame, build prime-power orbits block by block on pairwise coprime
moduli, balance the levels across blocks and pull the product orbit back to A.
"""

from dataclasses import dataclass, field, replace
from functools import reduce
from math import lcm
from typing import Dict, List, Optional, Sequence

from console import header, say
from errors import InputError, InvariantViolation, NonErgodicError
from intlinalg import (IntMatrix, PrimaryDecomposition, adjugate, block_diag, companion,
                       find_cyclic_vector, is_ergodic, krylov, primary_decomposition)
from intpoly import IntPoly
from modarith import SplitPrimeCert, find_split_primes
from orbits.base_construction import BaseConstruction
from orbits.prime_power import balanced_exponents, construct_prime_power, jordan_block_matrix
from orbits.torus import OrbitRecord, TorusPoint, pull_back_orbit, record_with_period


@dataclass
class BlockFrame:
    """One primary block moved into the frame B_i = jordan_block_matrix(companion(g), e)"""

    g: IntPoly
    exponent: int
    matrix: IntMatrix
    conjugator: IntMatrix
    certs: List[SplitPrimeCert] = field(default_factory=list)

    @property
    def size(self) -> int:
        return self.matrix.n

    def modulus(self, level: int) -> int:
        primes = [c.p for c in self.certs]
        m = 1
        for p, e in zip(primes, balanced_exponents(primes, level)):
            m *= p ** e
        return m


def block_frame(g: IntPoly, exponent: int) -> BlockFrame:
    """Q with Q·companion(g^e) = B·Q, taken as adj(krylov(beta, B)) for a cyclic beta"""
    B = jordan_block_matrix(companion(g), exponent)
    if exponent == 1:
        return BlockFrame(g=g, exponent=1, matrix=B, conjugator=IntMatrix.identity(B.n))
    beta = find_cyclic_vector(B)
    R = krylov(beta, B)
    Q = adjugate(R)
    if Q @ companion(g ** exponent) != B @ Q:
        raise InvariantViolation(f"Frame conjugation fails for ({g})^{exponent}")
    return BlockFrame(g=g, exponent=exponent, matrix=B, conjugator=Q)


def balance_levels(frames: Sequence[BlockFrame], k: int) -> List[int]:
    """
    Level of block 1 is k; block i+1 takes the largest j with
    m^(i+1)_j ^ r_i <= (m^(i))^r_(i+1), or 1 when no j qualifies
    """
    levels = [k]
    for prev, frame in zip(frames, frames[1:]):
        r_prev, r_next = prev.size, frame.size
        target = prev.modulus(levels[-1]) ** r_next
        j = 1
        while frame.modulus(j + 1) ** r_prev <= target:
            j += 1
        levels.append(j)
    return levels


@dataclass
class GeneralOrbit:
    """The frame orbit of B = diag(B_i) and its pull-back to A"""

    frame_record: OrbitRecord
    record: OrbitRecord
    conjugator: IntMatrix
    frame_matrix: IntMatrix
    levels: List[int]


class GeneralConstruction(BaseConstruction):
    """Orbit sequence for any ergodic integer matrix"""

    def __init__(self, A: IntMatrix, primes: Optional[Sequence[int]] = None, jobs: int = 1,
                 scan_cap: Optional[int] = None):
        super().__init__("general")
        verdict = is_ergodic(A)
        if not verdict:
            raise NonErgodicError(f"Matrix is not ergodic: {verdict.reason}", witness=verdict.witness)
        self.A = A
        self.decomposition: PrimaryDecomposition = primary_decomposition(A)
        # the largest block leads prime assignment and level balancing
        blocks = sorted(self.decomposition.blocks, key=lambda b: -b.size)
        P = self.decomposition.P
        rows = [row for b in blocks for row in P.rows[b.offset:b.offset + b.size]]
        self.frames = [block_frame(b.g, b.exponent) for b in blocks]
        self._assign_primes(list(primes or []), jobs, scan_cap)

        Q = block_diag(*(fr.conjugator for fr in self.frames))
        self.frame_matrix = block_diag(*(fr.matrix for fr in self.frames))
        self.conjugator = Q @ IntMatrix(tuple(rows))
        if self.conjugator @ A != self.frame_matrix @ self.conjugator:
            raise InvariantViolation("Total conjugator does not intertwine A with the block frame")

    def _assign_primes(self, overrides: List[int], jobs: int, scan_cap: Optional[int]):
        used = set()
        for frame in self.frames:
            certs = []
            while overrides and len(certs) < frame.exponent:
                p = overrides.pop(0)
                try:
                    cert = find_split_primes(frame.g, 1, p_min=p, scan_cap=p)[0]
                except InputError as e:
                    raise InputError(f"{p} is not a split prime for {frame.g}") from e
                if p in used:
                    raise InputError(f"Prime {p} is already assigned to another block")
                certs.append(cert)
            if len(certs) < frame.exponent:
                certs += find_split_primes(frame.g, frame.exponent - len(certs),
                                           exclude=tuple(used | {c.p for c in certs}), jobs=jobs,
                                           scan_cap=scan_cap)
            frame.certs = sorted(certs, key=lambda c: c.p, reverse=True)
            used |= {c.p for c in certs}
            say(f"🔢 Block ({frame.g})^{frame.exponent}: primes {[c.p for c in frame.certs]}", "white")

    def build_general(self, level: int) -> GeneralOrbit:
        if level < 1:
            raise InputError("Level must be positive")
        levels = balance_levels(self.frames, level)
        blocks, data = [], []
        for frame, lv in zip(self.frames, levels):
            block = construct_prime_power(frame.g, frame.exponent, lv, certs=frame.certs)
            blocks.append(block)
            data.append({"g": frame.g.to_json(), "exponent": frame.exponent, "level": lv,
                         "blocks": block.prime_data["blocks"]})

        if len(blocks) == 1:
            frame_record = replace(blocks[0], construction="general", level=level,
                                   prime_data={"frames": data})
        else:
            # coprime moduli: the period is the lcm and every gap is a gap in some block
            M = 1
            for block in blocks:
                M *= block.m
            u = []
            for block in blocks:
                u.extend(x * (M // block.m) for x in block.base.u)
            T = reduce(lcm, (block.T for block in blocks), 1)
            bounds = [block.d_sq for block in blocks if block.T >= 2]
            frame_record = record_with_period(self.frame_matrix, TorusPoint(tuple(u), M), T, "general",
                                              lower_bound=min(bounds) if bounds else None,
                                              level=level, prime_data={"frames": data})
        record = pull_back_orbit(self.conjugator, frame_record, self.A)
        return GeneralOrbit(frame_record=frame_record, record=record, conjugator=self.conjugator,
                            frame_matrix=self.frame_matrix, levels=levels)

    def build(self, level: int) -> OrbitRecord:
        return self.build_general(level).record


def construct_general(A: IntMatrix, level: int, primes: Optional[Sequence[int]] = None,
                      jobs: int = 1, scan_cap: Optional[int] = None) -> OrbitRecord:
    """Orbit for A itself at the given level"""
    return GeneralConstruction(A, primes=primes, jobs=jobs, scan_cap=scan_cap).build(level)


@dataclass
class UniformSequence:
    frame_records: List[OrbitRecord]
    records: List[OrbitRecord]
    constant: Optional[float]
    frame_constant: Optional[float]
    construction: GeneralConstruction

    def to_json(self) -> Dict:
        return {
            "C": self.constant,
            "C_frame": self.frame_constant,
            "frame_records": [r.to_json() for r in self.frame_records],
            "records": [r.to_json() for r in self.records],
        }


def _min_metric(records: Sequence[OrbitRecord]) -> Optional[float]:
    values = [r.metric_float for r in records if r.metric_float is not None]
    return min(values) if values else None


def uniform_sequence(A: IntMatrix, levels: int, primes: Optional[Sequence[int]] = None,
                     jobs: int = 1, scan_cap: Optional[int] = None) -> UniformSequence:
    """Records for k = 1..levels with strictly increasing periods and d^n·T bounded below"""
    # equidist imports orbits, so the packing check is imported here
    from equidist import packing_bound_check

    if levels < 1:
        raise InputError("Need at least one level")
    header(f"🌀 Uniform orbit sequence, {levels} level(s)")
    construction = GeneralConstruction(A, primes=primes, jobs=jobs, scan_cap=scan_cap)
    frame_records, records = [], []
    for level in range(1, levels + 1):
        built = construction.build_general(level)
        frame_records.append(built.frame_record)
        records.append(built.record)
        say(f"  level {level}: frame T = {built.frame_record.T}, d^2 = {built.frame_record.d_sq} | "
            f"A-frame T = {built.record.T}, d^2 = {built.record.d_sq}", "cyan")

    for previous, current in zip(records, records[1:]):
        if current.T <= previous.T:
            raise InvariantViolation(f"Periods not strictly increasing: {previous.T} then {current.T}")
    for record in frame_records + records:
        if record.T >= 2 and not packing_bound_check(record):
            raise InvariantViolation(f"Packing bound violated at level {record.level}")

    result = UniformSequence(frame_records=frame_records, records=records,
                             constant=_min_metric(records), frame_constant=_min_metric(frame_records),
                             construction=construction)
    say(f"✅ Empirical constant C = {result.constant}", "green")
    return result
