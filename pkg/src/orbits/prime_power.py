"""
Prime-power case
For d = g^r the block matrix B has companion(g) on the diagonal and identities on
the superdiagonal. Each block gets its own split prime p_1 > ... > p_r and the
exponents are balanced so that p_{i+1}^{k_{i+1}} <= p_i^{k_i} < p_{i+1}^{k_{i+1}+1}.
"""

from dataclasses import replace
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple

from errors import InputError
from intlinalg import IntMatrix, companion
from intpoly import IntPoly
from modarith import SplitPrimeCert, find_split_primes
from orbits.irreducible import choose_root, construct_irreducible, eigen_point
from orbits.torus import OrbitRecord, TorusPoint, period_from_multiple, record_with_period


def jordan_block_matrix(D: IntMatrix, r: int) -> IntMatrix:
    """diag(D, ..., D) plus identity blocks on the superdiagonal"""
    if r < 1:
        raise InputError("Block count must be positive")
    m = D.n
    size = m * r
    rows = [[0] * size for _ in range(size)]
    for blk in range(r):
        for i in range(m):
            for j in range(m):
                rows[blk * m + i][blk * m + j] = D[i][j]
            if blk + 1 < r:
                rows[blk * m + i][(blk + 1) * m + i] = 1
    return IntMatrix.from_rows(rows)


def largest_exponent(p: int, bound: int) -> int:
    """Largest j >= 1 with p^j <= bound (1 when even p > bound)"""
    j, power = 1, p
    while power * p <= bound:
        power *= p
        j += 1
    return j


def balanced_exponents(primes: Sequence[int], k: int) -> List[int]:
    """k_1 = k and k_{i+1} = floor(k_i log p_i / log p_{i+1}), evaluated exactly"""
    exponents = [k]
    for prev, p in zip(primes, primes[1:]):
        exponents.append(largest_exponent(p, prev ** exponents[-1]))
    return exponents


def prime_power_point(g: IntPoly, certs: Sequence[SplitPrimeCert],
                      exponents: Sequence[int]) -> Tuple[TorusPoint, List[dict]]:
    """v = (w_1/p_1^k_1, ..., w_r/p_r^k_r) on the common denominator"""
    moduli = [c.p ** e for c, e in zip(certs, exponents)]
    M = 1
    for q in moduli:
        M *= q
    u, data = [], []
    for cert, e, q in zip(certs, exponents, moduli):
        choice = choose_root(g, cert, e)
        w, _ = eigen_point(g, cert.p, e, choice.lift)
        u.extend(x * (M // q) for x in w.u)
        data.append({"p": cert.p, "k": e, "root": choice.root, "lift": choice.lift, "order": choice.period})
    return TorusPoint(tuple(u), M), data


def block_period_multiple(data: Sequence[dict]) -> int:
    """
    Block j of B^t·v carries C(t, j-i)·b_j^(t-j+i)·w_j in slot i, so
    lcm(ord(b_j), p_j^(k_j+s_j)) with p_j^s_j >= j is a period multiple for slot j.
    """
    N = 1
    for j, block in enumerate(data, start=1):
        p, s = block["p"], 0
        while p ** s < j:
            s += 1
        N = lcm(N, block["order"], p ** (block["k"] + s))
    return N


def construct_prime_power(g: IntPoly, r: int, k: int,
                          certs: Optional[Sequence[SplitPrimeCert]] = None,
                          exclude: Tuple[int, ...] = (), jobs: int = 1,
                          scan_cap: Optional[int] = None) -> OrbitRecord:
    """Orbit of the Jordan-like block matrix for g^r at level k"""
    if k < 1:
        raise InputError("Level must be positive")
    if certs is None:
        certs = find_split_primes(g, r, exclude=exclude, jobs=jobs, scan_cap=scan_cap)
    if len(certs) != r or len({c.p for c in certs}) != r:
        raise InputError(f"Need {r} distinct split primes for {g}")
    certs = sorted(certs, key=lambda c: c.p, reverse=True)
    if r == 1:
        record = construct_irreducible(g, certs[0], k)
        return replace(record, construction="prime-power", prime_data={"blocks": [record.prime_data]})

    exponents = balanced_exponents([c.p for c in certs], k)
    point, data = prime_power_point(g, certs, exponents)
    B = jordan_block_matrix(companion(g), r)
    T = period_from_multiple(B, point, block_period_multiple(data))
    # distinct points of (1/M)Z^n are at least 1/M apart
    return record_with_period(B, point, T, "prime-power", lower_bound=Fraction(1, point.m ** 2),
                              level=k, prime_data={"blocks": data})
