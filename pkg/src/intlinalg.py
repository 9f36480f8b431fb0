"""
Integer Linear Algebra
Exact integer and rational matrix layer: characteristic and minimal polynomials,
companion and Krylov matrices, the ergodicity test and the primary cyclic
decomposition P·A = J·P.
"""

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

import config
from console import say
from errors import InputError, InvariantViolation
from intpoly import IntPoly, factor_rational, has_root_of_unity_factor


def _check_int(value):
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"Matrix entries must be integers, got {value!r}")
    return value


@dataclass(frozen=True)
class IntMatrix:
    """Dense square integer matrix stored as a tuple of rows"""

    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(_check_int(x) for x in row) for row in self.rows)
        if not rows:
            raise InputError("Empty matrix")
        if any(len(row) != len(rows) for row in rows):
            raise InputError(f"Matrix must be square, got {len(rows)} rows of lengths "
                             f"{[len(r) for r in rows]}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, n: int) -> "IntMatrix":
        return cls(tuple((0,) * n for _ in range(n)))

    @classmethod
    def diag(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls(tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, i):
        return self.rows[i]

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        cols = [other.column(j) for j in range(other.n)]
        return IntMatrix(tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                               for row in self.rows))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __mul__(self, c: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(c * a for a in r) for r in self.rows))

    __rmul__ = __mul__

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(self.column(j) for j in range(self.n)))

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.n))

    def apply(self, v: Sequence) -> tuple:
        """Column action A·v"""
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.rows)

    def left_apply(self, v: Sequence) -> tuple:
        """Row action v·A"""
        return tuple(sum(v[i] * self.rows[i][j] for i in range(self.n)) for j in range(self.n))

    def power(self, e: int) -> "IntMatrix":
        if e < 0:
            raise InputError("Negative matrix power")
        result, base = IntMatrix.identity(self.n), self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def power_mod(self, e: int, m: int) -> "IntMatrix":
        result, base = IntMatrix.identity(self.n).mod(m), self.mod(m)
        while e:
            if e & 1:
                result = (result @ base).mod(m)
            base = (base @ base).mod(m)
            e >>= 1
        return result

    def mod(self, m: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(a % m for a in r) for r in self.rows))

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)

    def to_json(self) -> List[List[int]]:
        return [list(r) for r in self.rows]

    def __str__(self):
        width = max(len(str(a)) for r in self.rows for a in r)
        return "\n".join("[" + " ".join(str(a).rjust(width) for a in r) + "]" for r in self.rows)


def block_diag(*blocks: IntMatrix) -> IntMatrix:
    n = sum(b.n for b in blocks)
    rows = []
    offset = 0
    for b in blocks:
        for r in b.rows:
            rows.append((0,) * offset + r + (0,) * (n - offset - b.n))
        offset += b.n
    return IntMatrix(tuple(rows))


# ====================================================================== parsing

def parse_matrix(text: str) -> IntMatrix:
    """JSON array-of-rows, or whitespace separated rows of integers"""
    text = text.strip()
    if not text:
        raise InputError("Empty matrix input")
    if text.startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(f"Matrix JSON does not parse: {e}") from e
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise InputError("Matrix JSON must be an array of rows")
        return IntMatrix.from_rows(data)
    try:
        rows = [[int(tok) for tok in line.split()] for line in text.splitlines() if line.strip()]
    except ValueError as e:
        raise InputError(f"Matrix text must hold integers only: {e}") from e
    return IntMatrix.from_rows(rows)


def load_matrix(source: str) -> IntMatrix:
    """Matrix from a file path, or inline JSON when no such file exists"""
    if os.path.isfile(source):
        with open(source, "r") as fh:
            return parse_matrix(fh.read())
    return parse_matrix(source)


# ====================================================================== determinants / inverses

def det(M: IntMatrix) -> int:
    """Bareiss fraction-free elimination"""
    a = [list(r) for r in M.rows]
    n = M.n
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rational_inverse(M: IntMatrix) -> List[List[Fraction]]:
    n = M.n
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M.rows)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if a[i][col] != 0), None)
        if pivot is None:
            raise InputError("Matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                c = a[i][col]
                a[i] = [x - c * y for x, y in zip(a[i], a[col])]
    return [r[n:] for r in a]


def adjugate(M: IntMatrix) -> IntMatrix:
    """adj(M) = det(M)·M^{-1}, exact integers"""
    d = det(M)
    inv = rational_inverse(M)
    return IntMatrix(tuple(tuple(int(x * d) for x in r) for r in inv))


# ====================================================================== nullspaces

def rational_nullspace(rows: Sequence[Sequence]) -> List[List[Fraction]]:
    """Basis of {x : M x = 0} over Q, one vector per free column in increasing order"""
    if not rows:
        return []
    ncols = len(rows[0])
    a = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                factor = a[i][c]
                a[i] = [x - factor * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row, pc in enumerate(pivots):
            vec[pc] = -a[row][free]
        basis.append(vec)
    return basis


def left_kernel(M: IntMatrix) -> List[List[Fraction]]:
    """Basis of {x : x·M = 0}"""
    return rational_nullspace(M.transpose().rows)


def clear_denominators(v: Sequence) -> Tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector"""
    den = reduce(lcm, (Fraction(x).denominator for x in v), 1)
    ints = [int(Fraction(x) * den) for x in v]
    g = reduce(gcd, ints, 0)
    return tuple(x // g for x in ints) if g else tuple(ints)


class _Span:
    """Incremental echelon basis for membership tests"""

    def __init__(self, n: int):
        self.n = n
        self.pivots: List[Tuple[int, List[Fraction]]] = []

    def reduce(self, v):
        v = [Fraction(x) for x in v]
        for col, row in self.pivots:
            if v[col] != 0:
                c = v[col]
                v = [x - c * y for x, y in zip(v, row)]
        return v

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    def add(self, v) -> bool:
        v = self.reduce(v)
        col = next((i for i, x in enumerate(v) if x != 0), None)
        if col is None:
            return False
        inv = 1 / v[col]
        self.pivots.append((col, [x * inv for x in v]))
        return True

    @property
    def dim(self) -> int:
        return len(self.pivots)


# ====================================================================== polynomials of matrices

def poly_at(f: IntPoly, A: IntMatrix) -> IntMatrix:
    """f(A) by Horner"""
    n = A.n
    result = IntMatrix.zeros(n)
    for c in reversed(f.coeffs):
        result = result @ A + IntMatrix.identity(n) * c
    return result


def char_poly(A: IntMatrix) -> IntPoly:
    """det(xI - A) by Faddeev-LeVerrier"""
    n = A.n
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    M = IntMatrix.zeros(n)
    I = IntMatrix.identity(n)
    for k in range(1, n + 1):
        M = A @ M + I * coeffs[n - k + 1]
        q, r = divmod(-(A @ M).trace(), k)
        if r:
            raise InvariantViolation("Faddeev-LeVerrier trace not divisible")
        coeffs[n - k] = q
    return IntPoly(tuple(coeffs))


def companion(f: IntPoly) -> IntMatrix:
    """Superdiagonal ones, last row (c_0, ..., c_{n-1}) with f = x^n - sum c_i x^i"""
    if f.degree < 1:
        raise InputError("Companion matrix needs degree >= 1")
    if not f.is_monic:
        raise InputError(f"Companion matrix needs a monic polynomial, got {f}")
    n = f.degree
    rows = [tuple(int(j == i + 1) for j in range(n)) for i in range(n - 1)]
    rows.append(tuple(f.recurrence_coeffs()))
    return IntMatrix(tuple(rows))


def krylov(e: Sequence[int], A: IntMatrix) -> IntMatrix:
    """Rows e, eA, ..., eA^{n-1}"""
    if len(e) != A.n:
        raise InputError(f"Vector length {len(e)} does not match dimension {A.n}")
    if not any(e):
        raise InputError("Krylov matrix needs a nonzero vector")
    rows = [tuple(e)]
    for _ in range(A.n - 1):
        rows.append(A.left_apply(rows[-1]))
    return IntMatrix(tuple(rows))


def minimal_poly(A: IntMatrix) -> IntPoly:
    """Least-degree annihilator over Q, as a primitive integer polynomial"""
    n = A.n
    powers = [IntMatrix.identity(n)]
    for d in range(1, n + 1):
        powers.append(powers[-1] @ A)
        columns = [[x for r in P.rows for x in r] for P in powers]
        system = [[col[i] for col in columns] for i in range(n * n)]
        kernel = rational_nullspace(system)
        if kernel:
            return IntPoly(clear_denominators(kernel[0])).primitive()
    raise InvariantViolation("No annihilator of degree <= n (Cayley-Hamilton failed)")


def frobenius_norm_sq(M: IntMatrix) -> int:
    return sum(a * a for r in M.rows for a in r)


# ====================================================================== ergodicity

@dataclass(frozen=True)
class ErgodicityVerdict:
    ergodic: bool
    reason: str
    witness: Optional[int] = None

    def __bool__(self):
        return self.ergodic


def is_ergodic(A: IntMatrix) -> ErgodicityVerdict:
    """det(A) != 0 and no eigenvalue is a root of unity"""
    if det(A) == 0:
        return ErgodicityVerdict(False, "singular matrix (det = 0)")
    found, m = has_root_of_unity_factor(char_poly(A))
    if found:
        return ErgodicityVerdict(False, f"cyclotomic factor Phi_{m} divides the characteristic polynomial", m)
    return ErgodicityVerdict(True, "no root-of-unity eigenvalue and det != 0")


# ====================================================================== cyclic vectors

def _search_vectors(n: int):
    for i in range(n):
        yield tuple(int(i == j) for j in range(n))
    radius = config.GENERATOR_SEARCH_RADIUS
    others = [v for v in product(range(-radius, radius + 1), repeat=n) if any(v)]
    for v in sorted(others, key=lambda v: (sum(abs(x) for x in v), v)):
        yield v


def find_cyclic_vector(M: IntMatrix) -> Tuple[int, ...]:
    """Small integer vector beta with det(krylov(beta, M)) != 0"""
    for v in _search_vectors(M.n):
        if det(krylov(v, M)) != 0:
            return v
    raise InputError("No cyclic vector in the search box (matrix is not cyclic)")


# ====================================================================== primary decomposition

@dataclass(frozen=True)
class PrimaryBlock:
    generator: Tuple[int, ...]
    g: IntPoly
    exponent: int
    offset: int

    @property
    def d(self) -> IntPoly:
        return self.g ** self.exponent

    @property
    def size(self) -> int:
        return self.d.degree

    @property
    def J(self) -> IntMatrix:
        return companion(self.d)


@dataclass(frozen=True)
class PrimaryDecomposition:
    P: IntMatrix
    blocks: Tuple[PrimaryBlock, ...]

    @property
    def J(self) -> IntMatrix:
        return block_diag(*(b.J for b in self.blocks))

    def to_json(self):
        return {
            "P": self.P.to_json(),
            "blocks": [{"generator": list(b.generator), "g": b.g.to_json(), "exponent": b.exponent,
                        "d": b.d.to_json(), "offset": b.offset} for b in self.blocks],
        }


def primary_decomposition(A: IntMatrix) -> PrimaryDecomposition:
    """Integer P and companion blocks J_i with P·A = J·P, d_i a power of an irreducible"""
    n = A.n
    f = char_poly(A)
    picks: List[Tuple[Tuple[int, ...], IntPoly, int]] = []

    for g, alpha in factor_rational(f):
        if not g.is_monic:
            raise InvariantViolation(f"Irreducible factor {g} of a monic polynomial is not monic")
        m = g.degree
        h = poly_at(g, A)
        h_powers = [IntMatrix.identity(n)]
        for _ in range(alpha):
            h_powers.append(h_powers[-1] @ h)
        kernels = [left_kernel(hp) for hp in h_powers]
        chosen: List[Tuple[Tuple[int, ...], int]] = []
        for e in range(alpha, 0, -1):
            span = _Span(n)
            for v in kernels[e - 1]:
                span.add(v)
            for v, top in chosen:
                w = v
                for _ in range(top - e):
                    w = h.left_apply(w)
                for _ in range(m):
                    span.add(w)
                    w = A.left_apply(w)
            for b in kernels[e]:
                if span.contains(b):
                    continue
                v = clear_denominators(b)
                chosen.append((v, e))
                w = v
                for _ in range(m):
                    span.add(w)
                    w = A.left_apply(w)
        for v, e in chosen:
            picks.append((v, g, e))

    rows = []
    blocks = []
    for v, g, e in picks:
        block = PrimaryBlock(generator=v, g=g, exponent=e, offset=len(rows))
        w = v
        for _ in range(block.size):
            rows.append(w)
            w = A.left_apply(w)
        blocks.append(block)

    if len(rows) != n:
        raise InvariantViolation(f"Cyclic blocks cover dimension {len(rows)}, expected {n}")
    decomposition = PrimaryDecomposition(P=IntMatrix(tuple(rows)), blocks=tuple(blocks))
    verify_decomposition(A, decomposition, f)
    say(f"🧩 Primary decomposition: {len(blocks)} block(s) "
        f"{[str(b.d) for b in blocks]}", "white")
    return decomposition


def verify_decomposition(A: IntMatrix, decomposition: PrimaryDecomposition,
                         f: Optional[IntPoly] = None):
    """Raise InvariantViolation unless P·A = J·P, det P != 0 and prod d_i = char poly"""
    P, J = decomposition.P, decomposition.J
    if det(P) == 0:
        raise InvariantViolation("Conjugator P is singular")
    if P @ A != J @ P:
        raise InvariantViolation("P·A != J·P")
    f = f if f is not None else char_poly(A)
    product_d = IntPoly((1,))
    for b in decomposition.blocks:
        product_d = product_d * b.d
    if product_d != f:
        raise InvariantViolation(f"Product of block polynomials {product_d} != {f}")
