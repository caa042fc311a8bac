"""Exact integer and rational linear algebra.

Matrices are plain lists of rows. Integer matrices hold Python ints,
rational matrices hold :class:`fractions.Fraction`. Nothing here ever
touches floating point.

The Hermite normal form used throughout is the *lower* row-style form:
every nonzero row ends in a positive pivot, pivot columns increase with
the row index, and each entry below a pivot is reduced into
``[0, pivot)``. For a square nonsingular input this is a lower-triangular
matrix, which makes lattice equality a plain matrix comparison.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

IntMatrix = list[list[int]]
RatMatrix = list[list[Fraction]]


class NonContainmentError(ValueError):
    """A sublattice row is not in the span of the claimed superlattice."""

    def __init__(self, message: str, witness: Sequence[int]):
        super().__init__(message)
        self.witness = list(witness)


class RankError(ValueError):
    pass


# --------------------------------------------------------------------------
# small helpers


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> IntMatrix:
    return [[0] * n for _ in range(m)]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col) if x and y) for col in bt] for row in a]


def vecmat(v: Sequence, m: Sequence[Sequence]) -> list:
    """Row vector times matrix."""
    n = len(m[0]) if m else 0
    out = [0] * n
    for coeff, row in zip(v, m):
        if coeff:
            for j, x in enumerate(row):
                out[j] += coeff * x
    return out


def matpow(m: IntMatrix, k: int) -> IntMatrix:
    result = identity(len(m))
    base = [row[:] for row in m]
    while k > 0:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def to_fractions(m: Sequence[Sequence]) -> RatMatrix:
    return [[Fraction(x) for x in row] for row in m]


def common_denominator(values) -> int:
    return reduce(lcm, (Fraction(v).denominator for v in values), 1)


def clear_denominators(rows: Sequence[Sequence]) -> tuple[IntMatrix, int]:
    """Return ``(M, D)`` with integer ``M`` and ``rows == M / D``."""
    den = common_denominator(x for row in rows for x in row)
    return [[int(Fraction(x) * den) for x in row] for row in rows], den


def is_integral(m: Sequence[Sequence]) -> bool:
    return all(Fraction(x).denominator == 1 for row in m for x in row)


# --------------------------------------------------------------------------
# rational elimination


def rref(m: Sequence[Sequence]) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    a = to_fractions(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for j in range(cols):
        piv = next((i for i in range(r, rows) if a[i][j] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][j]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][j] != 0:
                f = a[i][j]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(j)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def det(m: Sequence[Sequence]) -> Fraction:
    """Determinant over Q by Gaussian elimination."""
    a = to_fractions(m)
    n = len(a)
    result = Fraction(1)
    for j in range(n):
        piv = next((i for i in range(j, n) if a[i][j] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != j:
            a[j], a[piv] = a[piv], a[j]
            result = -result
        result *= a[j][j]
        for i in range(j + 1, n):
            if a[i][j] != 0:
                f = a[i][j] / a[j][j]
                a[i] = [x - f * y for x, y in zip(a[i], a[j])]
    return result


def inverse(m: Sequence[Sequence]) -> RatMatrix:
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise RankError("matrix is singular")
    return [row[n:] for row in red]


def solve_left(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Solve ``x @ a == b`` over Q for a full-row-rank ``a``; None if inconsistent."""
    k = len(a)
    # columns of the augmented system: a^T x^T = b^T
    aug = [[Fraction(a[i][j]) for i in range(k)] + [Fraction(b[j])] for j in range(len(b))]
    red, pivots = rref(aug)
    if k in pivots:
        return None
    x = [Fraction(0)] * k
    for row, pc in zip(red, pivots):
        x[pc] = row[k]
    return x


class LeftSolver:
    """Repeated solves of ``x @ a == b`` for one full-row-rank ``a``.

    A set of pivot columns and the inverse of the square submatrix on them
    are computed once; each solve is then a vector-matrix product plus a
    consistency check against the remaining columns.
    """

    def __init__(self, a: Sequence[Sequence]):
        self.a = [list(r) for r in a]
        k = len(self.a)
        _, piv = rref(self.a) if k else ([], [])
        if len(piv) < k:
            raise RankError("matrix is not of full row rank")
        self.pivots = piv
        self.inv = inverse([[self.a[i][j] for j in piv] for i in range(k)]) if k else []

    def solve(self, b: Sequence) -> list[Fraction] | None:
        k = len(self.a)
        if k == 0:
            return [] if not any(b) else None
        x = vecmat([b[j] for j in self.pivots], self.inv)
        if vecmat(x, self.a) != list(b):
            return None
        return x


# --------------------------------------------------------------------------
# Hermite normal form


def _hnf_upper(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, int]:
    """Upper row echelon HNF (pivot leftmost, entries above pivot reduced)."""
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    for j in range(cols):
        if r == rows:
            break
        while True:
            nz = [i for i in range(r, rows) if a[i][j] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][j]))
            a[r], a[piv] = a[piv], a[r]
            pr = a[r]
            clean = True
            for i in range(r + 1, rows):
                if a[i][j]:
                    q = a[i][j] // pr[j]
                    a[i] = [x - q * y for x, y in zip(a[i], pr)]
                    if a[i][j]:
                        clean = False
            if clean:
                break
        if a[r][j] == 0:
            continue
        if a[r][j] < 0:
            a[r] = [-x for x in a[r]]
        pr = a[r]
        for i in range(r):
            if a[i][j]:
                q = a[i][j] // pr[j]
                a[i] = [x - q * y for x, y in zip(a[i], pr)]
        r += 1
    return a, r


def hnf(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Lower row-style Hermite normal form, same shape as ``m``.

    Nonzero rows come first (pivot columns increasing), zero rows last.
    The row span over Z is preserved.
    """
    if not m:
        return []
    cols = len(m[0])
    flipped = [list(row)[::-1] for row in m]
    upper, r = _hnf_upper(flipped)
    nonzero = [row[::-1] for row in reversed(upper[:r])]
    return nonzero + zeros(len(m) - r, cols)


def hnf_basis(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Nonzero rows of :func:`hnf` (a Z-basis of the row lattice)."""
    return [row for row in hnf(m) if any(row)]


def in_row_span(basis: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Membership of an integer vector in the Z-row span of ``basis``."""
    basis = hnf_basis(basis) if basis else []
    if not basis:
        return not any(v)
    x = solve_left(basis, v)
    return x is not None and all(c.denominator == 1 for c in x)


# --------------------------------------------------------------------------
# Smith normal form


def snf(m: Sequence[Sequence[int]]) -> list[int]:
    """Smith invariants ``d1 | d2 | ...`` of an integer matrix.

    Returns ``min(rows, cols)`` nonnegative entries; zeros (if any) come
    last and encode rank deficiency.
    """
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag: list[int] = []
    t = 0
    while t < min(rows, cols):
        entries = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            changed = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        changed = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        changed = True
            if not changed:
                # pivot must divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                changed = True
            if changed:
                entries = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
                entries += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
                _, pi, pj = min(entries)
                if pi != t:
                    a[t], a[pi] = a[pi], a[t]
                if pj != t:
                    for row in a:
                        row[t], row[pj] = row[pj], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag + [0] * (min(rows, cols) - len(diag))


# --------------------------------------------------------------------------
# lattices as integer row spans


@dataclass(frozen=True)
class AbelianQuotient:
    """Finite abelian group ``Z/d1 x ... x Z/dk`` with ``d1 | ... | dk``, all > 1."""

    divisors: tuple[int, ...]

    def __post_init__(self):
        for a, b in zip(self.divisors, self.divisors[1:]):
            if b % a:
                raise ValueError(f"divisor chain broken: {a} does not divide {b}")
        if any(d <= 1 for d in self.divisors):
            raise ValueError("elementary divisors must exceed 1")

    @classmethod
    def from_invariants(cls, invariants: Sequence[int]) -> AbelianQuotient:
        if any(d == 0 for d in invariants):
            raise RankError("quotient is infinite")
        return cls(tuple(d for d in invariants if d != 1))

    @property
    def order(self) -> int:
        return reduce(lambda x, y: x * y, self.divisors, 1)

    def is_elementary(self, prime: int) -> bool:
        return all(d == prime for d in self.divisors)

    def __str__(self):
        if not self.divisors:
            return "0"
        return " x ".join(f"Z/{d}" for d in self.divisors)


def _require_full_rank(m: Sequence[Sequence[int]], name: str):
    if rank(m) != len(m):
        raise RankError(f"{name} is not of full row rank")


def lattice_intersect(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    """HNF basis of the intersection of two integer row lattices."""
    _require_full_rank(a, "first basis")
    _require_full_rank(b, "second basis")
    n = len(a[0])
    stacked = [list(row) + list(row) for row in a] + [list(row) + [0] * n for row in b]
    upper, r = _hnf_upper(stacked)
    inter = [row[n:] for row in upper[:r] if not any(row[:n])]
    if not inter:
        return []
    return hnf_basis(inter)


def coordinates(super_basis: Sequence[Sequence[int]], sub: Sequence[Sequence[int]]) -> IntMatrix:
    """Integer matrix ``X`` with ``X @ super_basis == sub``."""
    out = []
    solver = LeftSolver(super_basis)
    for row in sub:
        x = solver.solve(row)
        if x is None or any(c.denominator != 1 for c in x):
            raise NonContainmentError("row not contained in the superlattice", row)
        out.append([int(c) for c in x])
    return out


def quotient(super_basis: Sequence[Sequence[int]], sub: Sequence[Sequence[int]]) -> AbelianQuotient:
    """Structure of ``span(super) / span(sub)`` (sub must have finite index)."""
    _require_full_rank(super_basis, "superlattice basis")
    x = coordinates(super_basis, sub)
    inv = snf(x)
    if len(inv) < len(super_basis) or 0 in inv:
        raise RankError("sublattice has infinite index")
    return AbelianQuotient.from_invariants(inv)


def integer_kernel_mod(m: Sequence[Sequence[int]], modulus: int) -> IntMatrix:
    """Basis of ``{x in Z^k : x @ m == 0 (mod modulus)}`` for a k x n integer ``m``."""
    k = len(m)
    n = len(m[0]) if k else 0
    rows = [list(m[i]) + [int(i == j) for j in range(k)] for i in range(k)]
    rows += [[modulus * int(i == j) for j in range(n)] + [0] * k for i in range(n)]
    upper, r = _hnf_upper(rows)
    return hnf_basis([row[n:] for row in upper[:r] if not any(row[:n])])


def gcd_list(values) -> int:
    return reduce(gcd, values, 0)


# --------------------------------------------------------------------------
# linear algebra over a prime field GF(q)


def rref_mod(m: Sequence[Sequence[int]], q: int) -> tuple[IntMatrix, list[int]]:
    """Reduced row echelon form over GF(q), zero rows dropped; returns (rows, pivots)."""
    rows = [[x % q for x in r] for r in m]
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, q)
        rows[r] = [x * inv % q for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % q for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def nullspace_mod(m: Sequence[Sequence[int]], q: int, ncols: int | None = None) -> IntMatrix:
    """Basis (in RREF) of ``{x : m @ x == 0}`` over GF(q)."""
    n = ncols if ncols is not None else (len(m[0]) if m else 0)
    red, pivots = rref_mod(m, q) if m else ([], [])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for row, pc in zip(red, pivots):
            x[pc] = -row[f] % q
        basis.append(x)
    return rref_mod(basis, q)[0] if basis else []
