"""The cyclic isometry of ``(sqrt(2) A_{p-1})^d`` and its spectral data.

``sigma`` permutes the ambient coordinates cyclically inside each block of
length ``p``, so ``beta_i -> beta_{i+1}`` with ``beta_0 = -sum beta_i``.
Matrices act on row vectors: ``v -> v @ M``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Callable, Sequence

from . import exact_linalg as la
from . import lattice as lc


class InvarianceError(ValueError):
    """The isometry does not map the lattice onto itself."""


class ConsistencyError(ArithmeticError):
    """An internal cross-check failed; this indicates a bug, not bad input."""


@dataclass(frozen=True, eq=False)
class Isometry:
    """An isometry of ``lattice``, stored both on the basis and on the ambient space."""

    lattice: lc.Lattice
    matrix: tuple[tuple[int, ...], ...]
    order: int
    ambient: tuple[tuple[Fraction | int, ...], ...]

    @classmethod
    def from_ambient(cls, lat: lc.Lattice, ambient, order: int | None = None) -> Isometry:
        """Restrict an ambient linear map to ``lat``; raises if ``lat`` is not preserved."""
        amb = tuple(tuple(_num(x) for x in row) for row in ambient)
        images = la.matmul(lat.vectors, amb)
        rows = []
        for img in images:
            try:
                x = lat.coords(img)
            except ValueError:
                x = None
            if x is None or any(c.denominator != 1 for c in x):
                raise InvarianceError("lattice is not invariant under the map")
            rows.append(tuple(int(c) for c in x))
        # the image must be all of lat, not a proper sublattice
        if abs(la.det(rows)) != 1:
            raise InvarianceError("map sends the lattice onto a proper sublattice")
        if order is None:
            order = _matrix_order(rows)
        iso = cls(lat, tuple(rows), order, amb)
        iso.check()
        return iso

    def check(self):
        m = [list(r) for r in self.matrix]
        if la.matpow(m, self.order) != la.identity(len(m)):
            raise ConsistencyError("matrix power does not return the identity")
        g = self.lattice.gram
        if la.matmul(la.matmul(m, g), la.transpose(m)) != g:
            raise ConsistencyError("Gram matrix is not preserved")

    def restrict(self, other: lc.Lattice) -> Isometry:
        """The same ambient map viewed as an isometry of ``other``."""
        return Isometry.from_ambient(other, self.ambient, self.order)

    def power(self, s: int) -> Isometry:
        amb = la.matpow([list(r) for r in self.ambient], s % self.order)
        return Isometry.from_ambient(self.lattice, amb)

    def apply(self, v: Sequence) -> list[Fraction]:
        """Image of an ambient vector."""
        return la.vecmat(v, self.ambient)

    @cached_property
    def fixed_rank(self) -> int:
        """Rank of the fixed sublattice."""
        m = [[x - int(i == j) for j, x in enumerate(r)] for i, r in enumerate(self.matrix)]
        return len(m) - la.rank(m)

    @property
    def fixed_point_free(self) -> bool:
        return self.fixed_rank == 0

    def one_minus(self) -> list[list[Fraction]]:
        """Ambient matrix of ``1 - sigma``."""
        return [[int(i == j) - x for j, x in enumerate(r)] for i, r in enumerate(self.ambient)]

    def image_one_minus(self, lat: lc.Lattice | None = None) -> lc.Lattice:
        """``(1 - sigma) lat``; defaults to the isometry's own lattice."""
        lat = self.lattice if lat is None else lat
        return lat.transform(self.one_minus())


def _num(x):
    """Exact scalar, kept as ``int`` when integral (faster products)."""
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def _matrix_order(m: Sequence[Sequence[int]], limit: int = 10_000) -> int:
    ident = la.identity(len(m))
    cur = [list(r) for r in m]
    for k in range(1, limit + 1):
        if cur == ident:
            return k
        cur = la.matmul(cur, m)
    raise ValueError("matrix has no finite order below the search limit")


def cyclic_permutation(p: int, d: int = 1) -> list[list[int]]:
    """Ambient matrix of ``e_i -> e_{i+1 mod p}`` in each of ``d`` blocks."""
    n = p * d
    out = la.zeros(n, n)
    for b in range(d):
        for i in range(p):
            out[b * p + i][b * p + (i + 1) % p] = 1
    return out


@lru_cache(maxsize=64)
def coxeter_sigma(p: int, d: int = 1) -> Isometry:
    """The Coxeter element ``sigma = r_1 ... r_{p-1}`` acting diagonally on ``N^d``."""
    return Isometry.from_ambient(lc.build_Nd(p, d), cyclic_permutation(p, d), p)


def theta_isometry(p: int, d: int = 1) -> Isometry:
    """The ``-1`` map on ``N^d``."""
    n = p * d
    return Isometry.from_ambient(lc.build_Nd(p, d), [[-int(i == j) for j in range(n)] for i in range(n)], 2)


# --------------------------------------------------------------------------
# induced action on N°/N = k x l


def _beta_coords(p: int, d: int, v: Sequence) -> list[Fraction]:
    """Coordinates of an ambient vector in the blockwise basis ``beta_1..beta_{p-1}``."""
    betas = lc.beta_vectors(p)
    out: list[Fraction] = []
    for b in range(d):
        block = list(v[b * p:(b + 1) * p])
        x = la.solve_left(betas, block)
        if x is None:
            raise ValueError("vector is not in the span of the roots")
        out.extend(x)
    return out


def label_of(p: int, d: int, v: Sequence) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The class ``(u, a)`` in ``k^d x l^d`` of a vector of ``(N°)^d``.

    Per block, with beta coordinates ``c = u/2 + a (1, 2, ..., p-1)/p``:
    ``a = (2 p c_1) / 2 mod p`` and ``u_i = 2 (c_i - a i / p) mod 2``.
    """
    c = _beta_coords(p, d, v)
    inv2 = pow(2, -1, p)
    u: list[int] = []
    a: list[int] = []
    for b in range(d):
        blk = c[b * (p - 1):(b + 1) * (p - 1)]
        t = 2 * p * blk[0]
        if t.denominator != 1:
            raise ValueError("vector is not in the dual lattice")
        ab = int(t) * inv2 % p
        a.append(ab)
        for i, ci in enumerate(blk, start=1):
            x = 2 * (ci - Fraction(ab * i, p))
            if x.denominator != 1:
                raise ValueError("vector is not in the dual lattice")
            u.append(int(x) % 2)
    return tuple(u), tuple(a)


def code_action(iso: Isometry, p: int, d: int,
                require_l_identity: bool = True) -> Callable[[Sequence[int]], tuple[int, ...]]:
    """The map induced on ``k^d`` (bits ``u``).

    With ``require_l_identity`` it also raises unless ``l^d`` is fixed pointwise.

    The map is read off the ambient action on ``beta_{u,0}`` representatives,
    so it applies to any isometry of ``(N°)^d`` given on the ambient space.
    """
    n = (p - 1) * d
    images = []
    for j in range(n):
        u = [int(i == j) for i in range(n)]
        img_u, img_a = label_of(p, d, iso.apply(_beta_word(p, d, u, [0] * d)))
        if any(img_a):
            raise ValueError("isometry does not preserve the k-part")
        images.append(img_u)
    for j in range(d if require_l_identity else 0):
        a = [int(i == j) for i in range(d)]
        img_u, img_a = label_of(p, d, iso.apply(_beta_word(p, d, [0] * n, a)))
        if list(img_a) != a:
            raise ValueError("isometry does not act trivially on l^d")
        if any(img_u):
            raise ValueError("isometry mixes l^d into k^d")

    def act(u: Sequence[int]) -> tuple[int, ...]:
        out = [0] * n
        for j, bit in enumerate(u):
            if bit % 2:
                out = [(x + y) % 2 for x, y in zip(out, images[j])]
        return tuple(out)

    return act


def _beta_word(p: int, d: int, u: Sequence[int], a: Sequence[int]) -> list[Fraction]:
    out: list[Fraction] = []
    for b in range(d):
        out.extend(lc.beta_u_a(p, u[b * (p - 1):(b + 1) * (p - 1)], a[b]))
    return out


def l_action_sign(iso: Isometry, p: int, d: int) -> tuple[int, ...]:
    """Images of the unit vectors of ``l^d``: entry ``j`` is the scalar by which block ``j`` acts."""
    out = []
    for j in range(d):
        a = [int(i == j) for i in range(d)]
        _, img = label_of(p, d, iso.apply(_beta_word(p, d, [0] * ((p - 1) * d), a)))
        out.append(img[j])
    return tuple(out)


# --------------------------------------------------------------------------
# characteristic polynomial and cyclotomic exponents

Poly = list[int]  # coefficients, lowest degree first


def _ptrim(a: Poly) -> Poly:
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a or [0]


def padd(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return _ptrim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def psub(a: Poly, b: Poly) -> Poly:
    return padd(a, [-x for x in b])


def pmul(a: Poly, b: Poly) -> Poly:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim(out)


def pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Division by a monic or unit-leading polynomial over Z, or exact division otherwise."""
    a, b = _ptrim(a), _ptrim(b)
    if b == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(rem) - 1 < db:
        return [0], rem
    quo = [0] * (len(rem) - db)
    for k in range(len(rem) - 1 - db, -1, -1):
        c = rem[k + db]
        if c % lead:
            return _ptrim(quo), _ptrim(rem)  # not divisible over Z; remainder is nonzero
        c //= lead
        quo[k] = c
        if c:
            for j, y in enumerate(b):
                rem[k + j] -= c * y
    return _ptrim(quo), _ptrim(rem)


def pexact_div(a: Poly, b: Poly) -> Poly:
    q, r = pdivmod(a, b)
    if r != [0]:
        raise ConsistencyError("inexact polynomial division")
    return q


def ppow(a: Poly, k: int) -> Poly:
    out = [1]
    for _ in range(k):
        out = pmul(out, a)
    return out


def charpoly(m: Sequence[Sequence[int]]) -> Poly:
    """``det(x I - M)`` by fraction-free (Bareiss) elimination over ``Z[x]``."""
    n = len(m)
    if n == 0:
        return [1]
    a: list[list[Poly]] = [[[-m[i][j], int(i == j)] if i == j else [-m[i][j]] for j in range(n)]
                           for i in range(n)]
    a = [[_ptrim(x) for x in row] for row in a]
    sign = 1
    prev: Poly = [1]
    for k in range(n - 1):
        if a[k][k] == [0]:
            swap = next((i for i in range(k + 1, n) if a[i][k] != [0]), None)
            if swap is None:
                return [0]
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = psub(pmul(a[i][j], a[k][k]), pmul(a[i][k], a[k][j]))
                a[i][j] = pexact_div(num, prev)
            a[i][k] = [0]
        prev = a[k][k]
    return [sign * x for x in a[n - 1][n - 1]]


def divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def mobius(n: int) -> int:
    out, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            out = -out
        k += 1
    return -out if n > 1 else out


def cyclotomic(k: int) -> Poly:
    """``Phi_k`` from ``x^k - 1 = prod_{j | k} Phi_j``."""
    num = [-1] + [0] * (k - 1) + [1]
    for j in divisors(k)[:-1]:
        num = pexact_div(num, cyclotomic(j))
    return num


def x_pow_minus_one(d: int) -> Poly:
    return [-1] + [0] * (d - 1) + [1]


@dataclass(frozen=True)
class SpectralData:
    """Cyclotomic data of a finite-order isometry.

    ``n[k]`` is the multiplicity of ``Phi_k`` in the characteristic
    polynomial, ``m[d]`` the exponent of ``x^d - 1`` in
    ``det(x - sigma) = prod_d (x^d - 1)^{m_d}``, and ``r[i]`` the dimension
    of the ``xi^{-i}`` eigenspace, ``i = 0..order-1``.
    """

    order: int
    char_poly: tuple[int, ...]
    n: dict[int, int]
    m: dict[int, int]
    r: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.char_poly) - 1

    @property
    def sum_dm(self) -> int:
        return sum(d * x for d, x in self.m.items())

    @property
    def sum_m(self) -> int:
        return sum(self.m.values())

    def prod_d_m(self) -> Fraction:
        """``prod_d d^{m_d}`` as an exact rational."""
        out = Fraction(1)
        for d, x in self.m.items():
            out *= Fraction(d) ** x
        return out


def spectral_from_matrix(m: Sequence[Sequence[int]], order: int) -> SpectralData:
    cp = charpoly(m)
    # cyclotomic multiplicities; every eigenvalue is an order-th root of unity
    rest = cp
    n: dict[int, int] = {}
    for k in divisors(order):
        phi = cyclotomic(k)
        e = 0
        while True:
            q, r = pdivmod(rest, phi)
            if r != [0]:
                break
            rest, e = q, e + 1
        n[k] = e
    if rest != [1]:
        raise ConsistencyError("characteristic polynomial has a non-cyclotomic factor")
    mexp = {d: sum(mobius(k // d) * n[k] for k in divisors(order) if k % d == 0)
            for d in divisors(order)}
    # prod (x^d - 1)^{m_d} must reproduce the characteristic polynomial
    pos, neg = [1], [1]
    for d, e in mexp.items():
        if e > 0:
            pos = pmul(pos, ppow(x_pow_minus_one(d), e))
        elif e < 0:
            neg = pmul(neg, ppow(x_pow_minus_one(d), -e))
    if pos != pmul(cp, neg):
        raise ConsistencyError("m_d exponents do not reproduce the characteristic polynomial")
    r = tuple(sum(e for d, e in mexp.items() if (d * i) % order == 0) for i in range(order))
    # an eigenvalue xi^{-i} has multiplicative order order/gcd(i, order); r_i must be n of it
    for i in range(order):
        if r[i] != n[order // gcd(i, order)]:
            raise ConsistencyError(f"r_{i} differs from the multiplicity of its primitive root")
    return SpectralData(order, tuple(cp), n, mexp, r)


def spectral(iso: Isometry) -> SpectralData:
    return spectral_from_matrix(iso.matrix, iso.order)


def same_order_classes_agree(spec: SpectralData) -> bool:
    """``r_i = r_j`` whenever ``xi^i`` and ``xi^j`` have the same multiplicative order."""
    seen: dict[int, int] = {}
    for i, x in enumerate(spec.r):
        g = gcd(i, spec.order)
        if seen.setdefault(g, x) != x:
            return False
    return True
