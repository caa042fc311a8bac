"""Rational lattices with Gram data.

A :class:`Lattice` is ``(1/denom) * rowspan(basis)`` inside a rational
ambient space carrying a symmetric Gram matrix. Equality compares the
canonical lower Hermite form of :mod:`orbilat.exact_linalg`.

The lattice ``N = sqrt(2) A_{p-1}`` lives in ``Q^p`` with ambient Gram
``2 * Id``: the unit vectors play the role of ``sqrt(2) e_i`` and every
coordinate stays rational.
"""
from __future__ import annotations

import random
from contextlib import contextmanager
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import floor, gcd, isqrt, lcm
from typing import Iterable, Sequence

from . import exact_linalg as la

DEFAULT_BUDGET = 10**7
_budget = [DEFAULT_BUDGET]


@contextmanager
def enumeration_budget(nodes: int):
    """Temporarily change the node budget used when no explicit budget is passed."""
    if nodes <= 0:
        raise ValueError("budget must be positive")
    old = _budget[0]
    _budget[0] = nodes
    try:
        yield
    finally:
        _budget[0] = old


def _resolve(budget: int | None) -> int:
    return _budget[0] if budget is None else budget


class EnumerationBudgetError(RuntimeError):
    """Raised when a short-vector enumeration would exceed its node budget."""

    def __init__(self, budget: int):
        super().__init__(f"enumeration exceeded budget of {budget} nodes")
        self.budget = budget


@dataclass(frozen=True, eq=False)
class Lattice:
    """``(1/denom) * rowspan(basis)`` in an ambient space with Gram ``ambient_gram``.

    An independent basis is kept as given (so ``gram`` is the Gram matrix of
    that basis); a dependent generating set is replaced by its HNF basis.
    """

    ambient_gram: tuple[tuple[Fraction, ...], ...]
    denom: int
    basis: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = [list(r) for r in self.basis]
        if la.rank(rows) != len(rows):
            rows = la.hnf_basis(rows)
        g = la.gcd_list([self.denom] + [x for r in rows for x in r])
        if g > 1:
            rows = [[x // g for x in r] for r in rows]
        object.__setattr__(self, "denom", self.denom // g if g > 1 else self.denom)
        object.__setattr__(self, "basis", tuple(tuple(r) for r in rows))
        object.__setattr__(
            self, "ambient_gram", tuple(tuple(Fraction(x) for x in r) for r in self.ambient_gram)
        )

    @cached_property
    def canonical(self) -> tuple[tuple[int, ...], ...]:
        """Lower HNF of the basis; equal lattices have equal canonical forms."""
        return tuple(map(tuple, la.hnf_basis(self.basis)))

    # -- construction -----------------------------------------------------

    @classmethod
    def from_vectors(cls, ambient_gram, vectors: Iterable[Sequence]) -> Lattice:
        """Lattice spanned by rational ambient vectors."""
        vecs = [list(v) for v in vectors]
        mat, den = la.clear_denominators(vecs)
        lat = cls(tuple(map(tuple, ambient_gram)), den, tuple(map(tuple, mat)))
        return lat

    # -- basic data -------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return len(self.ambient_gram)

    @cached_property
    def vectors(self) -> list[list[Fraction]]:
        """Basis vectors in ambient coordinates."""
        return [[Fraction(x, self.denom) for x in row] for row in self.basis]

    @cached_property
    def gram(self) -> list[list[Fraction]]:
        v = self.vectors
        vg = la.matmul(v, self.ambient_gram)
        return la.matmul(vg, la.transpose(v))

    @cached_property
    def det(self) -> Fraction:
        return la.det(self.gram)

    def inner(self, x: Sequence, y: Sequence) -> Fraction:
        """Inner product of two ambient vectors."""
        return sum((a * b for a, b in zip(la.vecmat(x, self.ambient_gram), y)), Fraction(0))

    @cached_property
    def _solver(self) -> la.LeftSolver:
        return la.LeftSolver(self.basis)

    def coords(self, v: Sequence) -> list[Fraction]:
        """Rational coordinates of an ambient vector w.r.t. the basis."""
        x = self._solver.solve([self.denom * Fraction(t) for t in v])
        if x is None:
            raise ValueError("vector is not in the rational span of the lattice")
        return x

    def to_ambient(self, coords: Sequence) -> list[Fraction]:
        return la.vecmat(coords, self.vectors)

    def __contains__(self, v) -> bool:
        try:
            x = self.coords(v)
        except ValueError:
            return False
        return all(c.denominator == 1 for c in x)

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return (self.denom, self.canonical, self.ambient_gram) == (
            other.denom, other.canonical, other.ambient_gram)

    def __hash__(self):
        return hash((self.denom, self.canonical))

    def __repr__(self):
        return f"Lattice(rank={self.rank}, ambient_dim={self.ambient_dim}, denom={self.denom})"

    def contains_lattice(self, other: Lattice) -> bool:
        return all(v in self for v in other.vectors)

    def transform(self, ambient_matrix: Sequence[Sequence]) -> Lattice:
        """Image of the lattice under ``v -> v @ ambient_matrix``."""
        return Lattice.from_vectors(self.ambient_gram, la.matmul(self.vectors, ambient_matrix))


def scaled_bases(*lattices: Lattice) -> tuple[int, list[la.IntMatrix]]:
    """Integer bases of several lattices over a common denominator."""
    den = 1
    for lat in lattices:
        den = lcm(den, lat.denom)
    return den, [[[x * (den // lat.denom) for x in row] for row in lat.basis] for lat in lattices]


def index(super_lattice: Lattice, sub: Lattice) -> la.AbelianQuotient:
    """Structure of ``super / sub``."""
    _, (a, b) = scaled_bases(super_lattice, sub)
    return la.quotient(a, b)


def intersect(a: Lattice, b: Lattice) -> Lattice:
    den, (ma, mb) = scaled_bases(a, b)
    inter = la.lattice_intersect(ma, mb)
    return Lattice(a.ambient_gram, den, tuple(map(tuple, inter)))


def lattice_sum(*lattices: Lattice) -> Lattice:
    den, mats = scaled_bases(*lattices)
    rows = [row for m in mats for row in m]
    return Lattice(lattices[0].ambient_gram, den, tuple(map(tuple, rows)))


def orthogonal_sum(a: Lattice, b: Lattice) -> Lattice:
    n, m = a.ambient_dim, b.ambient_dim
    gram = [list(r) + [0] * m for r in a.ambient_gram] + [[0] * n + list(r) for r in b.ambient_gram]
    vecs = [list(v) + [0] * m for v in a.vectors] + [[0] * n + list(v) for v in b.vectors]
    return Lattice.from_vectors(gram, vecs)


def direct_power(lat: Lattice, d: int) -> Lattice:
    out = lat
    for _ in range(d - 1):
        out = orthogonal_sum(out, lat)
    return out


# --------------------------------------------------------------------------
# the lattice sqrt(2) A_{p-1}


def _check_p(p: int):
    if not isinstance(p, int) or p < 3 or p % 2 == 0:
        raise ValueError(f"p must be an odd integer >= 3, got {p!r}")


def beta_vectors(p: int) -> list[list[Fraction]]:
    """``beta_i = eps_i - eps_{i+1}`` for i = 1..p-1, in ambient coordinates."""
    _check_p(p)
    return [[Fraction(int(j == i) - int(j == i + 1)) for j in range(p)] for i in range(p - 1)]


def ambient_gram_N(p: int, d: int = 1) -> list[list[int]]:
    n = p * d
    return [[2 * int(i == j) for j in range(n)] for i in range(n)]


def build_N(p: int) -> Lattice:
    """The lattice ``sqrt(2) A_{p-1}`` with Gram 4 on the diagonal and -2 off it."""
    _check_p(p)
    return Lattice.from_vectors(ambient_gram_N(p), beta_vectors(p))


@lru_cache(maxsize=64)
def build_Nd(p: int, d: int) -> Lattice:
    return direct_power(build_N(p), d)


def gamma_vector(p: int) -> list[Fraction]:
    """``gamma = (1/p) sum i beta_i = (1/p)(eps_1+...+eps_p) - eps_p``."""
    _check_p(p)
    g = [Fraction(1, p)] * p
    g[-1] -= 1
    return g


def beta_u_a(p: int, u: Sequence[int], a: int) -> list[Fraction]:
    """``beta_{u,a} = 1/2 sum u_i beta_i + a gamma`` in ambient coordinates of one block."""
    betas = beta_vectors(p)
    gam = gamma_vector(p)
    out = [a * g for g in gam]
    for ui, b in zip(u, betas):
        if ui:
            out = [x + Fraction(ui, 2) * y for x, y in zip(out, b)]
    return out


# --------------------------------------------------------------------------
# duals and parity


def dual_lattice(lat: Lattice) -> Lattice:
    """``L° = {x in Q L : <x, L> in Z}``."""
    ginv = la.inverse(lat.gram)
    return Lattice.from_vectors(lat.ambient_gram, la.matmul(ginv, lat.vectors))


def parity_report(lat: Lattice, samples: int = 16, seed: int = 0) -> dict[str, bool]:
    """Integral / even / unimodular flags read off the Gram matrix.

    Evenness is also confirmed on random integer combinations of the basis.
    """
    g = lat.gram
    integral = la.is_integral(g)
    even = integral and all(g[i][i].denominator == 1 and g[i][i].numerator % 2 == 0
                            for i in range(lat.rank))
    if even:
        rng = random.Random(seed)
        for _ in range(samples):
            x = [rng.randint(-3, 3) for _ in range(lat.rank)]
            norm = sum(x[i] * g[i][j] * x[j] for i in range(lat.rank) for j in range(lat.rank))
            if norm.denominator != 1 or norm.numerator % 2:
                raise AssertionError("even Gram diagonal but odd vector norm")
    unimodular = integral and abs(lat.det) == 1
    return {"integral": integral, "even": even, "unimodular": unimodular}


# --------------------------------------------------------------------------
# short-vector enumeration


class _Enumerator:
    """Exact Fincke-Pohst enumeration over a (shifted) lattice.

    The Gram matrix is decomposed as ``x G x^T = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2``
    with rational ``q``; everything is then rescaled to integers so the
    inner loop only does integer arithmetic and ``isqrt``.
    """

    def __init__(self, gram: Sequence[Sequence], shift: Sequence | None = None):
        n = len(gram)
        q = la.to_fractions(gram)
        for i in range(n):
            if q[i][i] <= 0:
                raise ValueError("Gram matrix is not positive definite")
            for j in range(i + 1, n):
                q[j][i] = q[i][j]
                q[i][j] = q[i][j] / q[i][i]
            for k in range(i + 1, n):
                for l in range(k, n):
                    q[k][l] -= q[k][i] * q[i][l]
        self.n = n
        shift = [Fraction(0)] * n if shift is None else [Fraction(s) for s in shift]
        self.Y = la.common_denominator(shift)
        self.residues = [int(s * self.Y) % self.Y for s in shift]
        offdiag = [q[i][j] for i in range(n) for j in range(i + 1, n)]
        self.Dq = la.common_denominator(offdiag)
        self.qint = [[int(q[i][j] * self.Dq) if j > i else 0 for j in range(n)] for i in range(n)]
        diag = [q[i][i] for i in range(n)]
        self.b = la.common_denominator(diag)
        self.a = [int(x * self.b) for x in diag]
        # norm = sum a_i T_i^2 / (b (Dq Y)^2)
        self.scale = self.b * (self.Dq * self.Y) ** 2

    def run(self, bound: Fraction, budget: int, keep_vectors: bool):
        bound = Fraction(bound)
        n = self.n
        if bound < 0:
            return Counter(), []
        limit_num = bound.numerator * self.scale
        bd = bound.denominator
        w = [ai * bd for ai in self.a]
        step = self.Dq * self.Y
        counts: Counter = Counter()
        vecs: list = []
        Z = [0] * n
        nodes = 0

        def rec(i: int, remaining: int, used: int):
            nonlocal nodes
            nodes += 1
            if nodes > budget:
                raise EnumerationBudgetError(budget)
            s = sum(self.qint[i][j] * Z[j] for j in range(i + 1, n))
            base = self.Dq * self.residues[i] + s
            S = isqrt(remaining // w[i])
            # T = base + step*k  with  -S <= T <= S
            kmin = -((S + base) // step)
            kmax = (S - base) // step
            for k in range(kmin, kmax + 1):
                T = base + step * k
                val = w[i] * T * T
                if val > remaining:
                    continue
                Z[i] = self.residues[i] + self.Y * k
                if i == 0:
                    counts[used + val] += 1
                    if keep_vectors:
                        vecs.append((used + val, tuple(Fraction(z, self.Y) for z in Z)))
                else:
                    rec(i - 1, remaining - val, used + val)
            Z[i] = 0

        if n == 0:
            counts[0] += 1
            return self._finish(counts, vecs, bd)
        rec(n - 1, limit_num, 0)
        return self._finish(counts, vecs, bd)

    def _finish(self, counts, vecs, bd):
        denom = self.scale * bd
        out = Counter({Fraction(k, denom): c for k, c in counts.items()})
        return out, [(Fraction(k, denom), v) for k, v in vecs]


def enumerate_norms(gram, bound, shift=None, budget: int | None = None) -> Counter:
    """Counts of vectors ``x + shift`` (x integral) by norm, for norms <= bound."""
    counts, _ = _Enumerator(gram, shift).run(bound, _resolve(budget), keep_vectors=False)
    return counts


def short_vectors(gram, bound, shift=None, budget: int | None = None):
    """List of ``(norm, coords)`` with ``coords = x + shift`` and norm <= bound."""
    _, vecs = _Enumerator(gram, shift).run(bound, _resolve(budget), keep_vectors=True)
    return sorted(vecs)


# --------------------------------------------------------------------------
# cosets


@dataclass(frozen=True)
class Coset:
    """``lattice + shift`` with the shift reduced to coordinates in ``[0, 1)``."""

    lattice: Lattice
    shift: tuple[Fraction, ...] = field(default=())

    def __post_init__(self):
        shift = list(self.shift) or [0] * self.lattice.ambient_dim
        x = self.lattice.coords(shift)
        frac = [c - floor(c) for c in x]
        object.__setattr__(self, "_frac", tuple(frac))
        object.__setattr__(self, "shift", tuple(self.lattice.to_ambient(frac)))

    @property
    def coord_shift(self) -> tuple[Fraction, ...]:
        return self._frac

    def __eq__(self, other):
        return isinstance(other, Coset) and self.lattice == other.lattice and self._frac == other._frac

    def __hash__(self):
        return hash((self.lattice, self._frac))

    def rep_norm(self) -> Fraction:
        return self.lattice.inner(self.shift, self.shift)


def _descend(gram, x: Sequence[Fraction]) -> Fraction:
    """Norm of a short coset vector found by greedily adding +-basis vectors."""
    n = len(gram)
    x = list(x)
    gx = la.vecmat(x, gram)
    norm = sum((a * b for a, b in zip(x, gx)), Fraction(0))
    improved = True
    while improved:
        improved = False
        for i in range(n):
            for sgn in (1, -1):
                # |x + sgn e_i|^2 = |x|^2 + 2 sgn (xG)_i + G_ii
                delta = 2 * sgn * gx[i] + gram[i][i]
                if delta < 0:
                    x[i] += sgn
                    gx = [g + sgn * gram[i][j] for j, g in enumerate(gx)]
                    norm += delta
                    improved = True
    return norm


def coset_min_norm(c: Coset, bound_hint: Fraction | None = None,
                   budget: int | None = None) -> Fraction:
    """Exact minimum of ``<x, x>`` over the coset."""
    bound = _descend(c.lattice.gram, c.coord_shift) if bound_hint is None else Fraction(bound_hint)
    counts = enumerate_norms(c.lattice.gram, bound, c.coord_shift, budget)
    if not counts:
        raise ValueError(f"bound_hint {bound} is below the coset minimum")
    return min(counts)


def theta_coeffs(lat: Lattice, max_exponent, budget: int | None = None):
    """Theta series ``sum_x q^{<x,x>/2}`` truncated after ``max_exponent``."""
    from .qseries import QSeries

    max_exponent = Fraction(max_exponent)
    counts = enumerate_norms(lat.gram, 2 * max_exponent, None, budget)
    gden = la.common_denominator(x for row in lat.gram for x in row)
    D = 2 * gden
    coeffs = {int(norm / 2 * D): Fraction(c) for norm, c in counts.items()}
    prec = floor(max_exponent * D) + 1
    return QSeries(D, coeffs, prec)


def gcd_of_gram(lat: Lattice) -> Fraction:
    """Positive generator of the Z-module ``<L, L>``."""
    entries = [x for row in lat.gram for x in row]
    den = la.common_denominator(entries)
    g = 0
    for x in entries:
        g = gcd(g, int(x * den))
    return Fraction(g, den)
