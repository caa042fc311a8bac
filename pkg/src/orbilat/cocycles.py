"""Alternating bilinear maps attached to a fixed-point-free isometry of odd order.

Everything is computed in lattice coordinates. For ``P_i = M^i G`` (``M`` the
isometry on the basis, ``G`` the Gram matrix) the entry ``(P_i)_{jk}`` is
``<sigma^i b_j, b_k>``. Values in ``Z_s`` are integers in ``[0, s)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Sequence

from . import exact_linalg as la
from . import lattice as lc
from .sigma import Isometry

FORMS = ("c", "c_sigma", "eps", "eps_sigma")


class ModulusError(ValueError):
    """The modulus ``s`` does not satisfy ``s <L, L> in 2p Z``."""


def minimal_modulus(lat: lc.Lattice, p: int) -> int:
    """Smallest even ``s > 0`` with ``s <L, L> in 2p Z``."""
    g = lc.gcd_of_gram(lat)
    # s * g.num / g.den in 2pZ  <=>  2p g.den | s g.num
    need = 2 * p * g.denominator
    s = need // gcd(need, g.numerator)
    return lcm(s, 2)


def fp_coefficients(p: int) -> list[int]:
    """Coefficients of ``f_p(t) = sum_{i<=(p-1)/2} i (t^i - t^{p-i})``, index = power of t."""
    out = [0] * p
    for i in range(1, (p - 1) // 2 + 1):
        out[i] += i
        out[p - i] -= i
    return out


@dataclass(frozen=True, eq=False)
class CocycleSpec:
    """A lattice with a fixed-point-free isometry of odd order and a modulus ``s``."""

    lattice: lc.Lattice
    isometry: Isometry
    s: int | None = None
    which: str = "c_sigma"
    _powers: list = field(default_factory=list, init=False, repr=False)

    def __post_init__(self):
        p = self.isometry.order
        if p < 3 or p % 2 == 0:
            raise ValueError("isometry order must be odd and at least 3")
        if not self.isometry.fixed_point_free:
            raise ValueError("isometry is not fixed-point-free")
        if self.isometry.lattice != self.lattice:
            raise ValueError("isometry acts on a different lattice")
        if self.which not in FORMS:
            raise ValueError(f"which must be one of {FORMS}")
        s = minimal_modulus(self.lattice, p) if self.s is None else self.s
        if s <= 0 or s % 2:
            raise ModulusError(f"modulus must be a positive even integer, got {s}")
        for i, row in enumerate(self.lattice.gram):
            for j, x in enumerate(row):
                if (s * x) % (2 * p):
                    raise ModulusError(f"s={s} fails on Gram entry ({i},{j}) = {x}: s*<b_i,b_j> not in {2 * p}Z")
        object.__setattr__(self, "s", s)

    @property
    def p(self) -> int:
        return self.isometry.order

    def P(self, i: int) -> list[list[Fraction]]:
        """``<sigma^i b_j, b_k>`` as a matrix."""
        if not self._powers:
            m = [list(r) for r in self.isometry.matrix]
            cur = la.identity(len(m))
            for _ in range(self.p):
                self._powers.append(la.matmul(cur, self.lattice.gram))
                cur = la.matmul(cur, m)
        return self._powers[i % self.p]

    # rational forms, defined on any lattice with a fixed-point-free sigma

    @cached_property
    def eps_check(self) -> list[list[Fraction]]:
        h = (self.p - 1) // 2
        return _lincomb([(Fraction(1, 2), self.P(i)) for i in range(1, h + 1)], self.lattice.rank)

    @cached_property
    def eps_sigma_check(self) -> list[list[Fraction]]:
        h = (self.p - 1) // 2
        return _lincomb([(Fraction(i, self.p), self.P(i)) for i in range(1, h + 1)], self.lattice.rank)

    @cached_property
    def c_check(self) -> list[list[Fraction]]:
        return _antisym(self.eps_check)

    @cached_property
    def c_sigma_check(self) -> list[list[Fraction]]:
        return _antisym(self.eps_sigma_check)

    # Z_s-valued forms built directly from <,> and sigma

    @cached_property
    def c_standard_matrix(self) -> list[list[int]]:
        return _to_zs(_lincomb([(Fraction(self.s, 2), self.P(0))], self.lattice.rank), self.s)

    @cached_property
    def c_sigma_matrix(self) -> list[list[int]]:
        terms = [(Fraction(self.s * i, self.p), self.P(i)) for i in range(1, self.p)]
        return _to_zs(_lincomb(terms, self.lattice.rank), self.s)

    def scaled_check_matrix(self, which: str) -> list[list[int]]:
        """``s * check-form mod s`` for one of ``FORMS``."""
        src = {"c": self.c_check, "c_sigma": self.c_sigma_check,
               "eps": self.eps_check, "eps_sigma": self.eps_sigma_check}[which]
        return _to_zs([[self.s * x for x in row] for row in src], self.s)

    def coords(self, v: Sequence) -> list[int]:
        x = self.lattice.coords(v)
        if any(c.denominator != 1 for c in x):
            raise ValueError("vector is not in the lattice")
        return [int(c) for c in x]


def _lincomb(terms, n: int) -> list[list[Fraction]]:
    out = [[Fraction(0)] * n for _ in range(n)]
    for c, m in terms:
        for i in range(n):
            for j in range(n):
                out[i][j] += c * m[i][j]
    return out


def _antisym(m):
    n = len(m)
    return [[m[i][j] - m[j][i] for j in range(n)] for i in range(n)]


def _to_zs(m, s: int) -> list[list[int]]:
    out = []
    for row in m:
        r = []
        for x in row:
            x = Fraction(x)
            if x.denominator != 1:
                raise ModulusError(f"value {x} is not an integer; modulus {s} too small")
            r.append(int(x) % s)
        out.append(r)
    return out


def _pair(m: list[list[int]], x: Sequence[int], y: Sequence[int], s: int) -> int:
    return sum(xi * m[i][j] * yj for i, xi in enumerate(x) if xi for j, yj in enumerate(y)) % s


def c_standard(alpha, beta, spec: CocycleSpec) -> int:
    """``(s/2) <alpha, beta> mod s``."""
    return _pair(spec.c_standard_matrix, spec.coords(alpha), spec.coords(beta), spec.s)


def c_sigma(alpha, beta, spec: CocycleSpec) -> int:
    """``(s/p) sum_{i=1}^{p-1} i <sigma^i alpha, beta> mod s``."""
    return _pair(spec.c_sigma_matrix, spec.coords(alpha), spec.coords(beta), spec.s)


def appendix_cocycle(alpha, beta, spec: CocycleSpec, which: str, scaled: bool = True):
    """One of ``eps, eps_sigma, c, c_sigma``.

    With ``scaled=False`` the rational value of the check-form is returned,
    otherwise ``s`` times it, reduced into ``Z_s``.
    """
    if which not in FORMS:
        raise ValueError(f"which must be one of {FORMS}")
    x, y = spec.coords(alpha), spec.coords(beta)
    if scaled:
        return _pair(spec.scaled_check_matrix(which), x, y, spec.s)
    src = {"c": spec.c_check, "c_sigma": spec.c_sigma_check,
           "eps": spec.eps_check, "eps_sigma": spec.eps_sigma_check}[which]
    return sum((x[i] * src[i][j] * y[j] for i in range(len(x)) for j in range(len(y))), Fraction(0))


def c_check_closed(alpha, beta, spec: CocycleSpec) -> Fraction:
    """``<alpha, beta>/2 + sum_{i<=(p-1)/2} <sigma^i alpha, beta>``."""
    lat, iso = spec.lattice, spec.isometry
    out = lat.inner(alpha, beta) / 2
    a = list(alpha)
    for _ in range((spec.p - 1) // 2):
        a = iso.apply(a)
        out += lat.inner(a, beta)
    return out


def c_sigma_check_fp(alpha, beta, spec: CocycleSpec) -> Fraction:
    """``<f_p(sigma) alpha, beta> / p``."""
    lat, iso = spec.lattice, spec.isometry
    out = Fraction(0)
    a = list(alpha)
    for coeff in fp_coefficients(spec.p):
        if coeff:
            out += coeff * lat.inner(a, beta)
        a = iso.apply(a)
    return out / spec.p


def radical_of(spec: CocycleSpec, which: str | None = None) -> lc.Lattice:
    """``{alpha in L : form(alpha, b) = 0 in Z_s for every basis vector b}``.

    ``which`` picks the form (default ``spec.which``); ``"c_sigma"`` uses the
    directly defined Z_s form, ``"c_sigma_check"`` the scaled rational one.
    """
    which = spec.which if which is None else which
    if which == "c_sigma":
        m = spec.c_sigma_matrix
    elif which == "c_sigma_check":
        m = spec.scaled_check_matrix("c_sigma")
    elif which == "c":
        m = spec.c_standard_matrix
    else:
        raise ValueError("radical is defined for c and c_sigma")
    ker = la.integer_kernel_mod(m, spec.s)
    lat = spec.lattice
    return lc.Lattice.from_vectors(lat.ambient_gram, la.matmul(ker, lat.vectors))
