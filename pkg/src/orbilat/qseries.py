"""Truncated q-expansions with exact coefficients, and their numerics.

A :class:`QSeries` is a finite sum ``sum_n c_n q^{n/D}`` known exactly for
all exponents ``n/D < prec/D``. Floats only appear in :meth:`QSeries.at_iy`
and in the evaluation helpers at the bottom of the module.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from . import lattice as lc
from .exact_linalg import common_denominator


class TruncationError(RuntimeError):
    """Raised when a numeric evaluation cannot reach the requested precision."""

    def __init__(self, message: str, achieved: float):
        super().__init__(f"{message} (achieved bound {achieved:.3e})")
        self.achieved = achieved


@dataclass(frozen=True)
class QSeries:
    denom: int
    coeffs: dict[int, Fraction]
    prec: int | None  # exponent numerators >= prec are unknown; None means exact
    _clean: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        if not self._clean:
            c = {int(k): Fraction(v) for k, v in self.coeffs.items()
                 if v != 0 and (self.prec is None or k < self.prec)}
            object.__setattr__(self, "coeffs", c)

    # -- constructors ---------------------------------------------------

    @classmethod
    def one(cls, denom: int = 1, prec: int | None = None) -> QSeries:
        return cls(denom, {0: Fraction(1)}, prec)

    @classmethod
    def monomial(cls, exponent, coeff=1) -> QSeries:
        exponent = Fraction(exponent)
        return cls(exponent.denominator, {exponent.numerator: Fraction(coeff)}, None)

    # -- views ------------------------------------------------------------

    @property
    def valuation(self) -> int | None:
        return min(self.coeffs) if self.coeffs else None

    @property
    def leading_exponent(self) -> Fraction | None:
        v = self.valuation
        return None if v is None else Fraction(v, self.denom)

    @property
    def precision(self) -> Fraction | None:
        """Exponents strictly below this value are exact (None: all are)."""
        return None if self.prec is None else Fraction(self.prec, self.denom)

    def coefficient(self, exponent) -> Fraction:
        n = Fraction(exponent) * self.denom
        if self.prec is not None and n >= self.prec:
            raise ValueError(f"exponent {exponent} is beyond the truncation {self.precision}")
        if n.denominator != 1:
            return Fraction(0)
        return self.coeffs.get(int(n), Fraction(0))

    def items(self):
        """``(exponent, coefficient)`` pairs in increasing order."""
        return [(Fraction(n, self.denom), c) for n, c in sorted(self.coeffs.items())]

    def rescale(self, denom: int) -> QSeries:
        if denom % self.denom:
            raise ValueError("new denominator must be a multiple")
        f = denom // self.denom
        prec = None if self.prec is None else self.prec * f
        return QSeries(denom, {n * f: c for n, c in self.coeffs.items()}, prec, True)

    def truncate(self, exponent) -> QSeries:
        p = math.ceil(Fraction(exponent) * self.denom)
        return QSeries(self.denom, self.coeffs, p if self.prec is None else min(p, self.prec))

    # -- arithmetic -----------------------------------------------------

    def _common(self, other: QSeries):
        D = lcm(self.denom, other.denom)
        return self.rescale(D), other.rescale(D)

    def __add__(self, other: QSeries) -> QSeries:
        a, b = self._common(other)
        out = dict(a.coeffs)
        for n, c in b.coeffs.items():
            out[n] = out.get(n, 0) + c
        return QSeries(a.denom, out, _min_prec(a.prec, b.prec))

    def __neg__(self):
        return QSeries(self.denom, {n: -c for n, c in self.coeffs.items()}, self.prec, True)

    def __sub__(self, other: QSeries) -> QSeries:
        return self + (-other)

    def scale(self, k) -> QSeries:
        return QSeries(self.denom, {n: c * k for n, c in self.coeffs.items()}, self.prec)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        a, b = self._common(other)
        va, vb = a.valuation, b.valuation
        if va is None or vb is None:
            return QSeries(a.denom, {}, _min_prec(a.prec, b.prec))
        prec = _min_prec(None if a.prec is None else a.prec + vb,
                         None if b.prec is None else b.prec + va)
        out: dict[int, Fraction] = {}
        for n, c in a.coeffs.items():
            for m, e in b.coeffs.items():
                k = n + m
                if prec is None or k < prec:
                    out[k] = out.get(k, 0) + c * e
        return QSeries(a.denom, out, prec)

    __rmul__ = __mul__

    def shift(self, exponent) -> QSeries:
        """Multiply by ``q^exponent``."""
        exponent = Fraction(exponent)
        D = lcm(self.denom, exponent.denominator)
        s = self.rescale(D)
        k = int(exponent * D)
        prec = None if s.prec is None else s.prec + k
        return QSeries(D, {n + k: c for n, c in s.coeffs.items()}, prec, True)

    def inverse(self) -> QSeries:
        """Multiplicative inverse of a truncated series."""
        v = self.valuation
        if v is None:
            raise ZeroDivisionError("inverse of the zero series")
        if self.prec is None:
            raise ValueError("an exact series needs a truncation before inversion")
        rel = self.prec - v  # known relative length
        a = [self.coeffs.get(v + i, Fraction(0)) for i in range(rel)]
        inv = [Fraction(0)] * rel
        inv[0] = 1 / a[0]
        nz = [j for j in range(1, rel) if a[j]]
        for i in range(1, rel):
            s = sum((a[j] * inv[i - j] for j in nz if j <= i), Fraction(0))
            inv[i] = -s * inv[0]
        return QSeries(self.denom, {i - v: c for i, c in enumerate(inv)}, rel - v)

    def __pow__(self, k: int) -> QSeries:
        if k < 0:
            return self.inverse() ** (-k)
        result = QSeries.one(self.denom)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def substitute(self, d: int) -> QSeries:
        """``f(q) -> f(q^{1/d})``."""
        return QSeries(self.denom * d, self.coeffs, self.prec, True)

    # -- numerics ---------------------------------------------------------

    def at_iy(self, y: float) -> float:
        """Evaluate at ``tau = i y``, i.e. ``q = exp(-2 pi y)``."""
        if not self.coeffs:
            return 0.0
        return math.fsum(float(c) * math.exp(-2 * math.pi * y * n / self.denom)
                         for n, c in self.coeffs.items())

    def to_json(self) -> dict:
        """Exponent ``"n/D"`` -> coefficient ``"a/b"``."""
        out = {}
        for e, c in self.items():
            out[f"{e.numerator}/{e.denominator}"] = f"{c.numerator}/{c.denominator}"
        prec = self.precision
        return {"precision": None if prec is None else f"{prec.numerator}/{prec.denominator}",
                "coefficients": out}

    def __eq__(self, other):
        """Coefficientwise equality below the common truncation."""
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = self._common(other)
        prec = _min_prec(a.prec, b.prec)
        keep = (lambda n: True) if prec is None else (lambda n: n < prec)
        return ({n: c for n, c in a.coeffs.items() if keep(n)}
                == {n: c for n, c in b.coeffs.items() if keep(n)})

    __hash__ = None


def _min_prec(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


# --------------------------------------------------------------------------
# eta and friends


def a_c(c, order) -> QSeries:
    """``prod_{n>=0} (1 - q^{c+n})`` for rational ``c > 0``, exact below ``q^order``."""
    c = Fraction(c)
    if c <= 0:
        raise ValueError("c must be positive")
    D = c.denominator
    prec = math.floor(Fraction(order) * D)
    result = QSeries(D, {0: Fraction(1)}, prec)
    n = 0
    while c + n < order:
        e = int((c + n) * D)
        result = result * QSeries(D, {0: Fraction(1), e: Fraction(-1)}, prec)
        n += 1
    return result


def eta_series(order: int) -> QSeries:
    """``eta(tau) = q^{1/24} prod_{n>=1}(1 - q^n)`` with the product exact below ``q^order``."""
    if order < 1:
        raise ValueError("order must be >= 1")
    return a_c(1, order).shift(Fraction(1, 24))


def rho_from_r(r: Sequence[int], p: int) -> Fraction:
    """Lowest conformal weight ``(1/4p^2) sum i(p-i) r_i`` of the twisted Heisenberg module."""
    return Fraction(sum(i * (p - i) * r[i] for i in range(1, p)), 4 * p * p)


def twisted_char(spec, p: int, rank: int, order) -> QSeries:
    """Character of the twisted Heisenberg module.

    ``q^{rho - rank/24} / prod_{i=1}^{p-1} prod_{n>=0} (1 - q^{i/p + n})^{r_{p-i}}``,
    exact for exponents below ``rho - rank/24 + order``.
    """
    r = spec.r
    if r[0] != 0:
        raise ValueError("twist has fixed points (r_0 != 0)")
    rho = rho_from_r(r, p)
    denom = QSeries.one(p, prec=math.floor(Fraction(order) * p))
    for i in range(1, p):
        if r[p - i]:
            denom = denom * a_c(Fraction(i, p), order) ** r[p - i]
    return denom.inverse().shift(rho - Fraction(rank, 24))


def eta_quotient_char(spec, p: int, rank: int, order) -> QSeries:
    """The same character written as ``q^{rho-rank/24} prod_d q^{m_d/24d} / eta(tau/d)^{m_d}``."""
    rho = rho_from_r(spec.r, p)
    out = QSeries.one(1)
    for d, m in spec.m.items():
        if m == 0:
            continue
        eta_d = eta_series(order * d + 1).substitute(d)
        out = out * (QSeries.monomial(Fraction(m, 24 * d)) * eta_d ** (-m))
    return out.truncate(order).shift(rho - Fraction(rank, 24))


def lattice_character(lat: lc.Lattice, order: int) -> QSeries:
    """``Theta_L / eta^rank`` -- the character of the lattice vertex algebra."""
    theta = lc.theta_coeffs(lat, order)
    return theta * eta_series(order + 1) ** (-lat.rank)


# --------------------------------------------------------------------------
# numerics


def eta_value(y: float, tol: float = 1e-17) -> float:
    """``eta(i y)`` by its product expansion."""
    q = math.exp(-2 * math.pi * y)
    val = math.exp(-2 * math.pi * y / 24)
    n = 1
    while True:
        t = q ** n
        val *= 1 - t
        if t < tol:
            return val
        n += 1


def _euler_product(x: float, tol: float = 1e-18) -> float:
    """``prod_{n>=1} (1 - x^n)`` for ``0 <= x < 1``."""
    val, n = 1.0, 1
    while True:
        t = x ** n
        if t < tol:
            return val
        val *= 1 - t
        n += 1


def theta_value(lat: lc.Lattice, t: float, max_norm=None, tol: float = 1e-15,
                budget: int | None = None) -> tuple[float, float]:
    """``sum_x exp(-pi t <x,x>)`` with a tail estimate.

    Returns ``(value, tail_estimate)``. If ``max_norm`` is None a norm cutoff
    giving a tail below ``tol`` is chosen automatically.
    """
    if max_norm is None:
        max_norm = Fraction(math.ceil((math.log(1 / tol) + 10 * lat.rank) / (math.pi * t)))
    counts = lc.enumerate_norms(lat.gram, Fraction(max_norm), None, budget)
    value = math.fsum(c * math.exp(-math.pi * t * float(n)) for n, c in counts.items())
    total = sum(counts.values())
    # vectors beyond the cutoff: crude volume growth times the first missing weight
    tail = total * 2 ** (lat.rank / 2) * math.exp(-math.pi * t * float(max_norm))
    return value, tail


def transform_check(lat: lc.Lattice, y: float, max_norm=60) -> float:
    """Residual of ``Theta_L(iy) = y^{-l/2} v^{-1} Theta_{L°}(i/y)``."""
    if not 0.5 <= y <= 2:
        raise ValueError("y must lie in [0.5, 2]")
    v = math.sqrt(float(lat.det))
    lhs, _ = theta_value(lat, y, max_norm)
    rhs, _ = theta_value(lc.dual_lattice(lat), 1 / y, max_norm)
    return abs(lhs - y ** (-lat.rank / 2) / v * rhs)


def eta_transform_residual(y: float) -> float:
    """Residual of ``eta(i/y) = sqrt(y) eta(i y)``."""
    return abs(eta_value(1 / y) - math.sqrt(y) * eta_value(y))


DEFAULT_Y_SCHEDULE = (1.0, 0.5, 0.25, 0.1, 0.05, 0.025)


@dataclass(frozen=True)
class NumericQdim:
    value: float
    error: float
    values: tuple[float, ...]
    schedule: tuple[float, ...]


def character_ratio(lat: lc.Lattice, spec, dim_T: int, y: float, p: int,
                    tol: float = 1e-15) -> float:
    """``dim_T * Z_{M(1)(sigma)}(iy) / Z_{V_L}(iy)`` through the S-transformed form."""
    rank = lat.rank
    rho = rho_from_r(spec.r, p)
    expo = rho - Fraction(rank, 24) + sum(Fraction(m, 24 * d) for d, m in spec.m.items())
    prefactor = math.exp(-2 * math.pi * y * float(expo))
    v = math.sqrt(float(lat.det))
    prod_d = math.prod(float(d) ** m for d, m in spec.m.items())
    x = math.exp(-2 * math.pi / y)
    num = v * _euler_product(x) ** rank
    den = math.sqrt(prod_d)
    for d, m in spec.m.items():
        den *= _euler_product(x ** d) ** m
    theta_dual, tail = theta_value(lc.dual_lattice(lat), 1 / y, tol=tol)
    if tail > 1e-3 * tol * theta_dual + tol:
        raise TruncationError("dual theta series not converged", tail)
    return dim_T * prefactor * num / (den * theta_dual)


def character_ratio_direct(lat: lc.Lattice, spec, dim_T: int, y: float, p: int,
                           order: int = 12) -> float:
    """The same ratio evaluated from the q-expansions at ``q = exp(-2 pi y)``."""
    z_tw = twisted_char(spec, p, lat.rank, order)
    z_l = lattice_character(lat, order)
    return dim_T * z_tw.at_iy(y) / z_l.at_iy(y)


def numeric_qdim(lat: lc.Lattice, spec, dim_T: int, p: int,
                 y_schedule: Sequence[float] = DEFAULT_Y_SCHEDULE) -> NumericQdim:
    """Quantum dimension as the ``y -> 0+`` limit of the character ratio.

    Each scheduled ``y`` is evaluated through the S-transformed expression;
    the value at the smallest ``y`` is returned, with the difference of the
    last two evaluations as error estimate.
    """
    if spec.r[0] != 0:
        raise ValueError("twist has fixed points (r_0 != 0); quantum dimension limit undefined")
    sched = tuple(sorted(set(float(y) for y in y_schedule), reverse=True))
    if not sched or sched[-1] <= 0:
        raise ValueError("y schedule must contain positive values")
    vals = tuple(character_ratio(lat, spec, dim_T, y, p) for y in sched)
    err = abs(vals[-1] - vals[-2]) if len(vals) > 1 else float("inf")
    return NumericQdim(vals[-1], err, vals, sched)


def qseries_common_denominator(*series: QSeries) -> int:
    return common_denominator(Fraction(1, s.denom) for s in series)
