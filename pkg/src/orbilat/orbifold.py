"""Twisted-sector invariants of ``V_L`` for a fixed-point-free isometry of prime order.

For ``L = L_{C x D}`` with ``C`` sigma-invariant, the quantities computed here
are the radical ``R = ((1 - sigma) L°) cap L``, the number ``|R / (1 - sigma) L|``
of irreducible twisted modules, the top-level dimension ``dim T`` with
``dim T^2 = [L : R]``, the twisted lowest weight, and exact quantum dimensions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Any

from . import codes as cd
from . import cocycles as cc
from . import exact_linalg as la
from . import lattice as lc
from . import qseries as qs
from . import sigma as sg


class HypothesisError(ValueError):
    """An input violates a named hypothesis of the computation."""

    def __init__(self, hypothesis: str, detail: str = ""):
        super().__init__(f"hypothesis failed: {hypothesis}" + (f" ({detail})" if detail else ""))
        self.hypothesis = hypothesis


# --------------------------------------------------------------------------
# exact square roots


def _squarefree_split(n: int) -> tuple[int, int]:
    """``n = k^2 f`` with ``f`` squarefree; returns ``(k, f)``."""
    k, f, q = 1, n, 2
    while q * q <= f:
        while f % (q * q) == 0:
            f //= q * q
            k *= q
        q += 1
    return k, f


@dataclass(frozen=True)
class SqrtRational:
    """``coeff * sqrt(radicand)`` with ``radicand`` squarefree; the square root of a nonnegative rational."""

    coeff: Fraction
    radicand: int

    @classmethod
    def sqrt(cls, x) -> SqrtRational:
        x = Fraction(x)
        if x < 0:
            raise ValueError("square root of a negative number")
        if x == 0:
            return cls(Fraction(0), 1)
        k, f = _squarefree_split(x.numerator * x.denominator)
        return cls(Fraction(k, x.denominator), f)

    @property
    def square(self) -> Fraction:
        return self.coeff ** 2 * self.radicand

    def __float__(self) -> float:
        return float(self.coeff) * self.radicand ** 0.5

    def __mul__(self, other: SqrtRational) -> SqrtRational:
        return SqrtRational.sqrt(self.square * other.square)

    def __str__(self):
        if self.radicand == 1:
            return str(self.coeff)
        return f"{self.coeff}*sqrt({self.radicand})"

    def to_json(self) -> dict[str, str]:
        sq = self.square
        return {"sqrt_of": f"{sq.numerator}/{sq.denominator}", "value": str(self)}


# --------------------------------------------------------------------------
# radical and twisted sector


def _require_fpf_prime(iso: sg.Isometry):
    if not iso.fixed_point_free:
        raise HypothesisError("fixed-point-free", "isometry fixes a nonzero vector")
    if not cd._is_prime(iso.order):
        raise HypothesisError("prime order", f"order {iso.order}")


def radical(lat: lc.Lattice, iso: sg.Isometry, cross_check: bool = True) -> lc.Lattice:
    """``((1 - sigma) L°) cap L``, compared against the kernel of ``c^sigma`` when asked."""
    if iso.lattice != lat:
        iso = iso.restrict(lat)
    _require_fpf_prime(iso)
    dual = lc.dual_lattice(lat)
    r = lc.intersect(iso.image_one_minus(dual), lat)
    if cross_check:
        direct = cc.radical_of(cc.CocycleSpec(lat, iso))
        if direct != r:
            raise sg.ConsistencyError("radical of c^sigma differs from ((1-sigma)L°) cap L")
    return r


@dataclass(frozen=True)
class TwistedSector:
    lattice: lc.Lattice
    isometry: sg.Isometry
    radical: lc.Lattice
    L_mod_R: la.AbelianQuotient
    R_mod_image: la.AbelianQuotient
    dim_T: int

    @property
    def num_twisted(self) -> int:
        return self.R_mod_image.order


def twisted_sector(lat: lc.Lattice, iso: sg.Isometry) -> TwistedSector:
    """Radical, ``dim T`` and the number of irreducible twisted modules; ``L`` must be even."""
    if iso.lattice != lat:
        iso = iso.restrict(lat)
    if not lc.parity_report(lat)["even"]:
        raise HypothesisError("L even", "twisted modules are counted for even lattices only")
    r = radical(lat, iso)
    l_r = lc.index(lat, r)
    dim_t = isqrt(l_r.order)
    if dim_t * dim_t != l_r.order:
        raise sg.ConsistencyError(f"[L : R] = {l_r.order} is not a square")
    r_img = lc.index(r, iso.image_one_minus(lat))
    return TwistedSector(lat, iso, r, l_r, r_img, dim_t)


def rho_twisted(spec: sg.SpectralData, p: int | None = None) -> Fraction:
    """Lowest weight ``(1/4p^2) sum_i i (p - i) r_i`` of the twisted Heisenberg module."""
    p = spec.order if p is None else p
    if spec.r[0] != 0:
        raise HypothesisError("fixed-point-free", "r_0 != 0")
    return qs.rho_from_r(spec.r, p)


def qdim_exact(lat: lc.Lattice, spec: sg.SpectralData, dim_T: int,
               rad: lc.Lattice | None = None) -> SqrtRational:
    """``v dim_T / sqrt(prod_d d^{m_d})`` with ``v^2 = |L°/L|``.

    If the radical is supplied and the order is prime, the value is checked
    against ``p^{-rank/(p-1)} |L°/R|``.
    """
    if spec.r[0] != 0:
        raise HypothesisError("fixed-point-free", "r_0 != 0")
    v2 = abs(lat.det)
    q2 = v2 * dim_T ** 2 / spec.prod_d_m()
    if rad is not None and cd._is_prime(spec.order):
        p = spec.order
        alt = Fraction(lc.index(lc.dual_lattice(lat), rad).order) / Fraction(p) ** Fraction(lat.rank, p - 1)
        if alt != q2:
            raise sg.ConsistencyError(f"qdim^2 formulas disagree: {q2} vs {alt}")
    return SqrtRational.sqrt(q2)


# --------------------------------------------------------------------------
# the lattices L_{C x D}


def check_hypotheses(c: cd.CodeC, dc: cd.CodeD, *, self_dual_C: bool = False):
    """Raise :class:`HypothesisError` naming the first violated assumption."""
    if not cd._is_prime(c.p):
        raise HypothesisError("p prime", f"p = {c.p}")
    if not c.is_sigma_invariant():
        raise HypothesisError("C sigma-invariant")
    if not cd.is_q_isotropic(c):
        raise HypothesisError("C even")
    if not cd.is_self_orthogonal(dc):
        raise HypothesisError("D even")
    if self_dual_C and c != c.dual():
        raise HypothesisError("C self-dual")


@dataclass(frozen=True)
class _CDContext:
    p: int
    d: int
    C: cd.CodeC
    D: cd.CodeD
    L: lc.Lattice
    sigma: sg.Isometry


def _context(c: cd.CodeC, dc: cd.CodeD) -> _CDContext:
    lat = cd.to_lattice(c, dc)
    return _CDContext(c.p, c.d, c, dc, lat, sg.coxeter_sigma(c.p, c.d).restrict(lat))


def _elementary(p: int, k: int) -> la.AbelianQuotient:
    return la.AbelianQuotient.from_invariants([p] * k)


def radical_data_check(c: cd.CodeC, dc: cd.CodeD, s: int) -> dict[str, Any]:
    """The radical of ``c^{sigma^s}`` on ``L_{C x D}`` in terms of the codes.

    Checks ``R = (1 - sigma^s) L_{C x D^perp}``, ``R / (1 - sigma^s) L = D^perp / D``,
    ``(1 - sigma^s) L° / R = C^perp / C`` and ``|L° / (1 - sigma^s) L°| = p^d``.
    """
    check_hypotheses(c, dc)
    p, d = c.p, c.d
    if not 1 <= s <= p - 1:
        raise ValueError("s must lie in 1..p-1")
    ctx = _context(c, dc)
    iso = ctx.sigma.power(s)
    r = radical(ctx.L, iso)
    l_dperp = cd.to_lattice(c, dc.dual())
    formula = iso.image_one_minus(l_dperp)
    dual = lc.dual_lattice(ctx.L)
    img_dual = iso.image_one_minus(dual)
    quot_d = lc.index(r, iso.image_one_minus(ctx.L))
    quot_c = lc.index(img_dual, r)
    coker = lc.index(dual, img_dual)
    return {
        "r_eq_formula": r == formula,
        "quot_D": quot_d,
        "quot_C": quot_c,
        "quot_D_matches": quot_d == _elementary(p, dc.dual().dim - dc.dim),
        "quot_C_matches": quot_c == _elementary(2, c.dual().dim - c.dim),
        "coker_order": coker.order,
        "coker_ok": coker.order == p ** d,
        "chain_ok": p ** d * 2 ** (c.dual().dim - c.dim) == lc.index(dual, r).order,
    }


def qdim_CD(c: cd.CodeC, dc: cd.CodeD, s: int = 1) -> SqrtRational:
    """``qdim^2 = |C^perp / C|``, cross-checked against the lattice formulas and ``dim T = |D|``."""
    check_hypotheses(c, dc)
    p = c.p
    if not 1 <= s <= p - 1:
        raise ValueError("s must lie in 1..p-1")
    ctx = _context(c, dc)
    iso = ctx.sigma.power(s)
    sec = twisted_sector(ctx.L, iso)
    if sec.dim_T != dc.size:
        raise sg.ConsistencyError(f"dim T = {sec.dim_T} but |D| = {dc.size}")
    from_codes = SqrtRational.sqrt(2 ** (c.dual().dim - c.dim))
    from_lattice = qdim_exact(ctx.L, sg.spectral(iso), sec.dim_T, sec.radical)
    if from_codes != from_lattice:
        raise sg.ConsistencyError(f"qdim from codes {from_codes} != from lattice {from_lattice}")
    return from_codes


def group_like_fusion(c: cd.CodeC, dc: cd.CodeD) -> bool:
    """Every irreducible module is a simple current exactly when ``C`` is self-dual."""
    check_hypotheses(c, dc)
    return c == c.dual()


def _coset_weights(c: cd.CodeC, dc: cd.CodeD) -> list[Fraction]:
    """``min norm / 2`` of each coset of ``L_{C x D}`` in ``L_{C x D^perp}``."""
    lat = cd.to_lattice(c, dc)
    p, d = c.p, c.d
    zero_u = (0,) * ((p - 1) * d)
    reps = [tuple([0] * d)]
    # all words of D^perp modulo D, not just projective classes
    for v in cd.coset_reps(dc.dual(), dc):
        reps.append(v)
    return [lc.coset_min_norm(lc.Coset(lat, tuple(cd.beta_word(p, zero_u, a)))) / 2 for a in reps]


def irr_census(c: cd.CodeC, dc: cd.CodeD) -> dict[str, Any]:
    """Order of the group of irreducible modules of the sigma-fixed subalgebra, assembled by sector."""
    check_hypotheses(c, dc, self_dual_C=True)
    p, d = c.p, c.d
    if p == 3 and d % 3:
        raise HypothesisError("3 | d when p = 3", f"d = {d}")
    r = dc.dim
    ctx = _context(c, dc)
    untwisted = lc.index(cd.to_lattice(c, dc.dual()), ctx.L).order
    twisted = []
    rhos = []
    for s in range(1, p):
        iso = ctx.sigma.power(s)
        sec = twisted_sector(ctx.L, iso)
        twisted.append(sec.num_twisted)
        rhos.append(rho_twisted(sg.spectral(iso), p))
    order = p * untwisted + sum(p * t for t in twisted)
    weights = _coset_weights(c, dc) + rhos
    mod_z = sorted({w - (w.numerator // w.denominator) for w in weights})
    return {
        "order": order,
        "expected_order": p ** (d - 2 * r + 2),
        "order_ok": order == p ** (d - 2 * r + 2),
        "untwisted_modules": untwisted,
        "twisted_per_sector": twisted,
        "rho_twisted": rhos[0],
        "weights_mod_Z": mod_z,
        "weights_ok": all((w * p).denominator == 1 for w in mod_z),
    }


# --------------------------------------------------------------------------
# aggregated report


@dataclass(frozen=True)
class OrbifoldReport:
    p: int
    d: int
    parity: dict[str, bool]
    evenness: dict[str, bool]
    dims: dict[str, int]
    sectors: list[dict[str, Any]] = field(default_factory=list)
    group_like: bool | None = None
    census: dict[str, Any] | None = None
    hypothesis_failed: str | None = None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "p": self.p, "d": self.d, "parity": self.parity, "evenness": self.evenness,
            "code_dims": self.dims, "sectors": self.sectors, "group_like": self.group_like,
            "hypothesis_failed": self.hypothesis_failed,
        }
        if self.census is not None:
            cen = dict(self.census)
            cen["rho_twisted"] = _frac(cen["rho_twisted"])
            cen["weights_mod_Z"] = [_frac(w) for w in cen["weights_mod_Z"]]
            cen["order"] = str(cen["order"])
            cen["expected_order"] = str(cen["expected_order"])
            out["irr_census"] = cen
        return out


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _quot_json(q: la.AbelianQuotient) -> dict[str, Any]:
    return {"divisors": [str(x) for x in q.divisors], "order": str(q.order)}


def build_report(c: cd.CodeC, dc: cd.CodeD, twists: list[int] | None = None) -> OrbifoldReport:
    p, d = c.p, c.d
    lat = cd.to_lattice(c, dc)
    parity = lc.parity_report(lat)
    ev = cd.evenness(c, dc)
    dims = {"C": c.dim, "C_perp": c.dual().dim, "D": dc.dim, "D_perp": dc.dual().dim}
    try:
        check_hypotheses(c, dc)
    except HypothesisError as exc:
        return OrbifoldReport(p, d, parity, ev, dims, hypothesis_failed=exc.hypothesis)
    ctx = _context(c, dc)
    sectors = []
    for s in twists or list(range(1, p)):
        if not 1 <= s <= p - 1:
            raise ValueError("twist s must lie in 1..p-1")
        iso = ctx.sigma.power(s)
        spec = sg.spectral(iso)
        sec = twisted_sector(ctx.L, iso)
        q = qdim_exact(ctx.L, spec, sec.dim_T, sec.radical)
        if q != qdim_CD(c, dc, s):
            raise sg.ConsistencyError("quantum dimension formulas disagree")
        sectors.append({
            "s": s,
            "char_poly": [str(x) for x in spec.char_poly],
            "m_d": {str(k): v for k, v in spec.m.items()},
            "r_i": list(spec.r),
            "L_mod_R": _quot_json(sec.L_mod_R),
            "R_mod_image": _quot_json(sec.R_mod_image),
            "num_twisted_irreps": str(sec.num_twisted),
            "dim_T": str(sec.dim_T),
            "rho_twisted": _frac(rho_twisted(spec, p)),
            "qdim": q.to_json(),
            "global_dimension_ok": sec.num_twisted * q.square == abs(lat.det),
        })
    census = None
    failed = None
    try:
        census = irr_census(c, dc)
    except HypothesisError as exc:
        failed = exc.hypothesis
    return OrbifoldReport(p, d, parity, ev, dims, sectors, group_like_fusion(c, dc), census, failed)
