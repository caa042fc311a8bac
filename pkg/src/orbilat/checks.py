"""Self-verification suites run by ``python3 -m orbilat verify``.

Each suite returns a list of :class:`Check` records, one per tested
statement and parameter point. Oracles are brute force where the domain is
small (all 12 elements of ``k x l`` at ``p = 3``) and independent routes
through the library otherwise.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

from . import codes as cd
from . import cocycles as cc
from . import lattice as lc
from . import orbifold as ob
from . import qseries as qs
from . import sigma as sg


@dataclass(frozen=True)
class Check:
    suite: str
    statement: str
    params: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"suite": self.suite, "statement": self.statement, "params": self.params,
                "passed": self.passed, "detail": self.detail}


# --------------------------------------------------------------------------
# helpers shared with the tests


def brute_perp(p: int, d: int, elements: set) -> set:
    """``E^perp`` inside ``k^d x l^d`` by testing every pair."""
    n = (p - 1) * d
    out = set()
    for u in product(range(2), repeat=n):
        for a in product(range(p), repeat=d):
            if all(cd.inner_k(p, u, v) == 0 and cd.inner_l(p, a, b) == 0 for v, b in elements):
                out.add((u, a))
    return out


def elements(c: cd.CodeC, dc: cd.CodeD) -> set:
    return {(u, a) for u in c.words() for a in dc.words()}


def lattice_of_elements(p: int, d: int, elems: set) -> lc.Lattice:
    """``L_E`` as the union of the cosets ``N^d + beta(u, a)``, ``(u, a) in E``."""
    return cd.SubmoduleE(p, d, tuple(sorted(elems))).lattice()


def random_code(cls, p: int, d: int, rng: random.Random):
    code = cls.zero(p, d)
    n = code.length
    k = rng.randint(0, n)
    return cls.span(p, d, [[rng.randrange(code.q) for _ in range(n)] for _ in range(k)])


def admissible_pairs(p: int, d: int) -> list[tuple[cd.CodeC, cd.CodeD]]:
    """All (C, D) with C sigma-invariant and even, D even."""
    cs = cd.enumerate_codes(p, d, "C", sigma_invariant=True, even=True)
    ds = cd.enumerate_codes(p, d, "D", even=True)
    return [(c, dc) for c in cs for dc in ds]


def _tag(**kw) -> str:
    return ",".join(f"{k}={v}" for k, v in kw.items())


# --------------------------------------------------------------------------
# suites


def suite_duality() -> list[Check]:
    out = []
    pairs = cd.all_subgroups_E(3, 1)
    out.append(Check("duality", "k x l has 10 subgroups at p=3,d=1", "p=3,d=1", len(pairs) == 10,
                     str(len(pairs))))
    for c, dc in pairs:
        e = elements(c, dc)
        perp = brute_perp(3, 1, e)
        tag = _tag(C=c.basis, D=dc.basis)
        out.append(Check("duality", "(C x D)^perp = C^perp x D^perp", tag,
                         perp == elements(c.dual(), dc.dual())))
        lat = cd.to_lattice(c, dc)
        out.append(Check("duality", "dual(L_E) = L_{E^perp}", tag,
                         lc.dual_lattice(lat) == lattice_of_elements(3, 1, perp)))
        par = lc.parity_report(lat)
        self_orth = e <= perp
        out.append(Check("duality", "L_E integral iff E self-orthogonal", tag,
                         par["integral"] == self_orth))
        out.append(Check("duality", "L_E unimodular iff E self-dual", tag,
                         par["unimodular"] == (e == perp)))
    rng = random.Random(5)
    for d in (1, 2):
        for _ in range(6):
            c, dc = random_code(cd.CodeC, 5, d, rng), random_code(cd.CodeD, 5, d, rng)
            tag = _tag(p=5, d=d, C=c.basis, D=dc.basis)
            lat = cd.to_lattice(c, dc)
            out.append(Check("duality", "dual(L_{CxD}) = L_{C^perp x D^perp}", tag,
                             lc.dual_lattice(lat) == cd.to_lattice(c.dual(), dc.dual())))
    return out


def suite_parity(samples: int = 100, pairs: int = 500) -> list[Check]:
    out = []
    cases = list(cd.all_subgroups_E(3, 1))
    rng = random.Random(7)
    for p, d in ((5, 1), (3, 2)):
        cases += [(random_code(cd.CodeC, p, d, rng), random_code(cd.CodeD, p, d, rng))
                  for _ in range(samples)]
    for c, dc in cases:
        ev = cd.evenness(c, dc)
        lat = cd.to_lattice(c, dc)
        out.append(Check("parity", "L_{CxD} even iff C q-isotropic and D self-orthogonal",
                         _tag(p=c.p, d=c.d, C=c.basis, D=dc.basis),
                         lc.parity_report(lat)["even"] == (ev["c_even"] and ev["d_even"])))
    out += weight_additivity(pairs)
    return out


def weight_additivity(pairs: int = 500, seed: int = 11) -> list[Check]:
    """``w(u+v, a+b) = w(u, a) + w(v, b) mod 2`` on self-orthogonal codes."""
    rng = random.Random(seed)
    grid = []
    for p, d in ((3, 1), (3, 2), (5, 1), (5, 2)):
        cs = cd.enumerate_codes(p, d, "C", self_orthogonal=True)
        ds = cd.enumerate_codes(p, d, "D", self_orthogonal=True)
        grid.append((p, d, cs, ds))
    bad = []
    for _ in range(pairs):
        p, d, cs, ds = rng.choice(grid)
        c, dc = rng.choice(cs), rng.choice(ds)
        cw, dw = list(c.words()), list(dc.words())
        u, v = rng.choice(cw), rng.choice(cw)
        a, b = rng.choice(dw), rng.choice(dw)
        uv = tuple((x + y) % 2 for x, y in zip(u, v))
        ab = tuple((x + y) % p for x, y in zip(a, b))
        lhs = cd.weight(p, uv, ab)
        rhs = cd.weight(p, u, a) + cd.weight(p, v, b)
        if (lhs - rhs) % 2:
            bad.append((p, d, u, a, v, b))
    return [Check("parity", "weight additive mod 2 on self-orthogonal codes",
                  _tag(pairs=pairs), not bad, str(bad[:3]))]


def suite_spectral() -> list[Check]:
    out = []
    for p in (3, 5, 7):
        phi = sg.cyclotomic(p)
        for d in (1, 2):
            iso = sg.coxeter_sigma(p, d)
            spec = sg.spectral(iso)
            rank = (p - 1) * d
            tag = _tag(p=p, d=d)
            out.append(Check("spectral", "det(x - sigma) = Phi_p^d", tag,
                             list(spec.char_poly) == sg.ppow(phi, d)))
            out.append(Check("spectral", "m_p = -m_1 = d", tag,
                             spec.m[p] == d and spec.m[1] == -d and all(
                                 v == 0 for k, v in spec.m.items() if k not in (1, p))))
            out.append(Check("spectral", "r_i = d for 1 <= i <= p-1", tag,
                             spec.r[0] == 0 and all(x == d for x in spec.r[1:])))
            out.append(Check("spectral", "sum d m_d = rank and sum m_d = 0", tag,
                             spec.sum_dm == rank and spec.sum_m == 0))
            out.append(Check("spectral", "r_i constant on classes of equal order", tag,
                             sg.same_order_classes_agree(spec)))
    return out


def suite_qdim(grid: Sequence[tuple[int, int]] = ((3, 1), (3, 2), (5, 1), (5, 2))) -> list[Check]:
    out = []
    for p, d in grid:
        for c, dc in admissible_pairs(p, d):
            lat = cd.to_lattice(c, dc)
            det = abs(lat.det)
            for s in range(1, p):
                tag = _tag(p=p, d=d, C=c.basis, D=dc.basis, s=s)
                q = ob.qdim_CD(c, dc, s)
                expected = Fraction(2) ** ((p - 1) * d - 2 * c.dim)
                out.append(Check("qdim", "qdim^2 = |C^perp/C| = 2^((p-1)d - 2 dim C)", tag,
                                 q.square == expected, str(q)))
                sec = ob.twisted_sector(lat, sg.coxeter_sigma(p, d).restrict(lat).power(s))
                out.append(Check("qdim", "global dimension: #twisted * qdim^2 = |L°/L|", tag,
                                 sec.num_twisted * q.square == det))
                rd = ob.radical_data_check(c, dc, s)
                ok = all(rd[k] for k in ("r_eq_formula", "quot_D_matches", "quot_C_matches",
                                         "coker_ok", "chain_ok"))
                out.append(Check("qdim", "radical data via SNF", tag, ok, str(rd)))
    return out


def suite_census(budget: int = 200_000) -> list[Check]:
    out = []
    for p, d in ((5, 2), (3, 3)):
        try:
            found = cd.enumerate_codes(p, d, "C", sigma_invariant=True, even=True, self_dual=True,
                                       budget=budget)
        except cd.CodeSizeError as exc:
            out.append(Check("census", "search for sigma-invariant even self-dual C", _tag(p=p, d=d),
                             True, f"search abandoned: {exc}"))
            continue
        out.append(Check("census", "search for sigma-invariant even self-dual C", _tag(p=p, d=d),
                         True, f"found {len(found)}"))
        for c in found:
            for dc in cd.enumerate_codes(p, d, "D", even=True):
                cen = ob.irr_census(c, dc)
                tag = _tag(p=p, d=d, C=c.basis, D=dc.basis)
                out.append(Check("census", "|Irr| = p^(d-2r+2)", tag, cen["order_ok"],
                                 str(cen["order"])))
                out.append(Check("census", "weights in (1/p)Z", tag, cen["weights_ok"]))
    for p, d in ((3, 1), (3, 3), (3, 12), (5, 1), (5, 2), (7, 1), (7, 2)):
        rho = ob.rho_twisted(sg.spectral(sg.coxeter_sigma(p, 1)), p) * d
        out.append(Check("census", "rho = d(p-1)(p+1)/24p", _tag(p=p, d=d),
                         rho == Fraction(d * (p - 1) * (p + 1), 24 * p), str(rho)))
    for p, d in ((3, 1), (5, 2), (7, 1)):
        rho = ob.rho_twisted(sg.spectral(sg.coxeter_sigma(p, d)), p)
        out.append(Check("census", "rho from r_i matches closed form", _tag(p=p, d=d),
                         rho == Fraction(d * (p - 1) * (p + 1), 24 * p), str(rho)))
    return out


def suite_cocycle(seed: int = 3) -> list[Check]:
    out = []
    rng = random.Random(seed)
    cases = [(c, dc, s) for p, d in ((3, 1), (3, 2), (5, 1))
             for c, dc in admissible_pairs(p, d) for s in range(1, p)]
    for c, dc, s in cases:
        lat = cd.to_lattice(c, dc)
        iso = sg.coxeter_sigma(c.p, c.d).restrict(lat).power(s)
        spec = cc.CocycleSpec(lat, iso)
        tag = _tag(p=c.p, d=c.d, C=c.basis, D=dc.basis, s=s)
        gens = lat.vectors

        def rnd():
            return lat.to_ambient([rng.randint(-3, 3) for _ in gens])

        ok_alt = all(f(v, v, spec) == 0 for f in (cc.c_standard, cc.c_sigma)
                     for v in list(gens) + [rnd() for _ in range(5)])
        out.append(Check("cocycle", "c and c^sigma alternating", tag, ok_alt))
        ok_bil = True
        for _ in range(5):
            a, b, g = rnd(), rnd(), rnd()
            ab = [x + y for x, y in zip(a, b)]
            for f in (cc.c_standard, cc.c_sigma):
                ok_bil &= f(ab, g, spec) == (f(a, g, spec) + f(b, g, spec)) % spec.s
                ok_bil &= f(g, ab, spec) == (f(g, a, spec) + f(g, b, spec)) % spec.s
        out.append(Check("cocycle", "c and c^sigma bilinear", tag, ok_bil))
        ok_inv = all(f(iso.apply(a), iso.apply(b), spec) == f(a, b, spec)
                     for f in (cc.c_standard, cc.c_sigma) for a, b in ((rnd(), rnd()) for _ in range(5)))
        out.append(Check("cocycle", "c and c^sigma sigma-invariant", tag, ok_inv))
        agree = (spec.scaled_check_matrix("c") == spec.c_standard_matrix
                 and spec.scaled_check_matrix("c_sigma") == spec.c_sigma_matrix)
        out.append(Check("cocycle", "rational forms agree with direct forms on even lattices", tag, agree))
        rad = cc.radical_of(spec)
        geo = lc.intersect(iso.image_one_minus(lc.dual_lattice(lat)), lat)
        out.append(Check("cocycle", "radical of c^sigma = ((1-sigma)L°) cap L", tag, rad == geo))
    return out


def suite_numeric(y_schedule: Sequence[float] = qs.DEFAULT_Y_SCHEDULE, tol: float = 1e-6) -> list[Check]:
    out = []
    for p in (3, 5):
        iso = sg.coxeter_sigma(p)
        lat = iso.lattice
        spec = sg.spectral(iso)
        exact = float(ob.qdim_exact(lat, spec, 1))
        num = qs.numeric_qdim(lat, spec, 1, p, y_schedule)
        tag = _tag(p=p, y_min=num.schedule[-1])
        out.append(Check("numeric", "numeric qdim limit matches exact value", tag,
                         abs(num.value - exact) < tol, f"{num.value!r} vs {exact}"))
        res = qs.transform_check(lat, 1.0, max_norm=60)
        out.append(Check("numeric", "theta transformation residual < 1e-8", _tag(p=p, y=1.0),
                         res < 1e-8, f"{res:.3e}"))
    out.append(Check("numeric", "eta transformation at tau = i", "y=1",
                     qs.eta_transform_residual(1.0) < 1e-10))
    return out


SUITES: dict[str, Callable[[], list[Check]]] = {
    "duality": suite_duality,
    "parity": suite_parity,
    "spectral": suite_spectral,
    "qdim": suite_qdim,
    "census": suite_census,
    "cocycle": suite_cocycle,
    "numeric": suite_numeric,
}
