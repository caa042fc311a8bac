"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line."""
import random
import time
from fractions import Fraction

import pytest

from orbilat import checks
from orbilat import cocycles as cc
from orbilat import codes as cd
from orbilat import lattice as lc
from orbilat import orbifold as ob
from orbilat import qseries as qs
from orbilat import sigma as sg

QDIM_GRID = ((3, 1), (3, 2), (5, 1), (5, 2))


@pytest.fixture
def verdict(capsys):
    def emit(n: int, title: str, ok: bool, detail: str = ""):
        with capsys.disabled():
            print(f"\nACCEPTANCE {n:>2} {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else ""))
        assert ok, detail
    return emit


@pytest.fixture(scope="module")
def sectors():
    """Every admissible (C, D, s) on the grid with its lattice data computed once."""
    out = []
    for p, d in QDIM_GRID:
        full = sg.coxeter_sigma(p, d)
        for c, dc in checks.admissible_pairs(p, d):
            lat = cd.to_lattice(c, dc)
            sig = full.restrict(lat)
            for s in range(1, p):
                iso = sig.power(s)
                out.append((c, dc, s, lat, iso, sg.spectral(iso), ob.twisted_sector(lat, iso)))
    return out


def test_criterion_01_duality_sweep(verdict):
    t0 = time.perf_counter()
    subgroups = cd.all_subgroups_E(3, 1)
    bad = []
    for c, dc in subgroups:
        elems = checks.elements(c, dc)
        perp = checks.brute_perp(3, 1, elems)
        lat = checks.lattice_of_elements(3, 1, elems)
        if lc.dual_lattice(lat) != checks.lattice_of_elements(3, 1, perp):
            bad.append(("dual", c.basis, dc.basis))
        par = lc.parity_report(lat)
        if par["integral"] != (elems <= perp) or par["unimodular"] != (elems == perp):
            bad.append(("parity", c.basis, dc.basis))
    dt = time.perf_counter() - t0
    ok = len(subgroups) == 10 and not bad and dt < 5
    verdict(1, "dual(L_E) = L_{E^perp}; integral/unimodular iff self-orthogonal/self-dual",
            ok, f"{len(subgroups)} submodules, {len(bad)} failures, {dt:.2f}s")


def test_criterion_02_parity_sweep(verdict):
    rng = random.Random(2024)
    cases = list(cd.all_subgroups_E(3, 1))
    for p, d in ((5, 1), (3, 2)):
        cases += [(checks.random_code(cd.CodeC, p, d, rng), checks.random_code(cd.CodeD, p, d, rng))
                  for _ in range(100)]
    bad = []
    for c, dc in cases:
        even = lc.parity_report(cd.to_lattice(c, dc))["even"]
        if even != (cd.is_q_isotropic(c) and cd.is_self_orthogonal(dc)):
            bad.append((c.p, c.d, c.basis, dc.basis))
    verdict(2, "L_{CxD} even iff C q-isotropic and D self-orthogonal", not bad,
            f"{len(cases)} cases, {len(bad)} failures")


def test_criterion_03_spectral(verdict):
    t0 = time.perf_counter()
    bad = []
    for p in (3, 5, 7):
        for d in (1, 2):
            spec = sg.spectral(sg.coxeter_sigma(p, d))
            ok = (list(spec.char_poly) == sg.ppow(sg.cyclotomic(p), d)
                  and spec.m.get(p) == d and spec.m.get(1) == -d
                  and all(spec.r[i] == d for i in range(1, p)) and spec.r[0] == 0
                  and spec.sum_dm == (p - 1) * d and spec.sum_m == 0)
            if not ok:
                bad.append((p, d))
    dt = time.perf_counter() - t0
    verdict(3, "det(x - sigma) = Phi_p^d, m_p = -m_1 = d, r_i = d, sum d m_d = rank, sum m_d = 0",
            not bad and dt < 5, f"{len(bad)} failures, {dt:.2f}s")


def test_criterion_04_qdim_triple_agreement(verdict, sectors):
    bad = []
    for c, dc, s, lat, iso, spec, sec in sectors:
        p, d = c.p, c.d
        from_spectrum = ob.qdim_exact(lat, spec, sec.dim_T).square
        dual_over_r = lc.index(lc.dual_lattice(lat), sec.radical).order
        from_radical = Fraction(dual_over_r) / Fraction(p) ** (lat.rank // (p - 1))
        from_codes = Fraction(2) ** ((p - 1) * d - 2 * c.dim)
        if not (from_spectrum == from_radical == from_codes == ob.qdim_CD(c, dc, s).square and sec.dim_T == dc.size):
            bad.append((p, d, c.basis, dc.basis, s, from_spectrum, from_radical, from_codes))
    verdict(4, "three qdim formulas agree and equal 2^((p-1)d/2 - dim C)", not bad,
            f"{len(sectors)} (p,d,C,D,s) points, {len(bad)} failures")


def test_criterion_05_radical_data(verdict, sectors):
    bad = []
    for c, dc, s, lat, iso, spec, sec in sectors:
        p, d = c.p, c.d
        r = sec.radical
        dual = lc.dual_lattice(lat)
        img_l = iso.image_one_minus(lat)
        img_dual = iso.image_one_minus(dual)
        ok = (r == iso.image_one_minus(cd.to_lattice(c, dc.dual()))
              and list(lc.index(r, img_l).divisors) == [p] * (dc.dual().dim - dc.dim)
              and list(lc.index(img_dual, r).divisors) == [2] * (c.dual().dim - c.dim)
              and lc.index(dual, img_dual).order == p ** d)
        if not ok:
            bad.append((p, d, c.basis, dc.basis, s))
    verdict(5, "R = (1-sigma^s)L_{CxD^perp}, R/(1-sigma^s)L = D^perp/D, (1-sigma^s)L°/R = C^perp/C, "
               "|L°/(1-sigma^s)L°| = p^d", not bad, f"{len(sectors)} points, {len(bad)} failures")


def test_criterion_06_global_dimension(verdict, sectors):
    bad = []
    for c, dc, s, lat, iso, spec, sec in sectors:
        q2 = ob.qdim_exact(lat, spec, sec.dim_T).square
        if sec.num_twisted * q2 != abs(lat.det):
            bad.append((c.p, c.d, c.basis, dc.basis, s))
    verdict(6, "sum of qdim^2 over the |R/(1-sigma)L| twisted irreducibles = |L°/L|", not bad,
            f"{len(sectors)} points, {len(bad)} failures")


def test_criterion_07_weight_additivity(verdict):
    res = checks.weight_additivity(pairs=500, seed=77)
    verdict(7, "w(u+v, a+b) = w(u,a) + w(v,b) mod 2 on self-orthogonal codes, 500 pairs",
            all(r.passed for r in res),
            "no counterexample" if res[0].passed else f"counterexamples {res[0].detail}")


def test_criterion_08_cocycles(verdict):
    res = checks.suite_cocycle(seed=8)
    iso = sg.coxeter_sigma(3)
    spec = cc.CocycleSpec(iso.lattice, iso)
    b1, b2 = iso.lattice.vectors
    hand = cc.c_sigma(b1, b2, spec) == 0 and cc.c_standard(b1, b2, spec) == 0
    failed = [r for r in res if not r.passed]
    verdict(8, "c, c^sigma alternating/bilinear/sigma-invariant; rational = direct forms; "
               "radical of c^sigma = ((1-sigma)L°) cap L", hand and not failed,
            f"{len(res)} checks, {len(failed)} failures")


def test_criterion_09_numeric_qdim_at_y_half(verdict):
    t0 = time.perf_counter()
    errs, residuals = [], []
    for p in (3, 5):
        iso = sg.coxeter_sigma(p)
        lat, spec = iso.lattice, sg.spectral(iso)
        exact = float(ob.qdim_exact(lat, spec, 1))
        num = qs.numeric_qdim(lat, spec, 1, p, y_schedule=(0.5,))
        errs.append(abs(num.value - exact))
        for y in (0.5, 1.0):
            residuals.append(qs.transform_check(lat, y, max_norm=60))
    dt = time.perf_counter() - t0
    ok = max(errs) < 1e-6 and max(residuals) < 1e-8 and dt < 10
    verdict(9, "|numeric_qdim - exact| < 1e-6 at y = 0.5; transform residual < 1e-8", ok,
            f"errors {errs[0]:.3e} (p=3), {errs[1]:.3e} (p=5); max residual {max(residuals):.1e}; {dt:.2f}s")


def test_criterion_09_companion_small_y_limit(verdict):
    """Same quantities with the y -> 0 schedule the limit needs."""
    t0 = time.perf_counter()
    errs = []
    for p in (3, 5):
        iso = sg.coxeter_sigma(p)
        lat, spec = iso.lattice, sg.spectral(iso)
        exact = float(ob.qdim_exact(lat, spec, 1))
        errs.append(abs(qs.numeric_qdim(lat, spec, 1, p).value - exact))
    dt = time.perf_counter() - t0
    verdict(9, "(companion) numeric qdim within 1e-6 along y -> 0 schedule", max(errs) < 1e-6 and dt < 10,
            f"errors {errs[0]:.1e}, {errs[1]:.1e}; {dt:.2f}s")


def test_criterion_10_census(verdict):
    found_report, bad = [], []
    for p, d in ((5, 2), (3, 3)):
        try:
            found = cd.enumerate_codes(p, d, "C", sigma_invariant=True, even=True, self_dual=True)
        except cd.CodeSizeError as exc:
            found_report.append(f"(p={p},d={d}): search abandoned ({exc})")
            continue
        found_report.append(f"(p={p},d={d}): {len(found)} found")
        for c in found:
            for dc in cd.enumerate_codes(p, d, "D", even=True):
                cen = ob.irr_census(c, dc)
                if not (cen["order"] == p ** (d - 2 * dc.dim + 2) and cen["weights_ok"]):
                    bad.append((p, d, c.basis, dc.basis))
    for p, d in ((3, 3), (3, 6), (5, 1), (5, 2), (7, 1), (7, 2)):
        rho = ob.rho_twisted(sg.spectral(sg.coxeter_sigma(p, d)), p)
        if rho != Fraction(d * (p - 1) * (p + 1), 24 * p):
            bad.append(("rho", p, d))
    verdict(10, "|Irr| = p^(d-2r+2), weights in (1/p)Z, twisted lowest weight d(p-1)(p+1)/24p",
            not bad, "; ".join(found_report) + f"; {len(bad)} failures")
