import random
from fractions import Fraction

import pytest

from orbilat import cocycles as cc
from orbilat import codes as cd
from orbilat import lattice as lc
from orbilat import sigma as sg


@pytest.fixture(scope="module")
def spec3():
    iso = sg.coxeter_sigma(3)
    return cc.CocycleSpec(iso.lattice, iso)


def test_modulus_for_N3(spec3):
    assert spec3.s == 6


def test_hand_evaluations(spec3):
    b1, b2 = spec3.lattice.vectors
    assert cc.c_sigma(b1, b2, spec3) == 0
    assert cc.c_standard(b1, b2, spec3) == 0
    assert cc.c_sigma(b1, b1, spec3) == 0


def test_radical_of_N3_is_N3(spec3):
    assert cc.radical_of(spec3) == spec3.lattice


def test_check_forms_closed_expressions():
    rng = random.Random(0)
    for p, d in ((3, 1), (5, 1), (3, 2)):
        iso = sg.coxeter_sigma(p, d)
        lat = iso.lattice
        spec = cc.CocycleSpec(lat, iso)
        for _ in range(6):
            a = lat.to_ambient([rng.randint(-2, 2) for _ in range(lat.rank)])
            b = lat.to_ambient([rng.randint(-2, 2) for _ in range(lat.rank)])
            assert cc.appendix_cocycle(a, b, spec, "c", scaled=False) == cc.c_check_closed(a, b, spec)
            assert cc.appendix_cocycle(a, b, spec, "c_sigma", scaled=False) == cc.c_sigma_check_fp(a, b, spec)
            assert cc.appendix_cocycle(a, a, spec, "c_sigma", scaled=False) == 0


def test_eps_is_a_cocycle_and_antisymmetrizes_to_c():
    iso = sg.coxeter_sigma(5)
    lat = iso.lattice
    spec = cc.CocycleSpec(lat, iso)
    rng = random.Random(1)
    for _ in range(5):
        a, b, g = (lat.to_ambient([rng.randint(-2, 2) for _ in range(4)]) for _ in range(3))
        ab = [x + y for x, y in zip(a, b)]
        bg = [x + y for x, y in zip(b, g)]
        e = lambda x, y: cc.appendix_cocycle(x, y, spec, "eps")
        assert (e(a, b) + e(ab, g)) % spec.s == (e(b, g) + e(a, bg)) % spec.s
        c = cc.appendix_cocycle(a, b, spec, "c")
        assert c == (e(a, b) - e(b, a)) % spec.s


def test_rational_lattice_modulus():
    dual = lc.dual_lattice(lc.build_N(3))
    iso = sg.coxeter_sigma(3).restrict(dual)
    spec = cc.CocycleSpec(dual, iso)
    assert spec.s == cc.minimal_modulus(dual, 3) == 36
    with pytest.raises(cc.ModulusError):
        cc.CocycleSpec(dual, iso, s=6)


def test_radical_contains_image_and_is_sigma_invariant():
    c = cd.CodeC.zero(5, 2)
    dc = cd.CodeD.span(5, 2, [(1, 2)])
    lat = cd.to_lattice(c, dc)
    assert lc.parity_report(lat)["even"]
    iso = sg.coxeter_sigma(5, 2).restrict(lat)
    rad = cc.radical_of(cc.CocycleSpec(lat, iso))
    assert rad.contains_lattice(iso.image_one_minus(lat))
    assert rad.transform(iso.ambient) == rad


def test_fp_coefficients():
    assert cc.fp_coefficients(5) == [0, 1, 2, -2, -1]
    assert Fraction(sum(cc.fp_coefficients(7))) == 0
