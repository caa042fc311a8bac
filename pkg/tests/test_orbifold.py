from fractions import Fraction

import pytest

from orbilat import codes as cd
from orbilat import lattice as lc
from orbilat import orbifold as ob
from orbilat import sigma as sg


def zero_pair(p, d):
    return cd.CodeC.zero(p, d), cd.CodeD.zero(p, d)


def test_radical_of_N3():
    iso = sg.coxeter_sigma(3)
    r = ob.radical(iso.lattice, iso)
    assert r == iso.lattice
    sec = ob.twisted_sector(iso.lattice, iso)
    assert sec.L_mod_R.order == 1 and sec.dim_T == 1 and sec.num_twisted == 3


def test_twisted_sector_needs_even_lattice():
    lat = cd.to_lattice(cd.CodeC.zero(3, 1), cd.CodeD.full(3, 1))
    with pytest.raises(ob.HypothesisError) as exc:
        ob.twisted_sector(lat, sg.coxeter_sigma(3).restrict(lat))
    assert exc.value.hypothesis == "L even"


@pytest.mark.parametrize("p,qd,qc", [(3, 3, 4), (5, 5, 16)])
def test_radical_data_zero_codes(p, qd, qc):
    rd = ob.radical_data_check(*zero_pair(p, 1), 1)
    assert rd["quot_D"].order == qd and rd["quot_C"].order == qc
    assert rd["r_eq_formula"] and rd["chain_ok"] and rd["coker_ok"]


def test_rho_values():
    assert ob.rho_twisted(sg.spectral(sg.coxeter_sigma(3)), 3) == Fraction(1, 9)
    assert ob.rho_twisted(sg.spectral(sg.coxeter_sigma(5)), 5) == Fraction(1, 5)
    assert 12 * ob.rho_twisted(sg.spectral(sg.coxeter_sigma(3)), 3) == Fraction(4, 3)


def test_qdim_exact_N3():
    iso = sg.coxeter_sigma(3)
    q = ob.qdim_exact(iso.lattice, sg.spectral(iso), 1)
    assert q.square == 4 and float(q) == 2.0
    assert q.to_json()["sqrt_of"] == "4/1"


def test_qdim_CD_independent_of_s():
    c, dc = zero_pair(3, 1)
    assert ob.qdim_CD(c, dc, 1).square == ob.qdim_CD(c, dc, 2).square == 4


def test_self_dual_C_gives_qdim_one_and_group_like():
    c = cd.enumerate_codes(3, 2, "C", sigma_invariant=True, even=True, self_dual=True)[0]
    dc = cd.CodeD.zero(3, 2)
    assert ob.qdim_CD(c, dc, 1).square == 1
    assert ob.group_like_fusion(c, dc) is True


def test_group_like_false_at_p3_d1():
    for c in cd.enumerate_codes(3, 1, "C", sigma_invariant=True, even=True):
        assert ob.group_like_fusion(c, cd.CodeD.zero(3, 1)) is False


def test_census_p5_d2():
    cs = cd.enumerate_codes(5, 2, "C", sigma_invariant=True, even=True, self_dual=True)
    cen = ob.irr_census(cs[0], cd.CodeD.zero(5, 2))
    assert cen["order"] == 625 and cen["order_ok"] and cen["weights_ok"]


def test_census_requires_self_dual():
    with pytest.raises(ob.HypothesisError):
        ob.irr_census(*zero_pair(3, 3))


def test_hypothesis_failure_in_report():
    rep = ob.build_report(cd.CodeC.span(3, 1, [(1, 0)]), cd.CodeD.zero(3, 1))
    assert rep.hypothesis_failed == "C sigma-invariant"
    assert rep.sectors == []


def test_sqrt_rational():
    x = ob.SqrtRational.sqrt(Fraction(8, 3))
    assert x.square == Fraction(8, 3)
    assert abs(float(x) - (8 / 3) ** 0.5) < 1e-15
