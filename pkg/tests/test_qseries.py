from fractions import Fraction

import pytest

from orbilat import lattice as lc
from orbilat import orbifold as ob
from orbilat import qseries as qs
from orbilat import sigma as sg


def test_eta_coefficients():
    eta = qs.eta_series(8)
    assert eta.coefficient(Fraction(1, 24)) == 1
    assert eta.coefficient(Fraction(25, 24)) == -1
    assert eta.coefficient(Fraction(1, 24) + 5) == 1
    assert eta.coefficient(Fraction(1, 24) + 3) == 0


def test_twisted_char_leading_terms():
    s3 = sg.spectral(sg.coxeter_sigma(3))
    ch = qs.twisted_char(s3, 3, 2, 2)
    assert ch.leading_exponent == Fraction(1, 36)
    assert ch.coefficient(Fraction(1, 36) + Fraction(1, 3)) == 1
    assert ch.coefficient(Fraction(1, 36) + Fraction(2, 3)) == 2
    s5 = sg.spectral(sg.coxeter_sigma(5))
    assert qs.twisted_char(s5, 5, 4, 2).leading_exponent == Fraction(1, 30)


@pytest.mark.parametrize("p", [3, 5])
def test_two_character_formulas_agree(p):
    spec = sg.spectral(sg.coxeter_sigma(p))
    assert qs.twisted_char(spec, p, p - 1, 3) == qs.eta_quotient_char(spec, p, p - 1, 3)


def test_series_arithmetic():
    a = qs.QSeries(2, {0: Fraction(1), 1: Fraction(3)}, 10)
    assert (a * a.inverse()) == qs.QSeries.one(2, 10)
    assert (a ** 3) == a * a * a


def test_transform_residuals():
    z2 = lc.Lattice(((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))), 1, ((1, 0), (0, 1)))
    assert qs.transform_check(z2, 1.0) < 1e-10
    assert qs.transform_check(lc.build_N(3), 1.0) < 1e-8
    assert qs.eta_transform_residual(1.0) < 1e-10


def test_numeric_qdim_default_schedule():
    for p, exact in ((3, 2.0), (5, 4.0)):
        iso = sg.coxeter_sigma(p)
        num = qs.numeric_qdim(iso.lattice, sg.spectral(iso), 1, p)
        assert abs(num.value - exact) < 1e-6


def test_direct_and_transformed_ratio_agree():
    iso = sg.coxeter_sigma(3)
    spec = sg.spectral(iso)
    a = qs.character_ratio(iso.lattice, spec, 1, 0.5, 3)
    b = qs.character_ratio_direct(iso.lattice, spec, 1, 0.5, 3, order=30)
    assert abs(a - b) < 1e-12


def test_identity_twist_rejected():
    n = lc.build_N(3)
    ident = sg.Isometry.from_ambient(n, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(ValueError):
        qs.numeric_qdim(n, sg.spectral(ident), 1, 3)


@pytest.mark.parametrize("p", [3, 5])
def test_lattice_character_has_nonnegative_integer_coefficients(p):
    z = qs.lattice_character(lc.build_N(p), 3)
    assert all(c.denominator == 1 and c >= 0 for _, c in z.items())


def test_numeric_schedule_converges_monotonically():
    iso = sg.coxeter_sigma(5)
    num = qs.numeric_qdim(iso.lattice, sg.spectral(iso), 1, 5)
    gaps = [abs(v - 4.0) for v in num.values]
    assert all(b <= a for a, b in zip(gaps, gaps[1:]))
