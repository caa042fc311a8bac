from itertools import product

import pytest

from orbilat import exact_linalg as la
from orbilat import lattice as lc
from orbilat import sigma as sg


def test_sigma_matrix_on_beta_basis():
    assert [list(r) for r in sg.coxeter_sigma(3).matrix] == [[0, 1], [-1, -1]]


@pytest.mark.parametrize("p", [3, 5, 7])
def test_order_and_gram_preservation(p):
    iso = sg.coxeter_sigma(p)
    m = [list(r) for r in iso.matrix]
    assert la.matpow(m, p) == la.identity(p - 1)
    g = iso.lattice.gram
    assert la.matmul(la.matmul(m, g), la.transpose(m)) == g
    assert iso.fixed_point_free


def test_code_action_p3():
    act = sg.code_action(sg.coxeter_sigma(3), 3, 1)
    assert act((1, 0)) == (0, 1)
    assert act((0, 1)) == (1, 1)
    for u in product((0, 1), repeat=2):
        assert act(act(act(u))) == u
    assert [u for u in product((0, 1), repeat=2) if any(u) and act(u) == u] == []


def test_label_roundtrip():
    for u, a in product(product((0, 1), repeat=2), range(3)):
        v = lc.beta_u_a(3, u, a)
        assert sg.label_of(3, 1, v) == (tuple(u), (a,))


def test_spectral_examples():
    s3 = sg.spectral(sg.coxeter_sigma(3))
    assert list(s3.char_poly) == [1, 1, 1]
    assert s3.m == {1: -1, 3: 1}
    assert list(s3.r) == [0, 1, 1]
    s5 = sg.spectral(sg.coxeter_sigma(5))
    assert s5.m == {1: -1, 5: 1} and list(s5.r) == [0, 1, 1, 1, 1]


def test_identity_isometry_spectral():
    n = lc.build_N(3)
    ident = sg.Isometry.from_ambient(n, la.identity(3))
    s = sg.spectral(ident)
    assert s.m == {1: 2} and list(s.r) == [2]


def test_theta_is_minus_one():
    s = sg.spectral(sg.theta_isometry(3))
    assert s.m == {1: -2, 2: 2}


def test_cyclotomic_and_mobius():
    assert sg.cyclotomic(1) == [-1, 1]
    assert sg.cyclotomic(6) == [1, -1, 1]
    assert [sg.mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_non_isometry_rejected():
    n = lc.build_N(3)
    amb = [[2, 0, 0], [0, 1, 0], [0, 0, 1]]
    with pytest.raises(Exception):
        sg.Isometry.from_ambient(n, amb)
