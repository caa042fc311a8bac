from fractions import Fraction

from hypothesis import given, settings, strategies as st

from orbilat import exact_linalg as la


def test_hnf_identity_and_zero():
    assert la.hnf([[1, 0], [0, 1]]) == [[1, 0], [0, 1]]
    assert all(x == 0 for row in la.hnf([[0, 0], [0, 0]]) for x in row)


def test_hnf_of_stacked_generators_has_determinant_two():
    basis = la.hnf_basis([[2, 0], [0, 2], [1, 1], [-1, 1]])
    assert abs(la.det(basis)) == 2


def test_snf_examples():
    assert la.snf([[2, 0], [0, 3]]) == [1, 6]
    assert la.snf([[1, 0], [0, 1]]) == [1, 1]
    divs = la.snf([[4, -2], [-2, 4]])
    assert divs == [2, 6]
    assert divs[0] * divs[1] == 12


def test_lattice_intersect():
    assert la.hnf_basis(la.lattice_intersect([[2, 0], [0, 2]], [[3, 0], [0, 3]])) == [[6, 0], [0, 6]]
    assert la.lattice_intersect([[1, 0], [0, 1]], [[1, 1]]) == [[1, 1]]
    a = [[1, 2], [0, 3]]
    assert la.hnf_basis(la.lattice_intersect(a, a)) == la.hnf_basis(a)


def test_quotients():
    q = la.quotient([[1, 0], [0, 1]], [[2, 0], [0, 2]])
    assert list(q.divisors) == [2, 2] and q.order == 4
    assert la.quotient([[1, 0], [0, 1]], [[1, 0], [0, 1]]).order == 1


def test_left_solver_roundtrip():
    a = [[1, 2, 3], [0, 1, 4]]
    solver = la.LeftSolver(a)
    assert solver.solve([2, 5, 10]) == [Fraction(2), Fraction(1)]
    assert solver.solve([0, 0, 1]) is None


def test_nullspace_mod_is_annihilated():
    m = [[1, 1, 0, 1], [0, 1, 1, 1]]
    for v in la.nullspace_mod(m, 2):
        assert all(sum(r * x for r, x in zip(row, v)) % 2 == 0 for row in m)


small = st.integers(-6, 6)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_snf_product_equals_abs_det(m):
    d = la.det(m)
    divs = la.snf(m)
    prod = 1
    for x in divs:
        prod *= x
    assert prod == abs(d)
    nz = [x for x in divs if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=5))
def test_hnf_preserves_row_span(m):
    basis = la.hnf_basis(m)
    assert all(la.in_row_span(basis, row) for row in m)
    assert all(la.in_row_span(m, row) for row in basis)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=5))
def test_hnf_idempotent(m):
    h = la.hnf(m)
    assert la.hnf(h) == h


def test_hnf_convention_reduces_below_pivots():
    assert la.hnf_basis([[2, 0], [0, 2], [1, 1], [-1, 1]]) == [[2, 0], [1, 1]]
