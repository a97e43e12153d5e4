import numpy as np
import pytest
from hypothesis import given, strategies as st

from eqdef.algebra import (
    FieldMatrix,
    FieldPolynomial,
    FiniteField,
    characteristic_polynomial,
    companion_matrix,
    determinant,
    eigenspace_one_dimension,
    kernel_dimension,
    matmul_mod_p,
    minimal_degree,
    nullspace_mod_p,
    primitive_root_of_unity,
    rank_mod_p,
    root_one_multiplicity,
)

F25 = FiniteField(5, 2)


@given(st.integers(0, 24), st.integers(0, 24), st.integers(0, 24))
def test_field_axioms_f25(a, b, c):
    f = F25
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.mul(a, b) == f.mul(b, a)
    if a:
        assert f.mul(a, f.inv(a)) == f.one


def test_frobenius_fixes_prime_field():
    assert [F25.frobenius(x) == x for x in range(25)].count(True) == 5


@pytest.mark.parametrize("p,n", [(5, 4), (5, 3), (7, 6), (13, 6), (5, 24)])
def test_primitive_root_has_exact_order(p, n):
    fld = FiniteField(p, minimal_degree(p, n))
    z = primitive_root_of_unity(fld, n)
    assert fld.multiplicative_order(z) == n


def test_minimal_degree():
    assert minimal_degree(5, 4) == 1
    assert minimal_degree(5, 3) == 2
    assert minimal_degree(5, 31) == 3


@given(st.lists(st.lists(st.integers(0, 6), min_size=5, max_size=5), min_size=1, max_size=6))
def test_rank_nullity_numpy(rows):
    a = np.array(rows, dtype=np.int64)
    ns = nullspace_mod_p(a, 7)
    assert rank_mod_p(a, 7) + ns.shape[0] == 5
    if ns.shape[0]:
        assert not (a @ ns.T % 7).any()


@given(st.lists(st.lists(st.integers(0, 4), min_size=3, max_size=3), min_size=3, max_size=3))
def test_rank_nullity_field_matrix(rows):
    m = FieldMatrix.from_rows(FiniteField(5), rows)
    assert m.rank() + kernel_dimension(m) == 3
    assert (determinant(m) != 0) == (m.rank() == 3)


@given(st.lists(st.integers(0, 4), min_size=3, max_size=3))
def test_companion_charpoly_roundtrip(coeffs):
    fld = FiniteField(5)
    f = FieldPolynomial(fld, tuple(coeffs) + (1,))
    assert characteristic_polynomial(companion_matrix(f)).coeffs == f.coeffs


def test_root_one_multiplicity_and_eigenspace():
    fld = FiniteField(5)
    # (x - 1)^2 (x - 2) = x^3 + x^2 + 3 over F_5
    f = FieldPolynomial(fld, (4, 1)) * FieldPolynomial(fld, (4, 1)) * FieldPolynomial(fld, (3, 1))
    assert f.coeffs == (3, 0, 1, 1)
    assert root_one_multiplicity(f) == 2
    jordan = FieldMatrix.from_rows(fld, [[1, 1, 0], [0, 1, 0], [0, 0, 2]])
    assert root_one_multiplicity(characteristic_polynomial(jordan)) == 2
    assert eigenspace_one_dimension(jordan) == 1


def test_matmul_mod_p_matches_integer_product():
    rng = np.random.default_rng(1)
    a = rng.integers(0, 13, (40, 30))
    b = rng.integers(0, 13, (30, 20))
    assert np.array_equal(matmul_mod_p(a, b, 13), a @ b % 13)
