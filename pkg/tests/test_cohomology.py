import pytest
from hypothesis import given, strategies as st

from eqdef.cohomology import (
    CONVENTIONS,
    DimBound,
    basis_h1_cyclic,
    basis_h1_elem_abelian,
    basis_quotient_step,
    cyclic_basis,
    dim_h1_cyclic,
    dim_h1_elem_abelian,
    dim_h1_quotient_step,
    local_bounds,
    minimal_polynomial_coeffs,
    ordinary_weights,
    pries_dimension,
    pries_r,
    semidirect_delta,
    tame_local_bounds,
    tame_reduce,
    tame_weight,
    unipotent_invariant_exponents,
)
from eqdef.filtration import RamificationFiltration
from eqdef.padic import ceil_div, floor_div

primes = st.sampled_from([5, 7, 11, 13])


def _prime_to(p):
    return st.integers(1, 40).filter(lambda n: n % p)


@given(primes.flatmap(lambda p: st.tuples(st.just(p), _prime_to(p))), st.integers(-40, 40))
def test_cyclic_basis_size_is_dimension(pn, a):
    p, n = pn
    assert len(basis_h1_cyclic(p, n, a)) == dim_h1_cyclic(p, n, a)


@given(primes.flatmap(lambda p: st.tuples(st.just(p), _prime_to(p))))
def test_tangent_module_dimension_in_terms_of_different(pn):
    # T_O = t^{-(n+1)} k[[t]]: the count is floor(2d/p) - ceil(d/p)
    p, n = pn
    d = (n + 1) * (p - 1)
    assert dim_h1_cyclic(p, n, -(n + 1)) == floor_div(2 * d, p) - ceil_div(d, p)


@given(st.sampled_from([5, 7]), st.integers(1, 12), st.integers(1, 4), st.integers(-20, 20))
def test_elem_abelian_basis_size_is_dimension(p, n, s, a):
    if n % p == 0:
        return
    b = basis_h1_elem_abelian(p, n, s, a)
    assert b.dimension == dim_h1_elem_abelian(p, n, s, a) == len(b.classes())
    assert dim_h1_elem_abelian(p, n, 1, a) == dim_h1_cyclic(p, n, a)


@pytest.mark.parametrize(
    "p,n,a,dim",
    [(5, 6, -7, 5), (13, 19, -20, 17), (5, 1, 1, 0), (7, 8, -9, 7)],
)
def test_cyclic_examples(p, n, a, dim):
    assert dim_h1_cyclic(p, n, a) == dim


def test_fermat_basis():
    assert basis_h1_cyclic(5, 6, -7) == [2, 3, 5, 6, 7]
    assert cyclic_basis(5, 6, -7).dimension == 5


def test_elem_abelian_examples():
    assert dim_h1_elem_abelian(5, 2, 2, 0) == 2 * ((3 * 4) // 5)


@pytest.mark.parametrize("p,n", [(3, 1), (5, 5), (5, 0)])
def test_cyclic_rejects_bad_input(p, n):
    with pytest.raises(ValueError):
        dim_h1_cyclic(p, n, 0)


@st.composite
def two_jump(draw):
    p = 5
    t2 = draw(st.integers(1, 9).filter(lambda t: t % p))
    k = draw(st.integers(1, 3))
    t1 = t2 + k * p
    o1 = draw(st.sampled_from([25, 125]))
    return RamificationFiltration.from_pairs(p, [(t2, o1), (t1, 5)])


@given(two_jump())
def test_local_bounds_order(filt):
    for inv in (None, "unipotent"):
        b = local_bounds(filt, inv)
        assert b.lower <= b.upper_invariant <= b.upper_raw
        assert b.lower == dim_h1_quotient_step(filt, len(filt.layers()))
        assert b.upper_raw == sum(dim_h1_quotient_step(filt, i) for i in range(1, len(filt.layers()) + 1))
    for lam in range(1, len(filt.layers()) + 1):
        assert basis_quotient_step(filt, lam).dimension == dim_h1_quotient_step(filt, lam)


@given(two_jump().filter(lambda f: f.is_cyclic_tower))
def test_cyclic_tower_exact_equals_upper_invariant(filt):
    b = local_bounds(filt, "unipotent")
    assert b.exact == b.upper_invariant
    # without invariant data nothing is claimed
    assert local_bounds(filt).exact is None


def test_fermat_local_bounds():
    filt = RamificationFiltration.from_pairs(5, [(1, 125), (6, 5)], tame_order=24)
    assert [dim_h1_quotient_step(filt, i) for i in (1, 2)] == [5, 1]
    assert [len(lv.exponents) for lv in basis_quotient_step(filt, 2).levels] == [1, 0]
    assert local_bounds(filt, {1: 2}).interval == (1, 3)
    assert local_bounds(filt, "unipotent").interval == (1, 3)
    assert unipotent_invariant_exponents(5, 6, -7) == [2, 5]
    for conv in CONVENTIONS:
        assert tame_local_bounds(filt, conv, "unipotent").steps == (0, 0)


def test_local_bounds_validates_invariants():
    filt = RamificationFiltration.from_pairs(5, [(1, 125), (6, 5)])
    with pytest.raises(ValueError):
        local_bounds(filt, {2: 1})
    with pytest.raises(ValueError):
        local_bounds(filt, {1: 9})


def test_dimbound_invariants():
    with pytest.raises(ValueError):
        DimBound(3, 2, 4)
    with pytest.raises(ValueError):
        DimBound(1, 2, 4, exact=3)


def test_tame_weights_and_reduce():
    basis = cyclic_basis(7, 1, -2)
    assert basis.dimension == 1
    assert tame_weight(7, 1, 2, 6, 1, "derived") == 2
    assert tame_weight(7, 1, 2, 6, 1, "lemma") == (-2 + 1) % 6
    with pytest.raises(ValueError):
        tame_weight(7, 1, 2, 6, 1, "other")
    with pytest.raises(ValueError):
        tame_reduce(basis, 7, 1)
    red = tame_reduce(cyclic_basis(7, 1, -2), 2, 1, "derived")
    assert red.count == red.survivors.dimension


@pytest.mark.parametrize("s,d,n0", [(2, 1, 4), (4, 1, 4), (4, 2, 3), (6, 3, 31)])
def test_semidirect_ordinary_specialisation(s, d, n0):
    res = semidirect_delta(5, n0, 1, s, ordinary_weights(s, d))
    assert res.d == d
    assert res.total == s // d - 1


def test_minimal_polynomial_has_root_zeta():
    coeffs = minimal_polynomial_coeffs(5, 3, 1)
    assert len(coeffs) == 2
    with pytest.raises(ValueError):
        semidirect_delta(5, 3, 1, 3, ordinary_weights(2, 2))


def test_pries_counts():
    assert (pries_r(13, 19, 6), pries_dimension(13, 19, 6)) == (3, 3)
    assert (pries_r(7, 90, 3), pries_dimension(7, 90, 3)) == (26, 26)
    # E_0 = {5, 11, 17, 23, 29, 35}; 13 e > 35 for all of them
    assert pries_r(13, 35, 6) == 6
