from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from eqdef.padic import (
    PAdicRational,
    binom_mod_p,
    binom_vanishes,
    ceil_div,
    ceil_frac,
    floor_div,
    floor_frac,
    padic_digits,
)

primes = st.sampled_from([5, 7, 11, 13])


@given(st.integers(0, 400), st.integers(0, 400), primes)
def test_lucas_matches_direct_binomial(a, i, p):
    assert binom_mod_p(PAdicRational(a, 1, p), i) == comb(a, i) % p


@given(st.integers(-10 ** 6, 10 ** 6), st.integers(0, 4), primes)
@settings(max_examples=1000)
def test_nested_floor_identity(a, ell, p):
    assert floor_div(floor_div(a, p ** ell), p) == floor_div(a, p ** (ell + 1))


@given(st.integers(-500, 500), st.integers(1, 60).filter(lambda d: d % 5), st.integers(1, 6))
def test_digits_reconstruct_residue(num, den, k):
    a = PAdicRational(num, den, 5)
    digits = padic_digits(a, k)
    assert all(0 <= d < 5 for d in digits)
    assert sum(d * 5 ** i for i, d in enumerate(digits)) == a.residue(5 ** k)


@given(st.integers(-300, 300), st.integers(1, 40).filter(lambda d: d % 7), st.integers(0, 30))
def test_binomial_of_rational_matches_residue_product(num, den, i):
    # C(a, i) mod p only depends on a mod p^k with p^k > i
    p = 7
    a = PAdicRational(num, den, p)
    k = 1
    while p ** k <= i:
        k += 1
    r = a.residue(p ** k)
    assert binom_mod_p(a, i) == comb(r, i) % p


def test_negative_integer_digits():
    # -1 = (p-1) + (p-1) p + ...
    assert padic_digits(PAdicRational(-1, 1, 5), 4) == [4, 4, 4, 4]


def test_binom_vanishes_examples():
    # C(i/(n), p-1) for the classes of the conductor-6 layer at p = 5
    assert [i for i in range(2, 8) if not binom_vanishes(i, 6, 4, 5)] == [4]


@given(st.integers(-1000, 1000), st.integers(1, 50))
def test_floor_ceil_against_fraction(a, b):
    assert floor_div(a, b) == floor_frac(Fraction(a, b))
    assert ceil_div(a, b) == ceil_frac(Fraction(a, b))
    assert ceil_div(a, b) - floor_div(a, b) == (0 if a % b == 0 else 1)


def test_rejects_non_integral():
    with pytest.raises(ValueError):
        PAdicRational(1, 5, 5)
    with pytest.raises(ValueError):
        binom_mod_p(PAdicRational(1, 2, 5), -1)
