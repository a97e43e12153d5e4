"""p-adic digits of rationals and Lucas-style binomials modulo p.

Only rationals whose denominator is prime to p are handled; these are the
p-adic integers that occur as exponents ``i/n`` with ``p`` not dividing ``n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd


def floor_div(a: int, b: int) -> int:
    """Floor of ``a / b`` for a positive integer ``b``."""
    if b <= 0:
        raise ValueError(f"divisor must be positive, got {b}")
    return a // b


def ceil_div(a: int, b: int) -> int:
    """Ceiling of ``a / b`` for a positive integer ``b``."""
    if b <= 0:
        raise ValueError(f"divisor must be positive, got {b}")
    return -((-a) // b)


def floor_frac(x: Fraction) -> int:
    return x.numerator // x.denominator


def ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


@dataclass(frozen=True)
class PAdicRational:
    """The rational ``numerator/denominator`` viewed inside the p-adic integers."""

    numerator: int
    denominator: int
    p: int

    def __post_init__(self) -> None:
        if self.denominator == 0:
            raise ValueError("denominator must be nonzero")
        if self.p < 5:
            raise ValueError(f"p must be a prime >= 5, got {self.p}")
        num, den = self.numerator, self.denominator
        if den < 0:
            num, den = -num, -den
        g = gcd(num, den)
        num, den = num // g, den // g
        if den % self.p == 0:
            raise ValueError(f"{num}/{den} is not a {self.p}-adic integer")
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    @classmethod
    def of(cls, value: int | Fraction, p: int) -> PAdicRational:
        value = Fraction(value)
        return cls(value.numerator, value.denominator, p)

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def residue(self, modulus: int) -> int:
        """Image in ``Z / modulus`` for ``modulus`` a power of ``p``."""
        return self.numerator * pow(self.denominator, -1, modulus) % modulus

    def digit(self, nu: int) -> int:
        return padic_digits(self, nu + 1)[nu]


def padic_digits(a: PAdicRational, k: int) -> list[int]:
    """First ``k`` digits ``d_0, ..., d_{k-1}`` of the p-adic expansion of ``a``.

    Each step peels off ``d = num * den^{-1} mod p`` and replaces ``a`` by
    ``(a - d) / p``, which stays exact because ``p`` never divides ``den``.
    """
    if k <= 0:
        raise ValueError(f"number of digits must be positive, got {k}")
    p = a.p
    num, den = a.numerator, a.denominator
    if den % p == 0:
        raise ValueError("denominator divisible by p")
    inv = pow(den, -1, p)
    digits = []
    for _ in range(k):
        d = num * inv % p
        digits.append(d)
        num = (num - d * den) // p
    return digits


def _int_digits(i: int, p: int) -> list[int]:
    out = []
    while i:
        i, r = divmod(i, p)
        out.append(r)
    return out


def binom_mod_p(a: PAdicRational, i: int) -> int:
    """``C(a, i) mod p`` via the digit-wise product over the digits of ``i``."""
    if i < 0:
        raise ValueError(f"lower index must be nonnegative, got {i}")
    p = a.p
    idig = _int_digits(i, p)
    if not idig:
        return 1
    adig = padic_digits(a, len(idig))
    out = 1
    for ad, idg in zip(adig, idig):
        if idg > ad:
            return 0
        out = out * comb(ad, idg) % p
    return out


def binom_vanishes(num: int, den: int, i: int, p: int) -> bool:
    """Whether ``C(num/den, i)`` is zero modulo ``p``."""
    return binom_mod_p(PAdicRational(num, den, p), i) == 0
