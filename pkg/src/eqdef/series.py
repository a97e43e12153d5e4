"""Truncated Laurent series over finite fields and Artin-Schreier automorphisms.

A series stores its coefficients from the valuation up to (excluding) an
absolute precision ``P``; everything at exponent ``>= P`` is unknown.  Each
series carries its own precision and arithmetic propagates it pessimistically.
Coefficients live in an ``(L, d)`` int64 array of ``F_p``-coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import FiniteField
from .padic import PAdicRational, padic_digits


class PrecisionError(ArithmeticError):
    """Raised when a computation has no known coefficients left."""


def _reduce_coords(c: np.ndarray, fld: FiniteField) -> np.ndarray:
    """Fold coordinate degrees ``>= d`` back with the modulus, then reduce mod p."""
    p, d = fld.p, fld.d
    c = c % p
    if c.shape[1] <= d:
        out = np.zeros((c.shape[0], d), dtype=np.int64)
        out[:, : c.shape[1]] = c
        return out
    mod = np.array(fld.modulus, dtype=np.int64)
    for k in range(c.shape[1] - 1, d - 1, -1):
        lead = c[:, k].copy()
        if lead.any():
            # X^k = X^{k-d} * X^d and X^d = -sum_{i<d} m_i X^i
            for i in range(d):
                c[:, k - d + i] -= lead * mod[i]
            c = c % p
    return c[:, :d].copy()


@dataclass(frozen=True, eq=False)
class TruncatedLaurent:
    field: FiniteField
    valuation: int
    coeffs: np.ndarray
    precision: int

    def __post_init__(self) -> None:
        c = np.asarray(self.coeffs, dtype=np.int64).reshape(-1, self.field.d) % self.field.p
        length = self.precision - self.valuation
        if length < 0:
            raise PrecisionError(
                f"precision {self.precision} below valuation {self.valuation}"
            )
        if c.shape[0] > length:
            c = c[:length]
        elif c.shape[0] < length:
            c = np.vstack([c, np.zeros((length - c.shape[0], self.field.d), dtype=np.int64)])
        nz = np.nonzero(c.any(axis=1))[0]
        v = self.valuation
        if nz.size == 0:
            v, c = self.precision, c[:0]
        elif nz[0] > 0:
            v, c = v + int(nz[0]), c[nz[0]:]
        object.__setattr__(self, "valuation", v)
        object.__setattr__(self, "coeffs", c)

    # -- construction ------------------------------------------------------
    @classmethod
    def zero(cls, fld: FiniteField, precision: int) -> TruncatedLaurent:
        return cls(fld, precision, np.zeros((0, fld.d), dtype=np.int64), precision)

    @classmethod
    def from_terms(cls, fld: FiniteField, terms: dict[int, int], precision: int) -> TruncatedLaurent:
        """Series ``sum c t^e`` from ``{e: c}`` with field elements ``c``."""
        keep = {e: c for e, c in terms.items() if e < precision and c}
        if not keep:
            return cls.zero(fld, precision)
        v = min(keep)
        arr = np.zeros((precision - v, fld.d), dtype=np.int64)
        for e, c in keep.items():
            arr[e - v] = fld.vec(c)
        return cls(fld, v, arr, precision)

    @classmethod
    def monomial(cls, fld: FiniteField, e: int, precision: int, c: int = 1) -> TruncatedLaurent:
        return cls.from_terms(fld, {e: c}, precision)

    @classmethod
    def one(cls, fld: FiniteField, precision: int) -> TruncatedLaurent:
        return cls.monomial(fld, 0, precision)

    # -- inspection --------------------------------------------------------
    def is_zero(self) -> bool:
        return self.coeffs.shape[0] == 0

    def coefficient(self, e: int) -> int:
        if e >= self.precision:
            raise PrecisionError(f"coefficient of t^{e} unknown at precision {self.precision}")
        if e < self.valuation:
            return 0
        return self.field.from_vec(self.coeffs[e - self.valuation])

    def terms(self) -> dict[int, int]:
        return {
            self.valuation + i: self.field.from_vec(row)
            for i, row in enumerate(self.coeffs)
            if row.any()
        }

    def leading_coefficient(self) -> int:
        if self.is_zero():
            raise PrecisionError("zero to precision has no leading coefficient")
        return self.field.from_vec(self.coeffs[0])

    def window(self, lo: int, hi: int) -> np.ndarray:
        """Coordinates of exponents ``lo..hi-1`` as an ``(hi-lo, d)`` array."""
        if hi > self.precision:
            raise PrecisionError(f"need exponents below {hi}, known below {self.precision}")
        out = np.zeros((hi - lo, self.field.d), dtype=np.int64)
        a, b = max(lo, self.valuation), hi
        if a < b:
            out[a - lo : b - lo] = self.coeffs[a - self.valuation : b - self.valuation]
        return out

    def truncate(self, precision: int) -> TruncatedLaurent:
        if precision >= self.precision:
            return self
        return TruncatedLaurent(self.field, min(self.valuation, precision), self.coeffs, precision) \
            if self.valuation < precision else TruncatedLaurent.zero(self.field, precision)

    def agrees_with(self, other: TruncatedLaurent) -> bool:
        """Equality on the exponents known for both series."""
        P = min(self.precision, other.precision)
        lo = min(self.valuation, other.valuation, P)
        return bool(np.array_equal(self.window(lo, P), other.window(lo, P)))

    def __repr__(self) -> str:
        shown = list(self.terms().items())[:6]
        body = " + ".join(f"{c}*t^{e}" for e, c in shown) or "0"
        return f"TruncatedLaurent({body} + O(t^{self.precision}))"

    # -- arithmetic --------------------------------------------------------
    def _check(self, other: TruncatedLaurent) -> None:
        if other.field != self.field:
            raise ValueError("series over different fields")

    def __add__(self, other: TruncatedLaurent) -> TruncatedLaurent:
        self._check(other)
        P = min(self.precision, other.precision)
        lo = min(self.valuation, other.valuation, P)
        return TruncatedLaurent(self.field, lo, self.window(lo, P) + other.window(lo, P), P)

    def __neg__(self) -> TruncatedLaurent:
        return TruncatedLaurent(self.field, self.valuation, -self.coeffs, self.precision)

    def __sub__(self, other: TruncatedLaurent) -> TruncatedLaurent:
        return self + (-other)

    def scale(self, c: int) -> TruncatedLaurent:
        m = self.field.mul_matrix(c)
        return TruncatedLaurent(self.field, self.valuation, self.coeffs @ m.T, self.precision)

    def shift(self, k: int) -> TruncatedLaurent:
        """Multiply by ``t^k``."""
        return TruncatedLaurent(self.field, self.valuation + k, self.coeffs, self.precision + k)

    def __mul__(self, other: TruncatedLaurent) -> TruncatedLaurent:
        self._check(other)
        fld = self.field
        if self.is_zero() or other.is_zero():
            P = min(self.precision + other.valuation, other.precision + self.valuation)
            return TruncatedLaurent.zero(fld, P)
        P = min(self.precision + other.valuation, other.precision + self.valuation)
        v = self.valuation + other.valuation
        n = P - v
        a, b = self.coeffs[:n], other.coeffs[:n]
        d = fld.d
        if d == 1:
            c = np.convolve(a[:, 0], b[:, 0])[:n].reshape(-1, 1)
        else:
            c = np.zeros((n, 2 * d - 1), dtype=np.int64)
            for i in range(d):
                for j in range(d):
                    cv = np.convolve(a[:, i], b[:, j])[:n]
                    c[: cv.shape[0], i + j] += cv
            c = _reduce_coords(c, fld)
        return TruncatedLaurent(fld, v, c, P)

    def inverse(self) -> TruncatedLaurent:
        """Multiplicative inverse; relative precision is preserved."""
        if self.is_zero():
            raise PrecisionError("cannot invert a series that is zero to precision")
        fld = self.field
        v = self.valuation
        rel = self.precision - v
        lead_inv = fld.inv(self.leading_coefficient())
        u = self.shift(-v).scale(lead_inv)
        g = TruncatedLaurent.one(fld, 1)
        k = 1
        two = TruncatedLaurent.monomial(fld, 0, rel, 2)
        while k < rel:
            k = min(2 * k, rel)
            uk = u.truncate(k)
            g = TruncatedLaurent(fld, 0, g.coeffs, k)
            g = (g * (two.truncate(k) - uk * g)).truncate(k)
        return g.scale(lead_inv).shift(-v)

    def __pow__(self, e: int) -> TruncatedLaurent:
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return TruncatedLaurent.one(self.field, self.precision - self.valuation)
        out = None
        base = self
        while e:
            if e & 1:
                out = base if out is None else out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def frobenius(self) -> TruncatedLaurent:
        """Coefficientwise ``p``-th power with exponents multiplied by ``p``."""
        fld, p = self.field, self.field.p
        n = self.coeffs.shape[0]
        arr = np.zeros((max(n * p - (p - 1), 0), fld.d), dtype=np.int64)
        for i, row in enumerate(self.coeffs):
            if row.any():
                arr[i * p] = fld.vec(fld.frobenius(fld.from_vec(row)))
        return TruncatedLaurent(fld, self.valuation * p, arr, self.precision * p)

    def derivative(self) -> TruncatedLaurent:
        fld = self.field
        n = self.coeffs.shape[0]
        exps = np.arange(self.valuation, self.valuation + n, dtype=np.int64) % fld.p
        return TruncatedLaurent(
            fld, self.valuation - 1, self.coeffs * exps[:, None], self.precision - 1
        )


def binomial_power(u: TruncatedLaurent, e: PAdicRational | int) -> TruncatedLaurent:
    """``u^e`` for ``u = 1 + y`` with ``val(y) >= 1`` and a p-adic integer ``e``.

    Equal to ``sum_nu C(e, nu) y^nu``; evaluated as the product over the
    p-adic digits ``e_k`` of ``Frob^k(u)^{e_k}``, which is the same series
    by the digit-wise factorisation of the binomial coefficients.
    """
    fld = u.field
    if not isinstance(e, PAdicRational):
        e = PAdicRational(int(e), 1, fld.p)
    if e.p != fld.p:
        raise ValueError("exponent prime differs from the field characteristic")
    if u.valuation != 0 or u.coefficient(0) != 1:
        raise ValueError("binomial power needs constant term 1")
    P = u.precision
    if e.denominator == 1 and e.numerator >= 0:
        return (u ** e.numerator).truncate(P)
    k = 1
    while fld.p ** k < P:
        k += 1
    digits = padic_digits(e, k)
    out = TruncatedLaurent.one(fld, P)
    frob = u
    for dk in digits:
        if dk:
            out = (out * frob ** dk).truncate(P)
        frob = frob.frobenius().truncate(P)
    return out


def binomial_power_direct(u: TruncatedLaurent, e: PAdicRational) -> TruncatedLaurent:
    """Reference evaluation of ``sum_nu C(e, nu) y^nu`` term by term."""
    from .padic import binom_mod_p

    fld = u.field
    P = u.precision
    y = u - TruncatedLaurent.one(fld, P)
    out = TruncatedLaurent.one(fld, P)
    if y.is_zero():
        return out
    ypow = TruncatedLaurent.one(fld, P)
    nu = 0
    while True:
        nu += 1
        ypow = (ypow * y).truncate(P)
        if ypow.is_zero():
            break
        c = binom_mod_p(e, nu)
        if c:
            out = out + ypow.scale(c)
    return out


def substitute(f: TruncatedLaurent, s: TruncatedLaurent) -> TruncatedLaurent:
    """``f(s(t))`` for a series ``s`` of valuation exactly 1."""
    if s.valuation != 1:
        raise ValueError("substitution needs a series of valuation 1")
    fld = f.field
    if f.is_zero():
        return TruncatedLaurent.zero(fld, f.precision)
    unit = s.shift(-1)
    rel = unit.precision
    v = f.valuation
    P = min(f.precision, v + rel)
    if P <= v:
        raise PrecisionError("substitution exhausted the available precision")
    unit = unit.truncate(P - v)
    # f(s) = s^v * sum_k f_{v+k} s^k, evaluated by Horner in s
    n = P - v
    acc = TruncatedLaurent.zero(fld, n)
    s_tr = s.truncate(n)
    for k in range(n - 1, -1, -1):
        c = f.coeffs[k] if k < f.coeffs.shape[0] else None
        term = (
            TruncatedLaurent(fld, 0, c.reshape(1, -1), n)
            if c is not None and c.any()
            else TruncatedLaurent.zero(fld, n)
        )
        acc = (acc * s_tr).truncate(n) + term
    return (acc * (unit ** v).truncate(n)).truncate(n).shift(v)


def reversion(s: TruncatedLaurent) -> TruncatedLaurent:
    """Compositional inverse ``r`` with ``s(r(t)) = t`` for ``s`` of valuation 1."""
    fld = s.field
    if s.valuation != 1:
        raise ValueError("reversion needs a series of valuation 1")
    P = s.precision
    t = TruncatedLaurent.monomial(fld, 1, P)
    ds = s.derivative()
    r = t.scale(fld.inv(s.leading_coefficient())).truncate(2)
    k = 2
    for _ in range(4 * P.bit_length() + 8):
        k = min(2 * k, P)
        r = TruncatedLaurent(fld, r.valuation, r.coeffs, k)
        err = substitute(s.truncate(k), r) - t.truncate(k)
        if k == P and err.is_zero():
            return r
        r = (r - err * substitute(ds.truncate(k - 1), r).inverse()).truncate(k)
    raise PrecisionError("series reversion did not converge")


@dataclass(frozen=True)
class SeriesAut:
    """Automorphism of ``k((t))`` given by the image of ``t`` (valuation 1)."""

    image: TruncatedLaurent

    @property
    def field(self) -> FiniteField:
        return self.image.field

    def apply(self, f: TruncatedLaurent) -> TruncatedLaurent:
        return substitute(f, self.image)

    def jacobian_inverse(self) -> TruncatedLaurent:
        """``1 / sigma(t)'``, the factor of the adjoint action on ``d/dt``."""
        return self.image.derivative().inverse()

    def adjoint(self, f: TruncatedLaurent) -> TruncatedLaurent:
        """Coefficient of ``(f d/dt)^sigma = f(sigma t) / sigma(t)' d/dt``."""
        return self.apply(f) * self.jacobian_inverse()

    def then(self, other: SeriesAut) -> SeriesAut:
        """Automorphism ``f -> other(self(f))`` as a substitution."""
        return SeriesAut(substitute(self.image, other.image))


@dataclass(frozen=True)
class ArtinSchreierAut:
    """``sigma_v(t) = t (1 + v t^n)^{-1/n}`` for a conductor ``n`` prime to ``p``."""

    field: FiniteField
    n: int
    v: int

    def __post_init__(self) -> None:
        if self.n <= 0 or self.n % self.field.p == 0:
            raise ValueError(f"conductor must be positive and prime to {self.field.p}, got {self.n}")

    def base(self, precision: int) -> TruncatedLaurent:
        """``1 + v t^n`` to the given precision."""
        return TruncatedLaurent.from_terms(self.field, {0: 1, self.n: self.v}, precision)

    def image(self, precision: int) -> TruncatedLaurent:
        e = PAdicRational(-1, self.n, self.field.p)
        return binomial_power(self.base(precision - 1), e).shift(1)

    def as_series_aut(self, precision: int) -> SeriesAut:
        return SeriesAut(self.image(precision))


def default_precision(n: int, p: int) -> int:
    return 4 * (n + 1) * p


def apply_aut(sigma: ArtinSchreierAut, f: TruncatedLaurent) -> TruncatedLaurent:
    """Substitute ``sigma(t)`` into ``f``."""
    if sigma.v == 0:
        return f
    rel = f.precision - f.valuation
    if rel <= 0:
        raise PrecisionError("series carries no known coefficients")
    e = PAdicRational(-1, sigma.n, sigma.field.p)
    unit = binomial_power(sigma.base(rel), e)
    return substitute(f, unit.shift(1))


@dataclass(frozen=True, eq=False)
class DerivationElement:
    """The derivation ``series * d/dt``."""

    series: TruncatedLaurent

    def agrees_with(self, other: DerivationElement) -> bool:
        return self.series.agrees_with(other.series)


def adjoint_on_derivation(sigma: ArtinSchreierAut, D: DerivationElement) -> DerivationElement:
    """``(f d/dt)^sigma = f^sigma (1 + v t^n)^{(n+1)/n} d/dt``."""
    if sigma.v == 0:
        return D
    f = D.series
    rel = f.precision - f.valuation
    if rel <= 0:
        raise PrecisionError("derivation carries no known coefficients")
    fs = apply_aut(sigma, f)
    factor = binomial_power(sigma.base(rel), PAdicRational(sigma.n + 1, sigma.n, sigma.field.p))
    return DerivationElement(fs * factor)


def tame_scale(zeta: int, D: DerivationElement) -> DerivationElement:
    """Conjugation by ``t -> zeta t``: ``t^r d/dt`` picks up ``zeta^{r-1}``."""
    f = D.series
    fld = f.field
    if zeta == 0:
        raise ValueError("zeta must be nonzero")
    terms = {r: fld.mul(c, fld.pow(zeta, r - 1)) for r, c in f.terms().items()}
    return DerivationElement(TruncatedLaurent.from_terms(fld, terms, f.precision))
