"""Finite fields, dense matrices over them, and multiplicity of the root 1.

Elements of ``F_{p^d}`` are packed coefficient vectors: the integer
``sum c_i p^i`` stands for ``sum c_i X^i`` modulo the field's modulus.  For
``d = 1`` this is the usual residue.  Prime-field linear algebra used by the
cohomology oracle runs on numpy arrays (``rref_mod_p`` and friends).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out, i = [], 2
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            while n % i == 0:
                n //= i
        i += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over F_p as little-endian int lists ---------------------------

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _ptrim([x % p for x in a])
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _ptrim(a)
    return a


def _lex_monics(p: int, deg: int):
    for tail in product(range(p), repeat=deg):
        yield list(reversed(tail)) + [1]


def _is_irreducible(f: list[int], p: int) -> bool:
    deg = len(f) - 1
    for k in range(1, deg // 2 + 1):
        for g in _lex_monics(p, k):
            if not _pmod(list(f), g, p):
                return False
    return True


def least_irreducible(p: int, d: int) -> list[int]:
    """Lexicographically least monic irreducible of degree ``d`` over ``F_p``."""
    if d == 1:
        return [0, 1]
    for f in _lex_monics(p, d):
        if f[0] != 0 and _is_irreducible(f, p):
            return f
    raise AssertionError("unreachable: irreducibles exist in every degree")


@dataclass(frozen=True)
class FiniteField:
    """The field ``F_{p^d}`` built on the least monic irreducible of degree ``d``."""

    p: int
    d: int = 1
    modulus: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.d < 1:
            raise ValueError(f"extension degree must be positive, got {self.d}")
        if not self.modulus:
            object.__setattr__(self, "modulus", tuple(least_irreducible(self.p, self.d)))
        elif not _is_irreducible(list(self.modulus), self.p):
            raise ValueError("modulus is not irreducible")

    @property
    def order(self) -> int:
        return self.p ** self.d

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def vec(self, x: int) -> list[int]:
        out = []
        for _ in range(self.d):
            x, r = divmod(x, self.p)
            out.append(r)
        return out

    def from_vec(self, v) -> int:
        x = 0
        for c in reversed(list(v)):
            x = x * self.p + int(c) % self.p
        return x

    def __call__(self, n: int) -> int:
        """Image of the integer ``n`` in the prime field."""
        return n % self.p

    def elements(self) -> range:
        return range(self.order)

    def add(self, x: int, y: int) -> int:
        if self.d == 1:
            return (x + y) % self.p
        return self.from_vec(a + b for a, b in zip(self.vec(x), self.vec(y)))

    def neg(self, x: int) -> int:
        if self.d == 1:
            return -x % self.p
        return self.from_vec(-a for a in self.vec(x))

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if self.d == 1:
            return x * y % self.p
        a, b = self.vec(x), self.vec(y)
        prod_ = [0] * (2 * self.d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod_[i + j] += ai * bj
        r = _pmod(prod_, list(self.modulus), self.p)
        return self.from_vec(r + [0] * (self.d - len(r)))

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            x, e = self.inv(x), -e
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, x)
            x = self.mul(x, x)
            e >>= 1
        return out

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.d == 1:
            return pow(x, -1, self.p)
        return self.pow(x, self.order - 2)

    def frobenius(self, x: int, k: int = 1) -> int:
        return self.pow(x, self.p ** k)

    def mul_matrix(self, c: int) -> np.ndarray:
        """``d x d`` matrix over ``F_p`` of multiplication by ``c`` on coordinate vectors."""
        cols = [self.vec(self.mul(c, self.p ** j)) for j in range(self.d)]
        return np.array(cols, dtype=np.int64).T

    def multiplicative_order(self, x: int) -> int:
        if x == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.order - 1
        for q in _prime_factors(n):
            while n % q == 0 and self.pow(x, n // q) == 1:
                n //= q
        return n

    @cached_property
    def generator(self) -> int:
        """Least (in packed order) generator of the multiplicative group."""
        n = self.order - 1
        qs = _prime_factors(n)
        for x in range(1, self.order):
            if all(self.pow(x, n // q) != 1 for q in qs):
                return x
        raise AssertionError("unreachable: the multiplicative group is cyclic")

    def sqrt_p(self, x: int) -> int:
        """The unique ``p``-th root of ``x`` (inverse Frobenius)."""
        return self.pow(x, self.p ** (self.d - 1))


def primitive_root_of_unity(fld: FiniteField, n: int) -> int:
    """A primitive ``n``-th root of unity: the least generator raised to ``(q-1)/n``."""
    q1 = fld.order - 1
    if n <= 0 or q1 % n:
        d = 1
        while (fld.p ** d - 1) % n:
            d += 1
        raise ValueError(
            f"{n} does not divide {fld.p}^{fld.d} - 1; use extension degree {d} (or a multiple)"
        )
    return fld.pow(fld.generator, q1 // n)


def minimal_degree(p: int, n: int) -> int:
    """Least ``d`` with ``n | p^d - 1``."""
    if n % p == 0:
        raise ValueError(f"{p} divides {n}: no {n}-th roots of unity in characteristic {p}")
    d = 1
    while (p ** d - 1) % n:
        d += 1
    return d


@dataclass(frozen=True)
class FieldMatrix:
    """Dense matrix with entries in one finite field."""

    field: FiniteField
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, fld: FiniteField, rows: list[list[int]]) -> FieldMatrix:
        r = len(rows)
        c = len(rows[0]) if rows else 0
        if any(len(row) != c for row in rows):
            raise ValueError("ragged matrix")
        return cls(fld, r, c, tuple(tuple(x for x in row) for row in rows))

    @classmethod
    def identity(cls, fld: FiniteField, n: int) -> FieldMatrix:
        return cls.from_rows(fld, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, fld: FiniteField, r: int, c: int) -> FieldMatrix:
        return cls.from_rows(fld, [[0] * c for _ in range(r)])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries[ij[0]][ij[1]]

    def __sub__(self, other: FieldMatrix) -> FieldMatrix:
        f = self.field
        return FieldMatrix.from_rows(
            f, [[f.sub(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    def __matmul__(self, other: FieldMatrix) -> FieldMatrix:
        f = self.field
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = 0
                for k in range(self.cols):
                    acc = f.add(acc, f.mul(self.entries[i][k], other.entries[k][j]))
                row.append(acc)
            out.append(row)
        return FieldMatrix.from_rows(f, out)

    def apply(self, v: list[int]) -> list[int]:
        f = self.field
        out = []
        for row in self.entries:
            acc = 0
            for a, b in zip(row, v):
                acc = f.add(acc, f.mul(a, b))
            out.append(acc)
        return out

    def row_reduce(self) -> tuple[list[list[int]], list[int]]:
        """Reduced row echelon form (on a fresh copy) and its pivot columns."""
        f = self.field
        a = [list(r) for r in self.entries]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            piv = next((i for i in range(r, self.rows) if a[i][c]), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = f.inv(a[r][c])
            a[r] = [f.mul(inv, x) for x in a[r]]
            for i in range(self.rows):
                if i != r and a[i][c]:
                    fac = a[i][c]
                    a[i] = [f.sub(x, f.mul(fac, y)) for x, y in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return a, pivots

    def rank(self) -> int:
        return len(self.row_reduce()[1])

    def kernel_basis(self) -> list[list[int]]:
        f = self.field
        a, pivots = self.row_reduce()
        free = [c for c in range(self.cols) if c not in set(pivots)]
        basis = []
        for fc in free:
            v = [0] * self.cols
            v[fc] = 1
            for i, pc in enumerate(pivots):
                v[pc] = f.neg(a[i][fc])
            basis.append(v)
        return basis

    def kernel_dimension(self) -> int:
        return self.cols - self.rank()


def kernel_dimension(m: FieldMatrix) -> int:
    return m.kernel_dimension()


def kernel_basis(m: FieldMatrix) -> list[list[int]]:
    return m.kernel_basis()


def eigenspace_one_dimension(m: FieldMatrix) -> int:
    """Dimension of the eigenspace for eigenvalue 1."""
    if m.rows != m.cols:
        raise ValueError("eigenspace of a non-square matrix")
    return kernel_dimension(m - FieldMatrix.identity(m.field, m.rows))


@dataclass(frozen=True)
class FieldPolynomial:
    """Univariate polynomial, little-endian coefficients, no trailing zeros."""

    field: FiniteField
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: int) -> int:
        f = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    def __mul__(self, other: FieldPolynomial) -> FieldPolynomial:
        f = self.field
        out = [0] * max(len(self.coeffs) + len(other.coeffs) - 1, 0)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = f.add(out[i + j], f.mul(a, b))
        return FieldPolynomial(f, tuple(out))

    def divide_by_x_minus(self, r: int) -> tuple[FieldPolynomial, int]:
        """Synthetic division by ``x - r``: quotient and remainder."""
        f = self.field
        q: list[int] = []
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, r), c)
            q.append(acc)
        rem = q.pop() if q else 0
        return FieldPolynomial(f, tuple(reversed(q))), rem


def determinant(m: FieldMatrix) -> int:
    """Determinant by Gaussian elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    f = m.field
    a = [list(r) for r in m.entries]
    n = m.rows
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = f.neg(det)
        det = f.mul(det, a[c][c])
        inv = f.inv(a[c][c])
        for i in range(c + 1, n):
            if a[i][c]:
                fac = f.mul(a[i][c], inv)
                a[i] = [f.sub(x, f.mul(fac, y)) for x, y in zip(a[i], a[c])]
    return det


def characteristic_polynomial(m: FieldMatrix) -> FieldPolynomial:
    """``det(x I - m)``, interpolated from its values at ``n + 1`` field points."""
    f = m.field
    n = m.rows
    if n != m.cols:
        raise ValueError("characteristic polynomial of a non-square matrix")
    if f.order <= n:
        raise ValueError("field too small to interpolate the characteristic polynomial")
    xs = list(range(n + 1))
    eye = FieldMatrix.identity(f, n)
    ys = [determinant(_scaled(eye, x) - m) for x in xs]
    out = FieldPolynomial(f, ())
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = FieldPolynomial(f, (1,))
        denom = 1
        for k, xk in enumerate(xs):
            if k != i:
                basis = basis * FieldPolynomial(f, (f.neg(xk), 1))
                denom = f.mul(denom, f.sub(xi, xk))
        c = f.mul(yi, f.inv(denom))
        out = _padd(out, FieldPolynomial(f, tuple(f.mul(c, b) for b in basis.coeffs)))
    return out


def _scaled(m: FieldMatrix, c: int) -> FieldMatrix:
    f = m.field
    return FieldMatrix.from_rows(f, [[f.mul(c, x) for x in row] for row in m.entries])


def _padd(a: FieldPolynomial, b: FieldPolynomial) -> FieldPolynomial:
    f = a.field
    n = max(len(a.coeffs), len(b.coeffs))
    ca = a.coeffs + (0,) * (n - len(a.coeffs))
    cb = b.coeffs + (0,) * (n - len(b.coeffs))
    return FieldPolynomial(f, tuple(f.add(x, y) for x, y in zip(ca, cb)))


def root_one_multiplicity(f: FieldPolynomial) -> int:
    """Largest ``k`` such that ``(x - 1)^k`` divides ``f``."""
    if f.is_zero():
        raise ValueError("multiplicity of a root of the zero polynomial is undefined")
    k = 0
    while f.degree >= 1:
        q, rem = f.divide_by_x_minus(1)
        if rem:
            break
        f, k = q, k + 1
    return k


def companion_matrix(f: FieldPolynomial) -> FieldMatrix:
    """Companion matrix of a monic polynomial (char poly equals ``f``)."""
    fld = f.field
    n = f.degree
    if n < 1 or f.coeffs[-1] != 1:
        raise ValueError("companion matrix needs a monic polynomial of positive degree")
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = fld.neg(f.coeffs[i])
    return FieldMatrix.from_rows(fld, rows)


# -- numpy linear algebra over a prime field -----------------------------------

def rref_mod_p(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over ``F_p`` (copy) and pivot columns."""
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(col[nzr], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank_mod_p(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref_mod_p(a, p)[1])


def nullspace_mod_p(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of ``{x : a x = 0}`` as the rows of the returned array."""
    rows, cols = a.shape
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    r, pivots = rref_mod_p(a, p)
    pset = set(pivots)
    free = [c for c in range(cols) if c not in pset]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = -r[i, fc] % p
    return basis


def colspace_mod_p(a: np.ndarray, p: int) -> np.ndarray:
    """Basis (rows) of the column space of ``a``."""
    if a.size == 0:
        return np.zeros((0, a.shape[0]), dtype=np.int64)
    return rref_mod_p(a.T, p)[0]


def matmul_mod_p(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact product over ``F_p`` through float64 BLAS (entries stay below 2^53)."""
    if a.shape[1] * (p - 1) ** 2 >= 2 ** 52:
        return (a @ b) % p
    return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) % p
