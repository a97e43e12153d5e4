"""Closed-form H^1 of cyclic and elementary abelian layers, local bounds, tame parts.

Classes are written ``1/pi^i`` where ``pi`` is the uniformiser of the
relevant layer; a class with exponent ``i`` is represented by the cocycle
``sigma_w -> w / pi^i`` (times the appropriate constant).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .algebra import (
    FiniteField,
    FieldMatrix,
    FieldPolynomial,
    characteristic_polynomial,
    companion_matrix,
    eigenspace_one_dimension,
    minimal_degree,
    primitive_root_of_unity,
    root_one_multiplicity,
)
from .filtration import RamificationFiltration, mu_sequence
from .padic import PAdicRational, binom_mod_p, ceil_div, floor_div

CONVENTIONS = ("lemma", "derived")


def _check(p: int, n: int) -> None:
    if p < 5:
        raise ValueError(f"p must be a prime >= 5, got {p}")
    if n < 1:
        raise ValueError(f"conductor must be positive, got {n}")
    if n % p == 0:
        raise ValueError(f"conductor {n} is divisible by p = {p}")


# -- one cyclic layer ------------------------------------------------------------

def dim_h1_cyclic(p: int, n: int, a: int) -> int:
    """``dim H^1(Z/p, t^a k[[t]])`` for conductor ``n``: ``floor((d + a)/p) - ceil(a/p)``."""
    _check(p, n)
    return floor_div((n + 1) * (p - 1) + a, p) - ceil_div(a, p)


def lower_exponent(p: int, n: int, a: int) -> int:
    """``b = -a - n`` when ``p | a``, else ``-a - n + 1``."""
    return -a - n if a % p == 0 else -a - n + 1


def basis_h1_cyclic(p: int, n: int, a: int) -> list[int]:
    """Exponents ``i`` in ``[b, -a]`` with ``C(i/n, p-1) = 0 mod p``."""
    _check(p, n)
    return [
        i
        for i in range(lower_exponent(p, n, a), -a + 1)
        if binom_mod_p(PAdicRational(i, n, p), p - 1) == 0
    ]


# -- elementary abelian layers -------------------------------------------------

def a_sequence(p: int, a: int, s: int) -> list[int]:
    """``a_1 = a`` and ``a_i = ceil(a_{i-1} / p)``."""
    out = [a]
    for _ in range(s - 1):
        out.append(ceil_div(out[-1], p))
    return out


@dataclass(frozen=True)
class BasisLevel:
    index: int
    uniformizer: str
    a: int
    exponents: tuple[int, ...]


@dataclass(frozen=True)
class CohomologyBasis:
    """Basis classes ``1/pi_lambda^i`` grouped by level, deepest level first."""

    p: int
    n: int
    levels: tuple[BasisLevel, ...]

    @property
    def dimension(self) -> int:
        return sum(len(lv.exponents) for lv in self.levels)

    def classes(self) -> list[tuple[int, int]]:
        return [(lv.index, i) for lv in self.levels for i in lv.exponents]

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "dimension": self.dimension,
            "levels": [
                {"level": lv.index, "uniformizer": lv.uniformizer, "a": lv.a,
                 "exponents": list(lv.exponents)}
                for lv in self.levels
            ],
        }


def dim_h1_elem_abelian(p: int, n: int, s: int, a: int) -> int:
    """``sum_i floor(((n+1)(p-1) + a_i)/p) - ceil(a_i/p)`` over the ``a``-sequence."""
    _check(p, n)
    if s < 1:
        raise ValueError("s must be at least 1")
    return sum(floor_div((n + 1) * (p - 1) + ai, p) - ceil_div(ai, p) for ai in a_sequence(p, a, s))


def basis_h1_elem_abelian(p: int, n: int, s: int, a: int) -> CohomologyBasis:
    _check(p, n)
    if s < 1:
        raise ValueError("s must be at least 1")
    levels = tuple(
        BasisLevel(lam, f"pi_{lam}", ai, tuple(basis_h1_cyclic(p, n, ai)))
        for lam, ai in enumerate(a_sequence(p, a, s), start=1)
    )
    return CohomologyBasis(p, n, levels)


def cyclic_basis(p: int, n: int, a: int) -> CohomologyBasis:
    return basis_h1_elem_abelian(p, n, 1, a)


# -- quotient steps of a filtration ----------------------------------------------

def _step(filt: RamificationFiltration, lam: int) -> tuple[int, int, int]:
    layers = filt.layers()
    if not 1 <= lam <= len(layers):
        raise ValueError(f"level must be in 1..{len(layers)}, got {lam}")
    t, s = layers[lam - 1]
    mu = mu_sequence(filt).values[lam - 1]
    return t, s, -t - 1 + mu


def dim_h1_quotient_step(filt: RamificationFiltration, lam: int) -> int:
    """``dim H^1(G_{t_lam}/G_{t_{lam-1}}, T_O^{G_{t_{lam-1}}})``; ``lam = 1`` is the deepest step."""
    t, s, a = _step(filt, lam)
    return dim_h1_elem_abelian(filt.p, t, s, a)


def basis_quotient_step(filt: RamificationFiltration, lam: int) -> CohomologyBasis:
    t, s, a = _step(filt, lam)
    return basis_h1_elem_abelian(filt.p, t, s, a)


def unipotent_invariant_exponents(p: int, n: int, a: int) -> list[int]:
    """Classes of a cyclic layer fixed by a unipotent outer action.

    The outer element moves ``1/pi^i`` by lower-order terms whose binomial
    coefficients all vanish when ``p | i``; the lowest class is fixed too.
    """
    basis = basis_h1_cyclic(p, n, a)
    if not basis:
        return []
    low = min(basis)
    return sorted({low} | {i for i in basis if i % p == 0})


@dataclass(frozen=True)
class DimBound:
    lower: int
    upper_invariant: int
    upper_raw: int
    exact: int | None = None
    provenance: str | None = None
    steps: tuple[int, ...] = ()
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        if not 0 <= self.lower <= self.upper_invariant <= self.upper_raw:
            raise ValueError(
                f"bounds out of order: {self.lower}, {self.upper_invariant}, {self.upper_raw}"
            )
        if self.exact is not None and not self.lower <= self.exact <= self.upper_invariant:
            raise ValueError("exact value outside the bounds")

    @property
    def interval(self) -> tuple[int, int]:
        return self.lower, self.upper_invariant

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper_invariant": self.upper_invariant,
            "upper_raw": self.upper_raw,
            "exact": self.exact,
            "provenance": self.provenance,
            "steps": list(self.steps),
            "notes": list(self.notes),
        }


def local_bounds(
    filt: RamificationFiltration,
    invariants: Mapping[int, int] | str | None = None,
) -> DimBound:
    """Bounds for ``dim H^1(G_1, T_O)`` from the quotient steps.

    ``invariants`` maps a step ``lam`` (below the last one) to the dimension
    of the part of its summand fixed by ``G_1``; the string ``"unipotent"``
    applies :func:`unipotent_invariant_exponents` to cyclic steps.  Without
    it the invariant upper bound equals the raw one.
    """
    steps = [dim_h1_quotient_step(filt, lam) for lam in range(1, len(filt.layers()) + 1)]
    if not steps:
        return DimBound(0, 0, 0, 0, "trivial group")
    f = len(steps)
    notes = []
    inv: dict[int, int] = {}
    if invariants == "unipotent":
        for lam in range(1, f):
            t, s, a = _step(filt, lam)
            if s == 1:
                inv[lam] = len(unipotent_invariant_exponents(filt.p, t, a))
        notes.append("invariant parts of cyclic steps from the unipotent-action rule")
    elif invariants is not None:
        inv = dict(invariants)
        notes.append("invariant parts supplied by the caller")
    for lam in inv:
        if not 1 <= lam < f:
            raise ValueError(f"invariant dimension given for step {lam}, expected 1..{f - 1}")
        if not 0 <= inv[lam] <= steps[lam - 1]:
            raise ValueError(f"invariant dimension {inv[lam]} exceeds step {lam}")
    upper_inv = steps[-1] + sum(inv.get(lam, steps[lam - 1]) for lam in range(1, f))
    # through a cyclic tower the bound is sharp once every invariant part is known
    known = all(lam in inv for lam in range(1, f))
    exact = upper_inv if filt.is_cyclic_tower and known else None
    prov = "closed form (cyclic tower)" if exact is not None else None
    return DimBound(steps[-1], upper_inv, sum(steps), exact, prov, tuple(steps), tuple(notes))


# -- tame part -------------------------------------------------------------------

def tame_weight(p: int, level: int, mu: int, n0: int, j: int, convention: str = "lemma") -> int:
    """Exponent of ``zeta`` by which the tame generator scales the class ``1/pi_level^mu``."""
    if convention == "lemma":
        return (-(p ** (level - 1)) * mu + j) % n0
    if convention == "derived":
        return mu % n0
    raise ValueError(f"unknown weight convention {convention!r}; use one of {CONVENTIONS}")


@dataclass(frozen=True)
class TameReduction:
    count: int
    survivors: CohomologyBasis
    convention: str
    n0: int


def tame_reduce(
    basis: CohomologyBasis, n0: int, j: int, convention: str = "lemma"
) -> TameReduction:
    """Keep the classes of weight zero modulo ``n0``."""
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown weight convention {convention!r}; use one of {CONVENTIONS}")
    if n0 < 1 or n0 % basis.p == 0:
        raise ValueError("tame order must be positive and prime to p")
    levels = tuple(
        BasisLevel(
            lv.index,
            lv.uniformizer,
            lv.a,
            tuple(
                i for i in lv.exponents
                if tame_weight(basis.p, lv.index, i, n0, j, convention) == 0
            ),
        )
        for lv in basis.levels
    )
    kept = CohomologyBasis(basis.p, basis.n, levels)
    return TameReduction(kept.dimension, kept, convention, n0)


def restrict_basis(basis: CohomologyBasis, keep: Mapping[int, Sequence[int]]) -> CohomologyBasis:
    """Sub-basis keeping, per level, only the listed exponents."""
    levels = tuple(
        BasisLevel(lv.index, lv.uniformizer, lv.a,
                   tuple(i for i in lv.exponents if i in set(keep.get(lv.index, lv.exponents))))
        for lv in basis.levels
    )
    return CohomologyBasis(basis.p, basis.n, levels)


def tame_local_bounds(
    filt: RamificationFiltration,
    convention: str = "lemma",
    invariant_exponents: Mapping[int, Sequence[int]] | str | None = None,
) -> DimBound:
    """Bounds for ``dim H^1(G_0, T_O)``: the tame invariants of each step.

    Taking invariants under a group of order prime to ``p`` is exact, so each
    step contributes the classes of weight zero; ``invariant_exponents``
    (or ``"unipotent"``) restricts the deeper cyclic steps first.
    """
    f = len(filt.layers())
    if f == 0:
        return DimBound(0, 0, 0, 0, "trivial group")
    n0 = filt.tame_order
    raw, inv = [], []
    for lam in range(1, f + 1):
        t, s, a = _step(filt, lam)
        basis = basis_quotient_step(filt, lam)
        raw.append(tame_reduce(basis, n0, t, convention).count)
        if lam < f and invariant_exponents == "unipotent" and s == 1:
            basis = restrict_basis(basis, {1: unipotent_invariant_exponents(filt.p, t, a)})
        elif lam < f and isinstance(invariant_exponents, Mapping) and lam in invariant_exponents:
            basis = restrict_basis(basis, {1: invariant_exponents[lam]})
        inv.append(tame_reduce(basis, n0, t, convention).count)
    upper_inv = inv[-1] + sum(inv[:-1])
    exact = upper_inv if (filt.is_cyclic_tower or raw[-1] == upper_inv) else None
    prov = None if exact is None else (
        "closed form (cyclic tower)" if filt.is_cyclic_tower else "bounds coincide"
    )
    return DimBound(raw[-1], upper_inv, sum(raw), exact, prov, tuple(inv),
                    (f"tame order {n0}, {convention} weights",))


# -- semidirect products V x| Z/n -------------------------------------------------

def minimal_polynomial_coeffs(p: int, n0: int, j: int) -> list[int]:
    """``a_0 .. a_{d-1}`` of the minimal polynomial of ``zeta^j`` over ``F_p``."""
    fld = FiniteField(p, minimal_degree(p, n0))
    zeta = primitive_root_of_unity(fld, n0)
    x = fld.pow(zeta, j)
    conj = [x]
    while (y := fld.frobenius(conj[-1])) != x:
        conj.append(y)
    poly = FieldPolynomial(fld, (1,))
    for c in conj:
        poly = poly * FieldPolynomial(fld, (fld.neg(c), 1))
    coeffs = list(poly.coeffs[:-1])
    if any(c >= p for c in coeffs):
        raise AssertionError("minimal polynomial not defined over F_p")
    return coeffs


def ordinary_weights(s: int, d: int) -> list[list[int]]:
    """Weights ``diag(zeta^2, zeta, ..., zeta)`` for block 1, ``zeta * I`` elsewhere."""
    if d < 1 or s % d:
        raise ValueError(f"block size {d} must divide s = {s}")
    return [[2] + [1] * (d - 1)] + [[1] * d for _ in range(s // d - 1)]


@dataclass(frozen=True)
class SemidirectResult:
    total: int
    deltas: tuple[int, ...]
    eigenspaces: tuple[int, ...]
    d: int
    field_degree: int


def semidirect_delta(
    p: int,
    n0: int,
    j: int,
    s: int,
    weights: Sequence[Sequence[int]],
    coeffs: Sequence[int] | None = None,
) -> SemidirectResult:
    """``sum_i delta(i)``: multiplicity of 1 as a root of ``charpoly(A diag(zeta^c)^{-1})``.

    ``A`` is the companion matrix of ``x^d + sum a_nu x^nu`` (by default the
    minimal polynomial of ``zeta^j``), one block per simple summand.
    """
    if coeffs is None:
        coeffs = minimal_polynomial_coeffs(p, n0, j)
    d = len(coeffs)
    D = minimal_degree(p, n0)
    fld = FiniteField(p, D)
    zeta = primitive_root_of_unity(fld, n0)
    dj = fld.multiplicative_order(fld.pow(zeta, j))
    expected = minimal_degree(p, dj) if dj > 1 else 1
    if d != expected:
        raise ValueError(f"zeta^{j} has degree {expected} over F_{p}, got {d} coefficients")
    if s % d:
        raise ValueError(f"d = {d} does not divide s = {s}")
    if len(weights) != s // d or any(len(w) != d for w in weights):
        raise ValueError(f"need {s // d} blocks of {d} weight exponents")
    A = companion_matrix(FieldPolynomial(fld, tuple(int(c) % p for c in coeffs) + (1,)))
    deltas, eig = [], []
    for block in weights:
        dinv = FieldMatrix.from_rows(
            fld,
            [[fld.inv(fld.pow(zeta, c % n0)) if r == k else 0 for k in range(d)]
             for r, c in enumerate(block)],
        )
        M = A @ dinv
        deltas.append(root_one_multiplicity(characteristic_polynomial(M)))
        eig.append(eigenspace_one_dimension(M))
    return SemidirectResult(sum(deltas), tuple(deltas), tuple(eig), d, D)


# -- the Z/p x| Z/m case ------------------------------------------------------------

def pries_dimension(p: int, j: int, m: int) -> int:
    """``#{b <= i <= j + 1 : C(i/j, p-1) = 0, i = 0 mod m}``."""
    _check(p, j)
    if m < 1 or m % p == 0:
        raise ValueError("m must be positive and prime to p")
    b = 1 if (-j - 1) % p == 0 else 2
    return sum(
        1 for i in range(b, j + 2)
        if i % m == 0 and binom_mod_p(PAdicRational(i, j, p), p - 1) == 0
    )


def pries_r(p: int, j: int, m: int) -> int:
    """``#{e in E_0 : p^nu e not in E_0 for all nu >= 1}``, ``E_0 = {1 <= e <= j, e = j mod m}``."""
    _check(p, j)
    if m < 1 or m % p == 0:
        raise ValueError("m must be positive and prime to p")
    E0 = {e for e in range(1, j + 1) if (e - j) % m == 0}
    count = 0
    for e in E0:
        x = e * p
        while x <= j and x not in E0:
            x *= p
        if x > j:
            count += 1
    return count
