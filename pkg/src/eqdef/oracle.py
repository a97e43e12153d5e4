"""Brute-force group cohomology on truncated Laurent modules.

A module is the window ``t^lo k[[t]] / t^hi`` (optionally read as derivations
``f d/dt``) and group elements act through matrices built column by column
from series substitutions.  Everything is restricted to ``F_p`` scalars, so
a space over ``F_{p^d}`` of dimension ``D`` shows up with ``F_p``-dimension
``dD``; reported dimensions are divided back by ``d``.

Truncation adds spurious classes near the top of the window.  Every class is
given a level (the largest valuation among its representatives); only levels
below a cutoff count, and the answer must agree between the base precision
and its double before it is accepted.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .algebra import FiniteField, matmul_mod_p, nullspace_mod_p, rank_mod_p, rref_mod_p
from .padic import PAdicRational
from .series import (
    ArtinSchreierAut,
    PrecisionError,
    SeriesAut,
    TruncatedLaurent,
    default_precision,
    reversion,
)


class StabilizationError(RuntimeError):
    """The oracle answer kept changing as precision grew."""

    def __init__(self, history: list[tuple[int, object]]):
        self.history = history
        (n1, r1), (n2, r2) = history[-2], history[-1]
        super().__init__(
            f"no stabilisation: {r1!r} at precision {n1}, {r2!r} at precision {n2}"
        )


@dataclass(frozen=True)
class TruncatedModule:
    """``t^lo k[[t]] / t^(lo + length)``; ``derivation`` reads elements as ``f d/dt``."""

    field: FiniteField
    lo: int
    length: int
    derivation: bool = False

    @property
    def hi(self) -> int:
        return self.lo + self.length

    @property
    def dim_fp(self) -> int:
        return self.length * self.field.d

    def exponent_of_row(self, row: int) -> int:
        return self.lo + row // self.field.d


def action_matrix(aut: SeriesAut, module: TruncatedModule) -> np.ndarray:
    """``F_p``-matrix of ``aut`` on the module (columns are images of basis vectors)."""
    fld = module.field
    d, lo, hi = fld.d, module.lo, module.hi
    rel = module.length
    unit = aut.image.shift(-1)
    if unit.precision < rel:
        raise ValueError("automorphism image known to too low a precision")
    unit = unit.truncate(rel)
    jac = aut.jacobian_inverse().truncate(rel) if module.derivation else None
    cur = unit ** lo if lo else TruncatedLaurent.one(fld, rel)
    cur = cur.truncate(rel)
    mats = [fld.mul_matrix(fld.p ** j) for j in range(d)]
    out = np.zeros((rel * d, rel * d), dtype=np.int64)
    for k in range(rel):
        e = lo + k
        col = cur if jac is None else (cur * jac)
        # column series is t^e * col; only exponents below hi matter
        w = col.shift(e).window(lo, hi) if col.precision + e >= hi else None
        if w is None:
            raise ValueError("insufficient precision for the action matrix")
        for j in range(d):
            out[:, k * d + j] = (w @ mats[j].T).reshape(-1)
        cur = (cur * unit).truncate(rel)
    return out % fld.p


def artin_schreier_matrix(fld: FiniteField, n: int, v: int, module: TruncatedModule) -> np.ndarray:
    """Matrix of ``sigma_v`` with conductor ``n`` on the module."""
    sigma = ArtinSchreierAut(fld, n, v).as_series_aut(module.length + 1)
    return action_matrix(sigma, module)


def _echelon_lowest(vectors: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Row basis whose leading (lowest-index) entries sit in distinct columns."""
    if vectors.shape[0] == 0:
        return vectors, []
    r, piv = rref_mod_p(vectors, p)
    return r, piv


class _Span:
    """Incrementally grown row span over ``F_p`` with membership test."""

    def __init__(self, p: int, dim: int):
        self.p = p
        self.rows = np.zeros((0, dim), dtype=np.int64)
        self.piv: list[int] = []

    def reduce(self, v: np.ndarray) -> np.ndarray:
        v = v.copy() % self.p
        for row, c in zip(self.rows, self.piv):
            if v[c]:
                v = (v - v[c] * row) % self.p
        return v

    def add(self, v: np.ndarray) -> bool:
        v = self.reduce(v)
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        c = int(nz[0])
        v = v * pow(int(v[c]), -1, self.p) % self.p
        if self.rows.shape[0]:
            col = self.rows[:, c].copy()
            hit = np.nonzero(col)[0]
            if hit.size:
                self.rows[hit] = (self.rows[hit] - np.outer(col[hit], v)) % self.p
        self.rows = np.vstack([self.rows, v])
        self.piv.append(c)
        return True

    def extend(self, vs: np.ndarray) -> None:
        if vs.shape[0] == 0:
            return
        r, piv = rref_mod_p(np.vstack([self.rows, vs]) if self.rows.shape[0] else vs, self.p)
        self.rows, self.piv = r, list(piv)


def quotient_levels(
    Z: np.ndarray, B: np.ndarray, p: int, level_of_column: Callable[[int], int]
) -> list[int]:
    """Levels of the classes of ``span(Z) / span(B)`` (``B`` inside ``span(Z)``).

    Vectors are rows; columns are ordered by increasing exponent.  The level of
    a class is the largest valuation among its representatives, and the list
    has one entry per ``F_p``-dimension of the quotient.
    """
    zr, zpiv = _echelon_lowest(Z, p)
    span = _Span(p, Z.shape[1] if Z.ndim == 2 else 0)
    span.extend(B)
    levels = []
    for i in sorted(range(len(zpiv)), key=lambda i: -zpiv[i]):
        if span.add(zr[i]):
            levels.append(level_of_column(zpiv[i]))
    return sorted(levels)


@dataclass(frozen=True)
class H1Result:
    """Oracle answer: dimension over the base field and class levels."""

    dimension: int
    exponents: tuple[int, ...]
    precision: int
    field_degree: int = 1
    notes: tuple[str, ...] = field(default=())


def _norm_matrix(S: np.ndarray, p: int) -> np.ndarray:
    # in characteristic p the norm 1 + s + ... + s^{p-1} equals (s - 1)^{p-1}
    T = (S - np.eye(S.shape[0], dtype=np.int64)) % p
    out = np.eye(S.shape[0], dtype=np.int64)
    for _ in range(p - 1):
        out = matmul_mod_p(T, out, p)
    return out


def cocycles_and_coboundaries(
    mats: Sequence[np.ndarray], p: int
) -> tuple[np.ndarray, np.ndarray]:
    """Cocycles and coboundaries of an elementary abelian group on ``F_p^m``.

    The group is generated by the commuting order-``p`` matrices ``mats``; a
    cocycle is the tuple of generator values ``(x_1, ..., x_s)`` subject to
    ``N_i x_i = 0`` and ``(g_i - 1) x_j = (g_j - 1) x_i``.  Returned as row
    vectors in ``F_p^{s m}`` with generator blocks interleaved per coordinate
    so that columns stay ordered by exponent.
    """
    s = len(mats)
    m = mats[0].shape[0]
    eye = np.eye(m, dtype=np.int64)
    T = [(g - eye) % p for g in mats]
    blocks = []
    for i in range(s):
        row = np.zeros((m, s * m), dtype=np.int64)
        row[:, i::s] = _norm_matrix(mats[i], p)
        blocks.append(row)
    for i in range(s):
        for j in range(i + 1, s):
            row = np.zeros((m, s * m), dtype=np.int64)
            row[:, j::s] = T[i]
            row[:, i::s] = -T[j] % p
            blocks.append(row)
    Z = nullspace_mod_p(np.vstack(blocks) % p, p)
    Bcols = np.zeros((s * m, m), dtype=np.int64)
    for i in range(s):
        Bcols[i::s, :] = T[i]
    B = Bcols.T % p
    return Z, B


def h1_from_matrices(
    mats: Sequence[np.ndarray], module: TruncatedModule, cutoff: int
) -> tuple[int, list[int]]:
    """``F_p``-dimension and class levels below ``cutoff`` for the given generators."""
    p = module.field.p
    s = len(mats)
    Z, B = cocycles_and_coboundaries(mats, p)
    levels = quotient_levels(Z, B, p, lambda col: module.exponent_of_row(col // s))
    low = [e for e in levels if e < cutoff]
    return len(low), low


def stabilize(
    compute: Callable[[int], object], base_precision: int, max_doublings: int = 3
) -> tuple[object, int]:
    """Run ``compute`` at ``N0, 2 N0, ...`` until two consecutive answers agree."""
    history = [(base_precision, compute(base_precision))]
    prec = base_precision
    for _ in range(max_doublings):
        prec *= 2
        history.append((prec, compute(prec)))
        if history[-1][1] == history[-2][1]:
            return history[-1][1], history[-2][0]
    raise StabilizationError(history)


def _levels_to_result(
    fp_dim: int, levels: list[int], d: int, precision: int, shift: int = 0
) -> tuple[int, tuple[int, ...]]:
    counts = Counter(levels)
    exps: list[int] = []
    for e in sorted(counts):
        exps.extend([shift - e] * (counts[e] // d))
    return fp_dim // d, tuple(sorted(exps))


def h1_cyclic_bruteforce(
    p: int,
    n: int,
    a: int,
    v: int = 1,
    fld: FiniteField | None = None,
    base_precision: int | None = None,
    derivation: bool = False,
) -> H1Result:
    """``H^1`` of ``<sigma_v>`` (conductor ``n``) on ``t^a k[[t]]``.

    With ``derivation=True`` the module is ``t^a k[[t]] d/dt`` with the
    adjoint action instead.  Exponents are reported as ``i`` for the class
    ``1/t^i`` of the untwisted module (for derivations: ``n + 1 - e`` for a
    class led by ``t^e d/dt``).
    """
    fld = fld or FiniteField(p)
    N0 = base_precision or default_precision(n, p)
    shift = (n + 1) if derivation else 0

    def run(N: int):
        module = TruncatedModule(fld, a, N, derivation)
        S = _cyclic_matrix(fld, n, v, module)
        dim, low = h1_from_matrices([S], module, cutoff=a + N // 2)
        return _levels_to_result(dim, low, fld.d, N, shift)

    (dim, exps), prec = stabilize(run, N0)
    return H1Result(dim, exps, prec, fld.d)


def _cyclic_matrix(fld: FiniteField, n: int, v: int, module: TruncatedModule) -> np.ndarray:
    sigma = ArtinSchreierAut(fld, n, v).as_series_aut(module.length + 2)
    return action_matrix(sigma, module)


@dataclass(frozen=True)
class TateResult:
    """``H^0`` hat of ``<sigma>``: invariants modulo norms, with both leading valuations."""

    dimension: int
    invariant_valuation: int
    norm_valuation: int
    precision: int


def tate_h0_cyclic(
    p: int, n: int, a: int, v: int = 1, base_precision: int | None = None
) -> TateResult:
    """``ker(sigma - 1) / N(t^a k[[t]])`` for ``sigma_v`` of conductor ``n``.

    The invariants of the window start at valuation ``p ceil(a/p)`` and the
    norms at ``p floor((d + a)/p)`` with ``d = (n+1)(p-1)``; the reported
    valuations are these exponents in ``t``.
    """
    fld = FiniteField(p)
    N0 = base_precision or default_precision(n, p)

    def run(N: int):
        module = TruncatedModule(fld, a, N)
        S = _cyclic_matrix(fld, n, v, module)
        eye = np.eye(N, dtype=np.int64)
        inv = nullspace_mod_p((S - eye) % p, p)
        norms = _norm_matrix(S, p).T % p
        cutoff = a + N // 2
        inv_piv = {module.exponent_of_row(c) for c in (rref_mod_p(inv, p)[1] if inv.shape[0] else [])}
        norm_rows = norms[np.any(norms, axis=1)]
        norm_piv = {module.exponent_of_row(c) for c in (rref_mod_p(norm_rows, p)[1] if norm_rows.shape[0] else [])}
        low = sorted(e for e in inv_piv - norm_piv if e < cutoff)
        return len(low), min(inv_piv), min(norm_piv)

    (dim, vi, vn), prec = stabilize(run, N0)
    return TateResult(dim, vi, vn, prec)


def h1_elem_abelian_bruteforce(
    p: int,
    n: int,
    s: int,
    a: int,
    fld: FiniteField | None = None,
    labels: Sequence[int] | None = None,
    base_precision: int | None = None,
    derivation: bool = False,
) -> H1Result:
    """``H^1`` of ``{sigma_v : v in V}`` with ``V`` an ``s``-dimensional ``F_p``-space.

    ``labels`` is an ``F_p``-basis of ``V`` inside ``fld``; by default the field
    is ``F_{p^s}`` and ``V`` the whole field with its power basis.

    For ``s >= 3`` the default window can be far below the ``p^s`` scale of
    the action and may stabilize on a wrong value; pass ``base_precision``.
    """
    fld = fld or FiniteField(p, s)
    labels = list(labels) if labels is not None else [p ** j for j in range(s)]
    if len(labels) != s:
        raise ValueError("need one label per summand")
    N0 = base_precision or default_precision(n, p)
    shift = (n + 1) if derivation else 0

    def run(N: int):
        module = TruncatedModule(fld, a, N, derivation)
        mats = [_cyclic_matrix(fld, n, v, module) for v in labels]
        dim, low = h1_from_matrices(mats, module, cutoff=a + N // 2)
        return _levels_to_result(dim, low, fld.d, N, shift)

    (dim, exps), prec = stabilize(run, N0)
    return H1Result(dim, exps, prec, fld.d)


# -- outer actions on H^1 ----------------------------------------------------

def _interleave(mat: np.ndarray, s: int, i: int, j: int, out: np.ndarray) -> None:
    # place an m x m block acting from generator slot j into slot i
    out[i::s, j::s] = mat


def _power_and_norm(g: np.ndarray, c: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    """``g^c`` and ``1 + g + ... + g^{c-1}``."""
    m = g.shape[0]
    power = np.eye(m, dtype=np.int64)
    norm = np.zeros((m, m), dtype=np.int64)
    for _ in range(c):
        norm = (norm + power) % p
        power = matmul_mod_p(g, power, p)
    return power, norm


def _word_value(mats: Sequence[np.ndarray], word: Sequence[int], p: int) -> np.ndarray:
    """Matrix ``(x_1..x_s) -> d(g_1^{c_1} ... g_s^{c_s})`` via ``d(gh) = d(g) + g d(h)``."""
    s = len(mats)
    m = mats[0].shape[0]
    out = np.zeros((m, s * m), dtype=np.int64)
    prefix = np.eye(m, dtype=np.int64)
    for j, c in enumerate(word):
        if c % p == 0:
            continue
        power, norm = _power_and_norm(mats[j], c % p, p)
        out[:, j::s] = (out[:, j::s] + matmul_mod_p(prefix, norm, p)) % p
        prefix = matmul_mod_p(prefix, power, p)
    return out


def _word_matrix(mats: Sequence[np.ndarray], word: Sequence[int], p: int) -> np.ndarray:
    m = mats[0].shape[0]
    out = np.eye(m, dtype=np.int64)
    for g, c in zip(mats, word):
        out = matmul_mod_p(out, _power_and_norm(g, c % p, p)[0], p)
    return out


def conjugation_words(
    mats: Sequence[np.ndarray], outer: np.ndarray, p: int
) -> list[tuple[int, ...]]:
    """Find ``c`` with ``outer^{-1} g_i outer = prod_j g_j^{c_ij}`` by search."""
    from itertools import product

    s = len(mats)
    words = []
    for g in mats:
        lhs = matmul_mod_p(g, outer, p)
        for word in product(range(p), repeat=s):
            if np.array_equal(lhs, matmul_mod_p(outer, _word_matrix(mats, word, p), p)):
                words.append(word)
                break
        else:
            raise ValueError("outer action does not normalise the group")
    return words


def invariant_cocycles(
    mats: Sequence[np.ndarray],
    outer: np.ndarray,
    words: Sequence[Sequence[int]],
    p: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Cocycles whose class is fixed by ``x -> outer d(outer^{-1} x outer)``.

    ``words[i]`` expresses ``outer^{-1} g_i outer`` in the generators.
    Returns the invariant cocycles and the coboundaries (rows, interleaved
    layout as in :func:`cocycles_and_coboundaries`).
    """
    s = len(mats)
    m = mats[0].shape[0]
    if len(words) != s or any(len(w) != s for w in words):
        raise ValueError("need one conjugation word of length s per generator")
    for g, w in zip(mats, words):
        if not np.array_equal(
            matmul_mod_p(g, outer, p), matmul_mod_p(outer, _word_matrix(mats, w, p), p)
        ):
            raise ValueError("conjugation map inconsistent with the group action")
    # the induced map on generator values must be invertible mod p
    if rank_mod_p(np.array(words, dtype=np.int64), p) < s:
        raise ValueError("conjugation map is not an automorphism of the group")
    phi = np.zeros((s * m, s * m), dtype=np.int64)
    for i, w in enumerate(words):
        phi[i::s, :] = matmul_mod_p(outer, _word_value(mats, w, p), p)
    Z, B = cocycles_and_coboundaries(mats, p)
    if Z.shape[0] == 0:
        return Z, B
    moved = matmul_mod_p(Z, ((phi - np.eye(s * m, dtype=np.int64)) % p).T, p)
    Bb = rref_mod_p(B, p)[0]
    sol = nullspace_mod_p(np.vstack([moved, Bb]).T % p, p)
    Zinv = matmul_mod_p(sol[:, : Z.shape[0]], Z, p)
    return Zinv, B


def invariants_in_h1(
    mats: Sequence[np.ndarray],
    outer: np.ndarray,
    module: TruncatedModule,
    cutoff: int,
    words: Sequence[Sequence[int]] | None = None,
) -> tuple[int, list[int]]:
    """``F_p``-dimension and levels (below ``cutoff``) of the fixed classes."""
    p = module.field.p
    s = len(mats)
    if words is None:
        words = conjugation_words(mats, outer, p)
    Zinv, B = invariant_cocycles(mats, outer, words, p)
    levels = quotient_levels(Zinv, B, p, lambda col: module.exponent_of_row(col // s))
    low = [e for e in levels if e < cutoff]
    return len(low), low


# -- the Hermitian curve at infinity ------------------------------------------

def hermitian_w(fld: FiniteField, q: int, precision: int) -> TruncatedLaurent:
    """``w = 1/y`` in the uniformiser ``t = x/y`` of ``y^q + y = x^{q+1}`` at infinity.

    Dividing the equation by ``y^{q+1}`` gives ``w + w^q = t^{q+1}``; the
    fixed point iteration ``w -> t^{q+1} - w^q`` converges ``t``-adically.
    """
    if q != fld.p:
        raise ValueError("only q = p is implemented (w^q is the Frobenius twist)")
    lead = TruncatedLaurent.monomial(fld, q + 1, precision)
    w = lead
    for _ in range(precision):
        nxt = lead - w.frobenius().truncate(precision)
        if (nxt - w).is_zero():
            return nxt
        w = nxt
    raise PrecisionError("Hermitian expansion did not converge")


def hermitian_aut(fld: FiniteField, q: int, b: int, c: int, precision: int) -> SeriesAut:
    """``(x, y) -> (x + b, y + b^q x + c)``, requiring ``c^q + c = b^{q+1}``.

    On the uniformiser: ``t -> (t + b w) / (1 + b^q t + c w)``.
    """
    if fld.add(fld.pow(c, q), c) != fld.pow(b, q + 1):
        raise ValueError("c^q + c must equal b^(q+1)")
    w = hermitian_w(fld, q, precision)
    t = TruncatedLaurent.monomial(fld, 1, precision)
    one = TruncatedLaurent.one(fld, precision)
    num = t + w.scale(b)
    den = one + t.scale(fld.pow(b, q)) + w.scale(c)
    return SeriesAut((num * den.inverse()).truncate(precision))


def trace_zero_solutions(fld: FiniteField, q: int, rhs: int) -> list[int]:
    """All ``c`` in the field with ``c^q + c = rhs``."""
    return [c for c in fld.elements() if fld.add(fld.pow(c, q), c) == rhs]


@dataclass(frozen=True)
class FermatInvariants:
    """Invariants of ``H^1(G_2, T_O)`` under one element of ``G_1 \\ G_2``."""

    h1: H1Result
    invariants: H1Result
    alpha: int
    gamma: int
    centre: int


def fermat_invariants(
    p: int = 5, alpha: int | None = None, base_precision: int | None = None
) -> FermatInvariants:
    """Oracle for the Hermitian (Fermat) curve ``y^p + y = x^{p+1}`` over ``F_{p^2}``.

    ``G_2`` is generated by ``tau: (x, y) -> (x, y + c)`` with ``c^p + c = 0``
    (conductor ``p + 1``); the outer element is ``(x, y) -> (x + alpha,
    y + alpha^p x - gamma)`` with ``gamma + gamma^p = -alpha^{p+1}``.  Since
    ``tau`` is central the conjugation word is trivial, which is also checked
    on the matrices.  Exponents are reported as ``i`` for classes ``1/t^i``.
    """
    fld = FiniteField(p, 2)
    q = p
    n = q + 1
    alpha = fld.generator if alpha is None else alpha
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    cprime = trace_zero_solutions(fld, q, fld.pow(alpha, q + 1))[0]
    centre = next(c for c in trace_zero_solutions(fld, q, 0) if c)
    N0 = base_precision or default_precision(n, p)

    def run(N: int):
        module = TruncatedModule(fld, 0, N, derivation=True)
        tau = action_matrix(hermitian_aut(fld, q, 0, centre, N + 2), module)
        sig = action_matrix(hermitian_aut(fld, q, alpha, cprime, N + 2), module)
        cutoff = N // 2
        dim, low = h1_from_matrices([tau], module, cutoff)
        full = _levels_to_result(dim, low, fld.d, N, n + 1)
        idim, ilow = invariants_in_h1([tau], sig, module, cutoff)
        inv = _levels_to_result(idim, ilow, fld.d, N, n + 1)
        return full, inv

    (full, inv), prec = stabilize(run, N0)
    return FermatInvariants(
        H1Result(full[0], full[1], prec, 2),
        H1Result(inv[0], inv[1], prec, 2),
        alpha,
        fld.neg(cprime),
        centre,
    )


# -- abelian groups of order p^2 with two lower jumps ----------------------------

class UnrealizableFiltration(ValueError):
    """No group action with the requested filtration exists."""


def compose(f: TruncatedLaurent, s: TruncatedLaurent) -> TruncatedLaurent:
    """``f(s)`` for ``s`` of any positive valuation (Horner in ``s``)."""
    vs = s.valuation
    if vs < 1:
        raise ValueError("composition needs a series of positive valuation")
    fld = f.field
    unit = s.shift(-vs)
    v = f.valuation
    n = f.precision - v
    rel = min(unit.precision, vs * n)
    if rel <= 0:
        raise PrecisionError("composition exhausted the available precision")
    unit = unit.truncate(rel)
    # sum_k f_{v+k} s^k with s^k = t^{k vs} unit^k, known to relative precision rel
    acc = TruncatedLaurent.zero(fld, rel)
    s_tr = s.truncate(rel)
    for k in range(n - 1, -1, -1):
        c = f.coeffs[k] if k < f.coeffs.shape[0] else None
        if c is not None and c.any():
            acc = acc + TruncatedLaurent(fld, 0, c.reshape(1, -1), rel)
        if k:
            acc = (acc * s_tr).truncate(rel)
    lead = (unit ** v).truncate(rel).shift(vs * v)
    return (acc * lead).truncate(vs * v + rel)


def _binom_unit(base: TruncatedLaurent, num: int, den: int) -> TruncatedLaurent:
    from .series import binomial_power

    return binomial_power(base, PAdicRational(num, den, base.field.p))


@dataclass(frozen=True)
class TwoJumpGroup:
    """``sigma_1`` (lower jump ``t2``) and ``sigma_2`` (jump ``t1``) on ``k[[t]]``."""

    p: int
    t2: int
    t1: int
    sigma1: SeriesAut
    sigma2: SeriesAut


def two_jump_group(p: int, t2: int, t1: int, precision: int) -> TwoJumpGroup:
    """Explicit ``Z/p x Z/p`` action with lower jumps ``t2 < t1``.

    Built as the compositum of ``y^p - y = x^{-t2}`` and ``z^p - z = c x^{-m}``
    with ``m = t2 + (t1 - t2)/p``; the second equation is reduced over
    ``k((w))``, ``y = w^{-t2}``, until its pole order is ``t1``, and ``t`` is
    the uniformiser with ``t^{-t1} = z - h``.  Needs ``t1 = t2 (mod p)`` since
    the upper jumps of an abelian group are integers.
    """
    from fractions import Fraction

    if not 0 < t2 < t1:
        raise ValueError("need 0 < t2 < t1")
    if (t1 - t2) % p:
        raise UnrealizableFiltration(
            f"lower jumps {t2} < {t1} are not congruent mod {p}: upper jump "
            f"{t2 + Fraction(t1 - t2, p)} is not an integer, so no group of order "
            f"{p}^2 (all abelian) has this filtration"
        )
    m = t2 + (t1 - t2) // p
    if t2 % p == 0 or m % p == 0 or t1 % p == 0:
        raise UnrealizableFiltration("upper jumps of Artin-Schreier layers must be prime to p")
    target = precision
    for _ in range(4):
        grp = _two_jump_group(p, t2, t1, m, precision)
        short = target - grp.sigma1.image.precision
        if short <= 0:
            return grp
        precision += short + 8
    raise PrecisionError("could not reach the requested precision")


def _two_jump_group(p: int, t2: int, t1: int, m: int, precision: int) -> TwoJumpGroup:
    fld = FiniteField(p)
    # w-adic precision: the t-expansion loses a factor p per w exponent
    R = precision // p + 2 * t1 + 8
    one = lambda P: TruncatedLaurent.one(fld, P)  # noqa: E731
    wser = TruncatedLaurent.monomial(fld, 1, R + 1)

    def x_power(e: int, P: int) -> TruncatedLaurent:
        # x = w^p (1 - w^{(p-1) t2})^{-1/t2}, so x^e = w^{pe} (1 - w^{(p-1)t2})^{-e/t2}
        base = TruncatedLaurent.from_terms(fld, {0: 1, (p - 1) * t2: p - 1}, P)
        return _binom_unit(base, -e, t2).shift(p * e)

    def reduce(g: TruncatedLaurent):
        h: dict[int, int] = {}
        while g.valuation < 0 and g.valuation % p == 0:
            k = g.valuation
            c = g.coefficient(k)
            r = fld.sqrt_p(c)
            h[k // p] = fld.add(h.get(k // p, 0), r)
            corr = TruncatedLaurent.from_terms(fld, {k: c, k // p: fld.neg(r)}, g.precision)
            g = g - corr
        return g, h

    g, h = reduce(x_power(-m, R - p * m + 1))
    if g.valuation != -t1:
        raise AssertionError(f"reduction ended at pole order {-g.valuation}, expected {t1}")
    scale = fld.inv(g.leading_coefficient())
    g, h = reduce(x_power(-m, R - p * m + 1).scale(scale))
    # rho(w) = w (1 + w^{t2})^{-1/t2}; D = h - rho(h)
    rho_base = TruncatedLaurent.from_terms(fld, {0: 1, t2: 1}, R)
    D = TruncatedLaurent.zero(fld, R)
    for k, c in h.items():
        moved = _binom_unit(rho_base, -k, t2).shift(k)
        D = D + (TruncatedLaurent.monomial(fld, k, R) - moved).scale(c)
    D = D.truncate(R - t1)
    # w as a series in t: w U(w)^{-1/t1} = t^p (1 - t^{(p-1) t1})^{-1/t1}
    Pt = precision + 2 * t1 * p + 8
    U = g.shift(t1).truncate(R - t1)
    phi = (_binom_unit(U, -1, t1) * wser.truncate(R - t1)).truncate(R - t1)
    Tbase = TruncatedLaurent.from_terms(fld, {0: 1, (p - 1) * t1: p - 1}, Pt)
    T = _binom_unit(Tbase, -1, t1).shift(p)
    w_of_t = compose(reversion(phi), T)
    Dt = compose(D, w_of_t)
    inner = (one(Dt.precision + t1) + Dt.shift(t1)).truncate(precision)
    sigma1 = _binom_unit(inner, -1, t1).shift(1)
    sig2_base = TruncatedLaurent.from_terms(fld, {0: 1, t1: 1}, precision)
    sigma2 = _binom_unit(sig2_base, -1, t1).shift(1)
    return TwoJumpGroup(p, t2, t1, SeriesAut(sigma1), SeriesAut(sigma2))


@dataclass(frozen=True)
class TwoJumpOracle:
    full: H1Result
    deep_invariants: H1Result
    deep: H1Result


def two_jump_h1(p: int, t2: int, t1: int, base_precision: int | None = None) -> TwoJumpOracle:
    """``H^1(G_1, T_O)`` for the two-jump group, plus ``H^1(G_{t1}, T_O)`` and its invariants."""
    N0 = base_precision or default_precision(t1, p)

    def run(N: int):
        module = TruncatedModule(FiniteField(p), 0, N, derivation=True)
        grp = two_jump_group(p, t2, t1, N + 2)
        m1 = action_matrix(grp.sigma1, module)
        m2 = action_matrix(grp.sigma2, module)
        eye = np.eye(N, dtype=np.int64)
        if not np.array_equal(matmul_mod_p(m1, m2, p), matmul_mod_p(m2, m1, p)):
            raise AssertionError("generators do not commute to working precision")
        for g in (m1, m2):
            if not np.array_equal(_power_and_norm(g, p, p)[0], eye):
                raise AssertionError("generator does not have order p to working precision")
        cutoff = N // 2
        full = h1_from_matrices([m1, m2], module, cutoff)
        deep = h1_from_matrices([m2], module, cutoff)
        inv = invariants_in_h1([m2], m1, module, cutoff, words=[(1,)])
        return tuple(_levels_to_result(d, lv, 1, N, t1 + 1) for d, lv in (full, inv, deep))

    (full, inv, deep), prec = stabilize(run, N0)
    mk = lambda r: H1Result(r[0], r[1], prec, 1)  # noqa: E731
    return TwoJumpOracle(mk(full), mk(inv), mk(deep))


# -- tame outer actions -------------------------------------------------------

def tame_invariants(p: int, n: int, m: int, base_precision: int | None = None) -> tuple[H1Result, H1Result]:
    """``H^1(<sigma_1>, T_O)`` and its part fixed by ``tau: t -> zeta t``, ``zeta^m = 1``.

    Needs ``m | p - 1`` so that ``zeta`` lies in ``F_p``.  Returns the full
    group and the invariants, both with class exponents ``i`` for ``1/t^i``.
    """
    if (p - 1) % m:
        raise ValueError(f"need m | p - 1 so that zeta lies in F_{p}")
    from .algebra import primitive_root_of_unity

    fld = FiniteField(p)
    zeta = primitive_root_of_unity(fld, m)
    N0 = base_precision or default_precision(n, p)

    def run(N: int):
        module = TruncatedModule(fld, 0, N, derivation=True)
        S = artin_schreier_matrix(fld, n, 1, module)
        T = action_matrix(SeriesAut(TruncatedLaurent.monomial(fld, 1, N + 2, zeta)), module)
        full = h1_from_matrices([S], module, N // 2)
        inv = invariants_in_h1([S], T, module, N // 2)
        return tuple(_levels_to_result(d, lv, 1, N, n + 1) for d, lv in (full, inv))

    (full, inv), prec = stabilize(run, N0)
    return H1Result(full[0], full[1], prec), H1Result(inv[0], inv[1], prec)
