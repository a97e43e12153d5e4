"""Ramification filtrations in lower numbering, Herbrand functions, invariant ideals."""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .padic import floor_div


class FiltrationWarning(UserWarning):
    """Data that no genuine Galois filtration can have (kept as a warning)."""


def _log_p(x: int, p: int) -> int:
    s = 0
    while x % p == 0 and x > 1:
        x //= p
        s += 1
    if x != 1:
        raise ValueError(f"{x * p ** s} is not a power of {p}")
    return s


@dataclass(frozen=True)
class Jump:
    t: int
    order: int


@dataclass(frozen=True)
class RamificationFiltration:
    """``G_0 >= G_1 >= ...`` given by its jumps ``t`` and the orders ``|G_t|``.

    Jumps are ascending.  ``G_1`` is the group at the smallest jump, ``G_0/G_1``
    is cyclic of order ``tame_order``.
    """

    p: int
    tame_order: int
    jumps: tuple[Jump, ...]

    def __post_init__(self) -> None:
        p = self.p
        if p < 5:
            raise ValueError(f"p must be a prime >= 5, got {p}")
        if self.tame_order < 1 or self.tame_order % p == 0:
            raise ValueError(f"tame order must be positive and prime to {p}")
        jumps = tuple(j if isinstance(j, Jump) else Jump(*j) for j in self.jumps)
        object.__setattr__(self, "jumps", jumps)
        for j in jumps:
            if j.t < 1:
                raise ValueError(f"jump positions must be positive, got {j.t}")
            _log_p(j.order, p)
            if j.order == 1:
                raise ValueError("a jump group must be nontrivial")
        for a, b in zip(jumps, jumps[1:]):
            if b.t <= a.t:
                raise ValueError("jump positions must be strictly increasing")
            if b.order >= a.order or a.order % b.order:
                raise ValueError("orders must strictly decrease and divide each other")
        for a in jumps:
            for b in jumps:
                if a.t < b.t and (b.t - a.t) % p:
                    warnings.warn(
                        f"jumps {a.t} and {b.t} are not congruent mod {p}",
                        FiltrationWarning,
                        stacklevel=3,
                    )

    @classmethod
    def from_pairs(cls, p: int, pairs: Sequence[tuple[int, int]], tame_order: int = 1):
        return cls(p, tame_order, tuple(Jump(t, o) for t, o in pairs))

    # -- JSON -------------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "tame_order": self.tame_order,
            "jumps": [{"t": j.t, "order": j.order} for j in self.jumps],
        }

    @classmethod
    def from_dict(cls, data: dict) -> RamificationFiltration:
        for key in ("p", "tame_order", "jumps"):
            if key not in data:
                raise ValueError(f"filtration JSON: missing field {key!r}")
        if not isinstance(data["jumps"], list):
            raise ValueError("filtration JSON: 'jumps' must be a list")
        jumps = []
        for k, j in enumerate(data["jumps"]):
            if not isinstance(j, dict) or set(j) < {"t", "order"}:
                raise ValueError(f"filtration JSON: jumps[{k}] needs integer 't' and 'order'")
            if not all(isinstance(j[f], int) for f in ("t", "order")):
                raise ValueError(f"filtration JSON: jumps[{k}] fields must be integers")
            jumps.append(Jump(j["t"], j["order"]))
        for key in ("p", "tame_order"):
            if not isinstance(data[key], int):
                raise ValueError(f"filtration JSON: {key!r} must be an integer")
        return cls(data["p"], data["tame_order"], tuple(jumps))

    @classmethod
    def from_json(cls, text: str) -> RamificationFiltration:
        return cls.from_dict(json.loads(text))

    # -- group orders -------------------------------------------------------
    @property
    def wild_order(self) -> int:
        return self.jumps[0].order if self.jumps else 1

    def order_at(self, i: int) -> int:
        """``|G_i|`` for ``i >= 0``."""
        if i < 0:
            raise ValueError("lower index must be nonnegative")
        if i == 0:
            return self.tame_order * self.wild_order
        for j in self.jumps:
            if i <= j.t:
                return j.order
        return 1

    def orders(self) -> list[int]:
        """``|G_0|, |G_1|, ..., |G_T|`` up to the last jump ``T``."""
        top = self.jumps[-1].t if self.jumps else 0
        return [self.order_at(i) for i in range(top + 1)]

    def layers(self) -> list[tuple[int, int]]:
        """Steps deepest first: ``(t_lambda, log_p |G_{t_lambda}| / |G_{t_{lambda-1}}|)``."""
        out = []
        below = 1
        for j in reversed(self.jumps):
            out.append((j.t, _log_p(j.order // below, self.p)))
            below = j.order
        return out

    @property
    def is_cyclic_tower(self) -> bool:
        return all(s == 1 for _, s in self.layers())


# -- Herbrand functions ------------------------------------------------------

def herbrand_phi(filt: RamificationFiltration, u) -> Fraction:
    """``phi(u) = int_0^u |G_x| / |G_0| dx`` (wild part; ``G_x = G_ceil(x)``)."""
    u = Fraction(u)
    if u < 0:
        raise ValueError("Herbrand phi is defined for u >= 0")
    g0 = filt.wild_order
    total = Fraction(0)
    lo = Fraction(0)
    for j in filt.jumps:
        if u <= lo:
            break
        hi = min(u, Fraction(j.t))
        if hi > lo:
            total += (hi - lo) * Fraction(j.order, g0)
        lo = Fraction(j.t)
    if u > lo:
        total += (u - lo) * Fraction(1, g0)
    return total


def herbrand_psi(filt: RamificationFiltration, v) -> Fraction:
    """Inverse of :func:`herbrand_phi`."""
    v = Fraction(v)
    if v < 0:
        raise ValueError("Herbrand psi is defined for v >= 0")
    g0 = filt.wild_order
    lo_u, lo_v = Fraction(0), Fraction(0)
    for j in filt.jumps:
        slope = Fraction(j.order, g0)
        hi_v = lo_v + (j.t - lo_u) * slope
        if v <= hi_v:
            return lo_u + (v - lo_v) / slope
        lo_u, lo_v = Fraction(j.t), hi_v
    return lo_u + (v - lo_v) * g0


def upper_order(filt: RamificationFiltration, v) -> int:
    """``|G^v| = |G_psi(v)|`` for ``v > 0`` (wild part)."""
    u = herbrand_psi(filt, v)
    return filt.order_at(max(-((-u.numerator) // u.denominator), 1))


# -- invariant tangent modules -------------------------------------------------

@dataclass(frozen=True)
class MuSequence:
    """``mu_0 = 0, mu_1, ...``: ``T_O^{G_{t_i}} = pi_i^{mu_i} k[[pi_i]] d/dpi_i``.

    ``pi_i`` is a uniformiser of the fixed field of ``G_{t_i}``; index ``i``
    runs from the deepest step outward.  ``ratios[i-1]`` is the order of the
    quotient used at step ``i``.
    """

    values: tuple[int, ...]
    jumps: tuple[int, ...]
    ratios: tuple[int, ...]

    def describe(self) -> list[str]:
        return [
            f"T_O^(G_{t}) = pi_{i}^{mu} k[[pi_{i}]] d/dpi_{i}"
            for i, (t, mu) in enumerate(zip(self.jumps, self.values[1:]), start=1)
        ]


def mu_sequence(filt: RamificationFiltration) -> MuSequence:
    """``mu_i = t_i + 1 - floor((t_i + 1 - mu_{i-1}) / (|G_{t_i}| / |G_{t_{i-1}}|))``."""
    mus = [0]
    ts, ratios = [], []
    below = 1
    for j in reversed(filt.jumps):
        ratio = j.order // below
        mus.append(j.t + 1 - floor_div(j.t + 1 - mus[-1], ratio))
        ts.append(j.t)
        ratios.append(ratio)
        below = j.order
    return MuSequence(tuple(mus), tuple(ts), tuple(ratios))


def invariant_ideal_exponent(p: int, n: int, s: int, a: int) -> int:
    """Exponent of the generator of ``(x^a k[[x]] d/dx)^H`` for ``|H| = p^s``, conductor ``n``.

    Equals ``n + 1 - floor((n + 1 - a) / p^s)``; for ``s = 0`` this is ``a``.
    """
    if n % p == 0:
        raise ValueError(f"conductor {n} divisible by {p}")
    if s < 0:
        raise ValueError("s must be nonnegative")
    return n + 1 - floor_div(n + 1 - a, p ** s)
