"""Global part of the equivariant tangent space and assembly of the total.

The global part is ``3 g_Y - 3 + sum_mu ceil(sum_i (e_i - 1) / e_0)`` over
the branch points of ``X -> Y = X/G``; the total adds the local parts.
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cohomology import DimBound
from .filtration import RamificationFiltration
from .padic import ceil_frac


class NegativeGlobalWarning(UserWarning):
    """The global formula came out negative: not a dimension, check the cover data."""


@dataclass(frozen=True)
class BranchPoint:
    orders: tuple[int, ...]

    def __post_init__(self) -> None:
        orders = tuple(int(e) for e in self.orders)
        object.__setattr__(self, "orders", orders)
        if not orders or orders[0] < 2:
            raise ValueError(f"branch point needs e_0 >= 2, got {orders[:1]}")
        if any(b > a for a, b in zip(orders, orders[1:])):
            raise ValueError("ramification orders must be non-increasing")
        if any(e < 1 for e in orders):
            raise ValueError("ramification orders must be positive")
        if any(orders[0] % e for e in orders):
            warnings.warn("some e_i does not divide e_0", UserWarning, stacklevel=3)

    def contribution(self) -> int:
        return ceil_frac(Fraction(sum(e - 1 for e in self.orders), self.orders[0]))


@dataclass(frozen=True)
class CoverData:
    genus_quotient: int
    branch_points: tuple[BranchPoint, ...] = ()

    def __post_init__(self) -> None:
        if self.genus_quotient < 0:
            raise ValueError("quotient genus must be nonnegative")
        pts = tuple(b if isinstance(b, BranchPoint) else BranchPoint(tuple(b)) for b in self.branch_points)
        object.__setattr__(self, "branch_points", pts)

    def to_dict(self) -> dict:
        return {
            "genus_quotient": self.genus_quotient,
            "branch_points": [{"orders": list(b.orders)} for b in self.branch_points],
        }

    @classmethod
    def from_dict(cls, data: dict) -> CoverData:
        if "genus_quotient" not in data or not isinstance(data["genus_quotient"], int):
            raise ValueError("cover JSON: integer field 'genus_quotient' is required")
        pts = data.get("branch_points", [])
        if not isinstance(pts, list):
            raise ValueError("cover JSON: 'branch_points' must be a list")
        out = []
        for k, b in enumerate(pts):
            orders = b.get("orders") if isinstance(b, dict) else None
            if not isinstance(orders, list) or not all(isinstance(e, int) for e in orders):
                raise ValueError(f"cover JSON: branch_points[{k}].orders must be a list of integers")
            out.append(BranchPoint(tuple(orders)))
        return cls(data["genus_quotient"], tuple(out))

    @classmethod
    def from_json(cls, text: str) -> CoverData:
        return cls.from_dict(json.loads(text))


def orders_from_filtration(filt: RamificationFiltration) -> tuple[int, ...]:
    """``e_0 = |G_0|, e_1 = |G_1|, ...`` with every order repeated across its interval."""
    return tuple(filt.orders())


def global_contribution(cover: CoverData) -> int:
    """``3 g_Y - 3 + sum ceil(sum_i (e_i - 1) / e_0)``; negative values warn."""
    value = 3 * cover.genus_quotient - 3 + sum(b.contribution() for b in cover.branch_points)
    if value < 0:
        warnings.warn(
            f"global contribution {value} is negative: not a dimension, check cover data",
            NegativeGlobalWarning,
            stacklevel=2,
        )
    return value


@dataclass(frozen=True)
class DimensionReport:
    global_dim: int
    locals: tuple[DimBound, ...]
    notes: tuple[str, ...] = field(default=())

    @property
    def lower(self) -> int:
        return self.global_dim + sum(b.lower for b in self.locals)

    @property
    def upper(self) -> int:
        return self.global_dim + sum(b.upper_invariant for b in self.locals)

    @property
    def total(self) -> tuple[int, int]:
        return self.lower, self.upper

    @property
    def exact(self) -> int | None:
        if self.lower == self.upper:
            return self.lower
        if all(b.exact is not None for b in self.locals):
            return self.global_dim + sum(b.exact for b in self.locals)
        return None

    def to_dict(self) -> dict:
        return {
            "global": self.global_dim,
            "locals": [b.to_dict() for b in self.locals],
            "total": {"lower": self.lower, "upper": self.upper, "exact": self.exact},
            "notes": list(self.notes),
        }


def total_dimension(global_dim: int, locals: Sequence[DimBound], notes: Sequence[str] = ()) -> DimensionReport:
    return DimensionReport(global_dim, tuple(locals), tuple(notes))


# -- the covers of the worked examples --------------------------------------------

def fermat_cover(p: int) -> CoverData:
    """Hermitian curve mod its full automorphism group: one wild point, one tame point.

    The wild point has ``G_0`` of order ``p^3 (p^2 - 1)``, ``G_1`` of order
    ``p^3`` and ``G_2 = ... = G_{p+1}`` of order ``p``; the tame stabiliser
    has order ``p^2 - p + 1`` (forced by Riemann-Hurwitz).
    """
    wild = (p ** 3 * (p * p - 1), p ** 3) + (p,) * p
    return CoverData(0, (BranchPoint(wild), BranchPoint((p * p - p + 1,))))


def pcover_cover(p: int, m: int) -> CoverData:
    """``y^p - y = f(x)``, ``deg f = m``: one point with ``G_0 = ... = G_m = Z/p``."""
    return CoverData(0, (BranchPoint((p,) * (m + 1)),))


def lehr_matignon_cover(p: int, m: int) -> CoverData:
    """``G_0 = G_1`` of order ``p^{2m+1}``, then ``G_2 = ... = G_{p^m+1}`` of order ``p``."""
    orders = (p ** (2 * m + 1),) * 2 + (p,) * p ** m
    return CoverData(0, (BranchPoint(orders),))


def pries_cover(p: int, j: int, m: int) -> CoverData:
    """``Z/p x| Z/m`` with conductor ``j`` at the single branch point."""
    return CoverData(0, (BranchPoint((m * p,) + (p,) * j),))
