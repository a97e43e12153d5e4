import json
import warnings

import pytest
from hypothesis import given, strategies as st

from eqdef.cohomology import DimBound, dim_h1_cyclic
from eqdef.filtration import RamificationFiltration
from eqdef.globalcontrib import (
    BranchPoint,
    CoverData,
    NegativeGlobalWarning,
    fermat_cover,
    global_contribution,
    lehr_matignon_cover,
    orders_from_filtration,
    pcover_cover,
    pries_cover,
    total_dimension,
)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_fermat_global_is_zero(p):
    assert global_contribution(fermat_cover(p)) == 0


@pytest.mark.parametrize("m", [3, 4, 6, 7, 8, 9, 11, 12])
def test_pcover_global(m):
    p = 5
    assert global_contribution(pcover_cover(p, m)) == m - 2 - (m + 1) // p


def test_pries_global():
    assert global_contribution(pries_cover(13, 19, 6)) == 1
    assert global_contribution(pries_cover(13, 35, 6)) == 4


def test_lehr_matignon_global():
    assert global_contribution(lehr_matignon_cover(5, 2)) == 0


point_orders = st.lists(st.sampled_from([5, 25]), min_size=1, max_size=8).map(
    lambda xs: tuple(sorted(xs, reverse=True))
)


@given(st.integers(0, 4), st.lists(point_orders, max_size=4), point_orders)
def test_additive_over_branch_points(g, pts, extra):
    base = CoverData(g, tuple(BranchPoint(o) for o in pts))
    more = CoverData(g, base.branch_points + (BranchPoint(extra),))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NegativeGlobalWarning)
        assert global_contribution(more) - global_contribution(base) == BranchPoint(extra).contribution()


def test_negative_values_warn_and_are_returned():
    with pytest.warns(NegativeGlobalWarning):
        assert global_contribution(CoverData(0, ())) == -3


def test_unramified_total():
    rep = total_dimension(global_contribution(CoverData(2, ())), [])
    assert rep.total == (3, 3) and rep.exact == 3


def test_pries_total():
    rep = total_dimension(1, [DimBound(3, 3, 3, 3, "closed form")])
    assert rep.exact == 4


def test_interval_total():
    rep = total_dimension(0, [DimBound(1, 3, 6)])
    assert rep.total == (1, 3) and rep.exact is None


def test_orders_from_filtration_repeats_orders():
    filt = RamificationFiltration.from_pairs(5, [(1, 125), (6, 5)], tame_order=24)
    assert orders_from_filtration(filt) == (3000, 125, 5, 5, 5, 5, 5)
    assert CoverData(0, (orders_from_filtration(filt), (21,))) == fermat_cover(5)


def test_pcover_split_matches_cyclic_term():
    for m in (3, 4, 6, 7):
        p = 5
        d = m + 1 - -(-(2 * m + 2) // p) + (m + 1) // p
        assert d == dim_h1_cyclic(p, m, -(m + 1))


def test_cover_json():
    cov = fermat_cover(5)
    assert CoverData.from_json(json.dumps(cov.to_dict())) == cov
    with pytest.raises(ValueError, match="genus_quotient"):
        CoverData.from_dict({"branch_points": []})
    with pytest.raises(ValueError, match=r"branch_points\[0\]"):
        CoverData.from_dict({"genus_quotient": 0, "branch_points": [{"orders": "x"}]})


def test_branch_point_validation():
    with pytest.raises(ValueError):
        BranchPoint((1,))
    with pytest.raises(ValueError):
        BranchPoint((5, 25))
    with pytest.warns(UserWarning):
        BranchPoint((6, 4))
