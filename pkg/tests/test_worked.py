import pytest

from eqdef import worked


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_fermat_pipeline(p):
    q = worked.fermat(p).quantities
    assert q["dim_h1_G_p+1"] == p
    assert q["basis_h1_G_p+1"] == [i for i in range(2, p + 3) if i != p - 1]
    assert q["quotient_step_dims"] == [1, 0]
    assert q["local_bounds"] == [1, 3]
    assert q["tame_survivors"] == [0, 0]
    assert (q["global"], q["total"]) == (0, 0)


def test_fermat_with_oracle_invariants():
    rep = worked.fermat(5, oracle=True)
    assert rep.quantities["invariant_exponents"] == [2, 5]
    assert not any("differ" in n for n in rep.notes)


def test_pcover_case_split():
    for m in (3, 4, 6, 7, 8, 9, 11, 12):
        q = worked.pcover(5, m).quantities
        assert q["d"] == q["d_formula"] == q["d_case_split"]
        assert q["global"] == q["global_formula"]
        if (m + 1) % 5:
            assert q["d_case_split_quoted"] == q["d"] - 1
        else:
            assert q["d_case_split_quoted"] == q["d"]


def test_lehr_matignon_report():
    q = worked.lehr_matignon(5, 2).quantities
    assert q["invariants"] == 1 + 5
    assert q["layer_terms"] == [1, 1, 0, 0]
    assert q["global"] == q["global_formula"] == 0


def test_lehr_matignon_global_formula_drifts_for_large_m():
    rep = worked.lehr_matignon(5, 6)
    assert rep.quantities["global"] != rep.quantities["global_formula"]
    assert any("global contribution" in n for n in rep.notes)


def test_pries_rows_and_annotations():
    rows = {tuple(r.params.values()): r for r in worked.pries_table()}
    assert rows[(13, 19, 6)].quantities == {"r": 3, "dim": 3, "global": 1, "total": 4}
    assert rows[(13, 19, 6)].notes == []
    assert rows[(13, 35, 6)].quantities["global"] == 4
    assert any(n.startswith("global: computed 4, tabulated 9") for n in rows[(13, 35, 6)].notes)


@pytest.mark.parametrize("call", [lambda: worked.fermat(3), lambda: worked.pcover(5, 5),
                                  lambda: worked.pries(13, 19, 5), lambda: worked.lehr_matignon(4, 1)])
def test_rejects_invalid_parameters(call):
    with pytest.raises(ValueError):
        call()
