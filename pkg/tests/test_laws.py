import pytest

from oscrank.laws import GRIDS, LAWS, run_laws

QUICK = ["monotonicity", "refinement", "subgroup", "conjugation", "br-le-cb", "directions",
         "finiteness", "continuity", "factor"]


@pytest.mark.parametrize("law", QUICK)
def test_small_grid(law):
    (res,) = run_laws([law], "small")
    assert res.ok, res.failures[:5]
    assert res.cases > 0


def test_laws_are_registered():
    assert set(QUICK) <= set(LAWS)
    assert {"restriction", "osc-consistency"} <= set(LAWS)
    assert set(GRIDS) == {"small", "full"}


def test_unknown_law():
    with pytest.raises((KeyError, ValueError)):
        run_laws(["nope"], "small")
