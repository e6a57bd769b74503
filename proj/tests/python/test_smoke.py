import math

import pytest

import smallf


def test_version():
    assert smallf.__version__ == "0.1.0"


def test_dimension_functions():
    h = smallf.DimensionFunction(0.5, 0)
    assert h(0.25) == pytest.approx(0.5)
    assert str(smallf.DimensionFunction.parse("x^0.5")) == str(h)
    assert smallf.compare(smallf.DimensionFunction(0.7, 0), h) == "Greater"
    with pytest.raises(ValueError):
        smallf.DimensionFunction.parse("nonsense")


def test_covering_and_threshold():
    assert smallf.discrepancy_threshold(100) == 15
    r = smallf.covering_radius(20)
    assert r["pass"]
    assert smallf.verify_gset(16, 2000)["all_covered"]


def test_st_counts():
    res = smallf.compute_St(4, "1/2", "1/2")
    assert res["count"] == 10
    assert res["values"][:3] == ["0", "1/8", "1/4"]
    with pytest.raises(smallf.PreconditionError):
        smallf.compute_St(4, "1/5", "1")
    assert smallf.union_St_count(4, "1") <= 80


def test_cantor_and_critlow():
    logs, cls = smallf.dk_sequence([2] * 20, ["1/%d" % 3**k for k in range(1, 21)],
                                   smallf.DimensionFunction(math.log(2) / math.log(3), 0))
    assert cls == "positive"
    assert math.exp(logs[-1]) == pytest.approx(2 ** (math.log(2) / math.log(3) - 1))
    assert smallf.critlow_ex48(2, 1.0)[0] == "positive"
    assert smallf.critlow_ex48(2, 2.0)[0] == "zero"


def test_jarnik_and_witness():
    assert smallf.witness_search("sqrt(2)-1", 12)[:2] == (5, 12)
    sep = smallf.min_separation(16, "x^3")
    assert sep["pass"]
    assert smallf.primes_in_window(16) == [17, 19, 23, 29, 31]


def test_sumset_and_towers():
    covered, missing = smallf.sumset_covers(4, [0, 1], [0, 2], 6)
    assert covered and not missing
    towers = smallf.tower_sequence("ex48", 2.0, 10.0, 3)
    assert towers[0]["ln_n"] == "10"


def test_acceptance_subset():
    rs = smallf.run_acceptance([2, 9], 0)
    assert [r["id"] for r in rs] == [2, 9]
    assert all(r["pass"] for r in rs)
