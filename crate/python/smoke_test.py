"""Smoke test for the nilmult_py extension module.

Build and install with `pip install --no-build-isolation -e crates/py`
(needs maturin), then run `python python/smoke_test.py`.
"""

import nilmult_py as nm


def main():
    assert nm.witt(2, 3) == 2
    assert nm.witt(3, 4) == 18
    basis = nm.hall_basis(2, 3)
    assert len(basis) == 5, basis

    # [x2, x1] collects to the weight-2 coordinate
    assert nm.collect("x1 x2", 2, 2) == [1, 1, 0]
    assert nm.collect("[x2,x1]", 2, 2)[2] != 0
    assert all(e == 0 for e in nm.collect("[[x1,x2],x1]", 2, 2))

    z22 = nm.AbelianGroup([2, 2])
    assert str(z22) == "Z_2^2"
    assert nm.multiplier([2, 2], 1) == nm.AbelianGroup([2])
    assert nm.multiplier([12], 4).is_trivial()
    assert nm.bar_h2("builtin:Q8").is_trivial()
    assert str(nm.bar_h2("builtin:D4")) == "Z_2"
    assert z22.tor(nm.AbelianGroup([4])) == z22
    assert z22.to_dict() == {"free_rank": 0, "invariant_factors": [2, 2]}

    r = nm.free_product("builtin:Z9", "builtin:Z4xZ2", 1)
    assert r["conclusion"] == {"free_rank": 0, "invariant_factors": [2]}, r
    assert nm.free_product_multiplier("builtin:Z3", "builtin:Z4", 2).is_trivial()
    try:
        nm.free_product_multiplier("builtin:Z2", "builtin:Z2", 2)
    except nm.HypothesisError as e:
        assert "Tor(G^ab, H^ab) = Z_2" in str(e)
    else:
        raise AssertionError("Z2 * Z2 should fail the hypotheses")

    f = nm.formula_i("builtin:Z2", "builtin:Z2")
    assert f["conclusion"] == {"free_rank": 0, "invariant_factors": [2]}, f
    c = nm.corollary("builtin:A5", "builtin:A5")
    assert "(iv)" in c["satisfied"], c

    try:
        nm.collect("x1 (", 2, 2)
    except nm.ParseError:
        pass
    else:
        raise AssertionError("bad word accepted")
    print("smoke test ok")


if __name__ == "__main__":
    main()
