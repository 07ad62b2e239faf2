from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ffplane.report import Check, failures, jsonable, ratio_bounds, root_bounds


@given(st.fractions(min_value=0, max_value=10**12), st.integers(2, 5))
def test_root_bounds_bracket_the_root(x, n):
    lo, hi = root_bounds(x, n)
    assert lo**n <= x <= hi**n
    assert hi - lo <= Fraction(1, 10**6)


def test_exact_roots_collapse():
    assert root_bounds(27, 3) == (3, 3)
    assert root_bounds(Fraction(1, 4), 2) == (Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(ValueError):
        root_bounds(-1, 2)


def test_ratio_bounds():
    assert ratio_bounds(6, Fraction(2), Fraction(3)) == (2, 3)
    assert ratio_bounds(6, Fraction(0), Fraction(3)) == (0, 0)


def test_check_records():
    ok = Check("a", "x", Fraction(1, 2), 1, "<=")
    bad = Check("b", "x", 2, 1, "<=")
    diag = Check("c", "x", 2, 1, "<=", asserted=False, note="info")
    assert ok.passed and not bad.passed
    assert failures([ok, bad, diag]) == [bad]
    d = diag.to_dict()
    assert d["asserted"] is False and d["note"] == "info" and d["pass"] is False
    assert ok.to_dict()["lhs"] == "1/2"


def test_jsonable():
    import numpy as np

    assert jsonable({1: Fraction(3, 1), "x": (np.int64(4), Fraction(1, 3))}) == {"1": "3", "x": [4, "1/3"]}
    assert jsonable(None) is None and jsonable(True) is True
