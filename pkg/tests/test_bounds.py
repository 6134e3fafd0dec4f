import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from chamberiso import bounds
from chamberiso.bounds import (
    DownSet,
    appendix_AB,
    appendix_campaign,
    conjecture_bound,
    convex_bounds,
    enumerate_down_sets,
    gen_binom,
    kk_oracle,
    size_inequality_applies,
    size_inequality_holds,
    size_formula,
    solve_k,
    verify_appendix,
)


def test_gen_binom_values():
    assert gen_binom(5, 2) == 10
    assert gen_binom(2.5, 2) == pytest.approx(1.875)
    assert gen_binom(Fraction(5, 2), 2) == Fraction(15, 8)
    assert gen_binom(-1, 3) == -1
    assert gen_binom(7.0, 0) == 1
    with pytest.raises(ValueError):
        gen_binom(3, -1)


@pytest.mark.parametrize("size,d,k", [(7, 2, 3), (8, 3, 3), (4, 3, 2), (16, 2, 5), (15, 3, 4), (2, 2, 1)])
def test_solve_k_integer_points(size, d, k):
    sol = solve_k(size, d)
    assert sol.k == k and sol.is_integer


def test_solve_k_below_floor():
    with pytest.raises(ValueError):
        solve_k(3, 3)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=1, max_value=5), st.floats(min_value=0, max_value=60))
def test_solve_k_inverts_size_formula(d, extra):
    k = (d - 1) + extra
    size = size_formula(k, d)
    assert solve_k(size, d).k == pytest.approx(k, rel=1e-9, abs=1e-9)


def test_conjecture_bound_values():
    assert conjecture_bound(16, 2) == 6
    assert conjecture_bound(8, 3) == 7
    assert conjecture_bound(7, 2) == 4


def test_convex_bound_variants():
    # |S| = 7 in the plane: k = 3
    assert convex_bounds(7, 2) == 4
    assert convex_bounds(7, 2, variant="bounded") == 3 * 1 + 2 * 3
    assert convex_bounds(7, 2, 10, variant="weighted") == 2 * 1 + 1 * 3
    with pytest.raises(ValueError):
        convex_bounds(7, 2, 3, variant="weighted")
    with pytest.raises(ValueError):
        convex_bounds(7, 2, variant="nope")


def test_down_set_counts_are_dedekind_numbers():
    # the number of down-sets of 2^[g] (empty family included) is the Dedekind number M(g)
    assert [len(enumerate_down_sets(g)) for g in range(0, 5)] == [2, 3, 6, 20, 168]


def test_down_set_validation():
    DownSet(3, frozenset({0, 1, 2, 3}))
    with pytest.raises(ValueError):
        DownSet(3, frozenset({0, 3}))


@pytest.mark.parametrize("ground", [1, 2, 3, 4])
def test_kruskal_katona_small(ground):
    for m in range(ground + 1):
        rep = kk_oracle(ground, m)
        assert rep.ok, rep.counterexamples
        assert rep.checks_i == rep.down_sets


def test_kruskal_katona_checker_catches_non_down_sets():
    # ten 2-sets with no smaller sets is not subset-closed and breaks form (i)
    _, _, _, fails = bounds._kk_profile((0, 0, 10), 2, "i")
    assert fails


def test_appendix_example():
    rep = verify_appendix(12, 3, 15)
    assert rep.k[1] is None
    assert rep.B[2] == pytest.approx(25) and rep.B[3] == pytest.approx(17)
    assert rep.ok


def test_appendix_definitions_at_integer_k():
    n, d = 9, 3
    A, B = appendix_AB(n, d, d, 4)
    assert A == size_formula(4, 3) and isinstance(A, int)
    assert B == sum((d - i) * math.comb(4, i) for i in range(d))


def test_size_inequality():
    assert size_inequality_applies(20, 2) and not size_inequality_applies(8, 2)
    assert all(size_inequality_holds(n, d) for n in range(2, 61) for d in range(1, n) if size_inequality_applies(n, d))


def test_appendix_campaign_small():
    res = appendix_campaign([2, 3], range(8, 13), count=3, a2_n_max=30)
    assert res["pairs_checked"] > 0 and not res["violations"] and not res["a2_failures"]


def test_bound_table_csv():
    text = bounds.bound_table_csv([(1, 2, 5), (7, 2, 5)])
    lines = text.splitlines()
    assert lines[0] == "size,d,n,k,conjecture_bound,basic,bounded,weighted"
    assert lines[1] == "1,2,5,,,,,"
    assert lines[2].startswith("7,2,5,3,4,4,9,5")
