from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from chamberiso._exact import AffineMap, dot, sign, solve_equalities, strict_feasible

linprog = pytest.importorskip("scipy.optimize").linprog

small = st.integers(min_value=-4, max_value=4)


def _lp_slack(cons, m):
    """Float oracle: max t with coef.y + const >= t inside a large box."""
    # variables (y_1..y_m, t); maximise t
    c = [0.0] * m + [-1.0]
    A = [[-float(v) for v in coef] + [1.0] for coef, _ in cons]
    b = [float(const) for _, const in cons]
    res = linprog(c, A_ub=A, b_ub=b, bounds=[(-1e4, 1e4)] * m + [(None, 1.0)], method="highs")
    return -res.fun


def test_dot_and_sign():
    assert dot([Fraction(1, 2), 3], [4, Fraction(1, 3)]) == 3
    assert [sign(x) for x in (-2, 0, Fraction(1, 9))] == [-1, 0, 1]


def test_affine_map_cut_restricts_to_hyperplane():
    amap = AffineMap.identity(3).cut([1, 1, 1], Fraction(-3))
    assert amap.dim == 2
    for t in ([0, 0], [1, -2], [Fraction(1, 2), 5]):
        p = amap.point(t)
        assert sum(p) == 3


def test_cut_detects_inconsistent_and_implied():
    amap = AffineMap.identity(2).cut([1, 0], Fraction(-1))
    assert amap.cut([2, 0], Fraction(-2)) is amap
    assert amap.cut([1, 0], Fraction(0)) is None


def test_solve_equalities_point():
    amap = solve_equalities([([1, 1], Fraction(-2)), ([1, -1], Fraction(0))], 2)
    assert amap.dim == 0 and amap.point([]) == [1, 1]


def test_strict_feasible_open_triangle():
    cons = [([0, -1], Fraction(1)), ([-1, 1], Fraction(0)), ([1, 1], Fraction(0))]
    y = strict_feasible(cons, 2)
    assert y is not None
    assert all(dot(c, y) + k > 0 for c, k in cons)


def test_strict_feasible_rejects_touching_halfplanes():
    # x > 0 and -x > 0 share only the line x = 0
    assert strict_feasible([([1, 0], Fraction(0)), ([-1, 0], Fraction(0))], 2) is None


@settings(max_examples=150, deadline=None)
@given(st.lists(st.tuples(st.tuples(small, small), small), min_size=1, max_size=6))
def test_strict_feasible_agrees_with_lp(rows):
    cons = [([Fraction(a), Fraction(b)], Fraction(c)) for (a, b), c in rows if (a, b) != (0, 0)]
    if not cons:
        return
    y = strict_feasible(cons, 2)
    slack = _lp_slack(cons, 2)
    if y is not None:
        assert all(dot(c, y) + k > 0 for c, k in cons)
        assert slack > 0
    else:
        assert slack < 1e-7
