from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from boundedcoh.lp import LPProblem, solve_lp

F = Fraction


def test_minimize_t_above_one():
    p = LPProblem(1, [1])
    p.add([1], ">=", 1)
    r = solve_lp(p)
    assert r.status == "optimal"
    assert r.value == F(1)
    assert r.x == [F(1)]


def test_infeasible():
    p = LPProblem(1, [1])
    p.add([1], "<=", 0)
    p.add([1], ">=", 1)
    assert solve_lp(p).status == "infeasible"


def test_unbounded():
    p = LPProblem(1, [1])
    p.add([1], "<=", 3)
    assert solve_lp(p).status == "unbounded"


def test_equality_constraints():
    p = LPProblem(2, [1, 1])
    p.add([1, -1], "=", F(1, 3))
    p.add([1, 1], ">=", 1)
    r = solve_lp(p)
    assert r.status == "optimal"
    assert r.value == F(1)
    assert r.x[0] - r.x[1] == F(1, 3)


def test_chebyshev_center_style():
    # min t with |x - c_i| <= t for points 0, 1, 5 -> t = 5/2 at x = 5/2
    p = LPProblem(2, [0, 1])
    for c in (0, 1, 5):
        p.add([1, -1], "<=", c)
        p.add([-1, -1], "<=", -c)
    r = solve_lp(p)
    assert r.status == "optimal"
    assert r.value == F(5, 2)
    assert r.x[0] == F(5, 2)


def test_no_variables_feasible_and_infeasible():
    p = LPProblem(0, [])
    p.add([], "<=", 1)
    assert solve_lp(p).status == "optimal"
    q = LPProblem(0, [])
    q.add([], "=", 1)
    assert solve_lp(q).status == "infeasible"


def test_redundant_equalities():
    p = LPProblem(1, [1])
    p.add([1], "=", 2)
    p.add([2], "=", 4)
    r = solve_lp(p)
    assert r.status == "optimal" and r.value == F(2)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-8, 8), min_size=2, max_size=6),
       st.integers(1, 5))
def test_l1_minimization_witness_consistency(cs, denom):
    # minimize sum |x_i| subject to sum x_i = s: optimum is |s|
    s = F(sum(cs), denom)
    n = len(cs)
    # variables: x_1..x_n and t_1..t_n with -t_i <= x_i <= t_i
    p = LPProblem(2 * n, [0] * n + [1] * n)
    p.add([1] * n + [0] * n, "=", s)
    for i in range(n):
        row = [0] * (2 * n)
        row[i] = 1
        row[n + i] = -1
        p.add(list(row), "<=", 0)
        row[i] = -1
        p.add(list(row), "<=", 0)
    r = solve_lp(p)
    assert r.status == "optimal"
    assert r.value == abs(s)
    # witness re-evaluates exactly to the reported optimum
    assert sum(r.x[n:], F(0)) == r.value
    assert sum(r.x[:n], F(0)) == s
