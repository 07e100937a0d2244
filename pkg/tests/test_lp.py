import math

import numpy as np
import pytest
from oracles import lp_vertex_enumeration, random_bounded_lp

from bankperf.errors import MalformedProblem
from bankperf.lp import FEAS_TOL, LpProblem, LpStatus, solve_lp


def test_simple_upper_bound():
    sol = solve_lp(LpProblem.build([1.0], [([1.0], "<=", 5.0)]))
    assert sol.status is LpStatus.OPTIMAL
    assert sol.objective_value == pytest.approx(5.0, abs=1e-12)


def test_unbounded():
    assert solve_lp(LpProblem.build([1.0], [])).status is LpStatus.UNBOUNDED
    assert solve_lp(LpProblem.build([1.0], [([1.0], ">=", 0.0)])).status is LpStatus.UNBOUNDED


def test_infeasible():
    p = LpProblem.build([1.0], [([1.0], ">=", 5.0), ([1.0], "<=", 3.0)])
    assert solve_lp(p).status is LpStatus.INFEASIBLE


def test_dea_shaped_two_variable_lp():
    # variables (phi, lambda): max phi s.t. lambda*1 <= 1, lambda*2 >= phi*1
    p = LpProblem.build([1.0, 0.0], [([0.0, 1.0], "<=", 1.0), ([-1.0, 2.0], ">=", 0.0)])
    sol = solve_lp(p)
    # vertices of {lambda <= 1, phi <= 2 lambda, phi, lambda >= 0}: (0,0), (0,1), (2,1)
    best, _ = lp_vertex_enumeration([1.0, 0.0], A_ub=[[0, 1], [1, -2]], b_ub=[1, 0])
    assert best == pytest.approx(2.0)
    assert sol.objective_value == pytest.approx(best, abs=1e-12)
    np.testing.assert_allclose(sol.variable_values, [2.0, 1.0], atol=1e-12)


def test_equality_and_negative_rhs():
    # max x + y, x + y = 3, x - y >= -1, x <= 1.5
    p = LpProblem.build([1.0, 1.0], [([1, 1], "=", 3), ([1, -1], ">=", -1), ([1, 0], "<=", 1.5)])
    sol = solve_lp(p)
    assert sol.objective_value == pytest.approx(3.0)
    x, y = sol.variable_values
    assert x + y == pytest.approx(3.0)
    assert x - y >= -1 - 1e-9


def test_free_variable_and_lower_bound():
    # max -|x|-ish: maximize -x with x free and x >= -2 via a constraint
    p = LpProblem.build([-1.0], [([1.0], ">=", -2.0)], free=[0])
    sol = solve_lp(p)
    assert sol.variable_values[0] == pytest.approx(-2.0)
    p = LpProblem.build([-1.0, -1.0], [([1.0, 1.0], "<=", 10.0)], lower_bounds=[1.5, -3.0])
    sol = solve_lp(p)
    np.testing.assert_allclose(sol.variable_values, [1.5, -3.0])
    assert sol.objective_value == pytest.approx(1.5)


def test_redundant_equalities():
    p = LpProblem.build([1.0, 2.0], [([1, 1], "=", 2), ([2, 2], "=", 4), ([1, 0], "<=", 5)])
    sol = solve_lp(p)
    assert sol.status is LpStatus.OPTIMAL
    assert sol.objective_value == pytest.approx(4.0)


@pytest.mark.parametrize(
    "problem",
    [
        LpProblem.build([1.0, 2.0], [([1.0], "<=", 1.0)]),
        LpProblem.build([math.nan], []),
        LpProblem.build([1.0], [([math.inf], "<=", 1.0)]),
        LpProblem.build([1.0], [], lower_bounds=[0.0, 1.0]),
    ],
)
def test_malformed(problem):
    with pytest.raises(MalformedProblem):
        solve_lp(problem)


def test_degenerate_cycling_example_terminates():
    # Beale's classic cycling example; Bland's rule must terminate.
    c = [0.75, -150.0, 0.02, -6.0]
    cons = [
        ([0.25, -60.0, -0.04, 9.0], "<=", 0.0),
        ([0.5, -90.0, -0.02, 3.0], "<=", 0.0),
        ([0.0, 0.0, 1.0, 0.0], "<=", 1.0),
    ]
    sol = solve_lp(LpProblem.build(c, cons))
    assert sol.status is LpStatus.OPTIMAL
    assert sol.objective_value == pytest.approx(0.05)


def _check_optimal_solution(c, cons, sol):
    x = sol.variable_values
    assert np.all(x >= -FEAS_TOL)
    for a, rel, b in cons:
        lhs = float(np.dot(a, x))
        if rel == "<=":
            assert lhs <= b + FEAS_TOL
        elif rel == ">=":
            assert lhs >= b - FEAS_TOL
        else:
            assert abs(lhs - b) <= FEAS_TOL


@pytest.mark.parametrize("seed", range(40))
def test_random_lps_match_vertex_enumeration(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 5))
    c, cons, oracle = random_bounded_lp(rng, n, m_ub=int(rng.integers(1, 4)), m_eq=int(rng.integers(0, 2)), m_ge=int(rng.integers(0, 3)))
    sol = solve_lp(LpProblem.build(c, cons))
    best, _ = lp_vertex_enumeration(**oracle)
    assert sol.status is LpStatus.OPTIMAL
    assert sol.objective_value == pytest.approx(best, abs=1e-6)
    _check_optimal_solution(c, cons, sol)


def test_determinism():
    rng = np.random.default_rng(7)
    c, cons, _ = random_bounded_lp(rng, 4, 3, 1, 2)
    p = LpProblem.build(c, cons)
    a, b = solve_lp(p), solve_lp(p)
    assert a.objective_value == b.objective_value
    assert a.variable_values.tobytes() == b.variable_values.tobytes()
