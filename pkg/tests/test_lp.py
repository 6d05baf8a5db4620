"""Exact LP solver, cross-checked against certificates and scipy's HiGHS."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cutbranch.lp import (
    LinearConstraint, LPProblem, eq, feasibility, ge, le, lp_solve, verify_farkas, verify_optimal,
)

scipy_opt = pytest.importorskip("scipy.optimize")


def test_small_optimum_with_duals():
    # max x + y  s.t.  x + 2y <= 4, 3x + y <= 6
    prob = LPProblem((le([1, 2], 4), le([3, 1], 6), ge([1, 0], 0), ge([0, 1], 0)), (1, 1), "max")
    out = lp_solve(prob)
    assert out.optimal and out.point == (Fraction(8, 5), Fraction(6, 5))
    assert out.value == Fraction(14, 5)
    assert verify_optimal(prob, out)


def test_infeasible_returns_farkas():
    rows = (ge([1, 1], 3), le([1, 0], 1), le([0, 1], 1))
    out = lp_solve(LPProblem(rows, (1, 0), "min"))
    assert out.infeasible and verify_farkas(rows, out.certificate)


def test_unbounded_ray():
    out = lp_solve(LPProblem((ge([1, -1], 0),), (1, 1), "max"))
    assert out.status == "unbounded"
    assert out.ray[0] + out.ray[1] > 0 and out.ray[0] - out.ray[1] >= 0


def test_zero_objective_is_feasibility():
    out = lp_solve(LPProblem((eq([1, 1], 1),), (0, 0), "max"))
    assert out.optimal and sum(out.point) == 1 and out.value == 0


def test_contradictory_constant_row():
    rows = (LinearConstraint((), ">=", Fraction(1), 2),)
    out = feasibility(rows, 2)
    assert out.infeasible and verify_farkas(rows, out.certificate)


def test_farkas_rejects_bad_certificates():
    rows = (ge([1], 1), le([1], 0))
    assert not verify_farkas(rows, (Fraction(-1), Fraction(-1)))
    assert not verify_farkas(rows, None)
    assert verify_farkas(rows, (Fraction(1), Fraction(-1)))


def test_problem_validation():
    with pytest.raises(ValueError):
        LPProblem((ge([1, 1], 0),), (1,), "max")
    with pytest.raises(ValueError):
        LPProblem((), (1,), "sideways")
    with pytest.raises(ValueError):
        LinearConstraint.make([1], "!=", 0)


def test_degenerate_cycling_example():
    # Beale's classic cycling instance under textbook pricing
    rows = (
        le([Fraction(1, 4), -8, -1, 9], 0),
        le([Fraction(1, 2), -12, Fraction(-1, 2), 3], 0),
        le([0, 0, 1, 0], 1),
    ) + tuple(ge({j: 1}, 0, 4) for j in range(4))
    prob = LPProblem(rows, (Fraction(3, 4), -20, Fraction(1, 2), -6), "max")
    out = lp_solve(prob)
    assert out.optimal and out.value == Fraction(5, 4)
    assert verify_optimal(prob, out)


coef = st.integers(-4, 4)


@st.composite
def random_lps(draw):
    n = draw(st.integers(1, 4))
    m = draw(st.integers(1, 5))
    rows = []
    for _ in range(m):
        a = draw(st.lists(coef, min_size=n, max_size=n))
        rows.append(LinearConstraint.make(a, draw(st.sampled_from([">=", "<=", "="])), draw(coef), n))
    boxed = draw(st.booleans())
    if boxed:
        for j in range(n):
            rows.append(ge({j: 1}, -3, n))
            rows.append(le({j: 1}, 3, n))
    obj = draw(st.lists(coef, min_size=n, max_size=n))
    return LPProblem(tuple(rows), tuple(obj), draw(st.sampled_from(["min", "max"]))), boxed


def _highs(problem: LPProblem):
    n = problem.nvars
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for c in problem.constraints:
        row = [float(v) for v in c.coeffs]
        if c.sense == "<=":
            A_ub.append(row), b_ub.append(float(c.rhs))
        elif c.sense == ">=":
            A_ub.append([-v for v in row]), b_ub.append(-float(c.rhs))
        else:
            A_eq.append(row), b_eq.append(float(c.rhs))
    sign = -1 if problem.direction == "max" else 1
    return scipy_opt.linprog(
        [sign * float(v) for v in problem.objective],
        A_ub=A_ub or None, b_ub=b_ub or None, A_eq=A_eq or None, b_eq=b_eq or None,
        bounds=[(None, None)] * n, method="highs",
    )


@given(random_lps())
def test_certificates_and_highs_agree(case):
    problem, boxed = case
    out = lp_solve(problem)
    ref = _highs(problem)
    if out.optimal:
        assert verify_optimal(problem, out)
        assert ref.status == 0
        sign = -1 if problem.direction == "max" else 1
        assert abs(sign * ref.fun - float(out.value)) < 1e-7
    elif out.infeasible:
        assert verify_farkas(problem.constraints, out.certificate)
        assert ref.status == 2
    else:
        assert not boxed and ref.status == 3
        assert all(c.satisfied(out.point) for c in problem.constraints)
