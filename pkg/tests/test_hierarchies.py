import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cutbranch.geometry import BudgetExceeded, equals_integer_hull, explicit, integer_hull, vertices
from cutbranch.hierarchies import (
    b_k_member, b_k_polytope, l_iterate, l_member, l_step, sa_lift, sa_member, t_k_member,
    t_k_polytope,
)
from cutbranch.instances import random_instance, stable_set_fractional
from cutbranch.polytope import is_member

third = Fraction(1, 3)


def test_sa_point_on_k4():
    # sum is 4/3, so the point leaves the hull by level n
    P = stable_set_fractional(4).polytope
    assert sa_member(P, 1, (third,) * 4)
    assert not sa_member(P, 4, (third,) * 4)


def test_sa_shadow_coordinates_come_first():
    lift = sa_lift(stable_set_fractional(3).polytope, 1)
    assert [sorted(S) for S in lift.subsets[:3]] == [[0], [1], [2]]
    assert lift.nvars == 6 and lift.result().provenance == {"operator": "SA", "params": {"t": 1}}


def test_sa_level_budget():
    with pytest.raises(BudgetExceeded):
        sa_lift(stable_set_fractional(3).polytope, 7)
    with pytest.raises(ValueError):
        sa_lift(stable_set_fractional(3).polytope, 0)


@settings(max_examples=10)
@given(st.integers(0, 5000))
def test_sa_level_n_is_integer_hull(seed):
    P = random_instance(2, seed).polytope
    R = sa_lift(P, 2).polytope
    assert equals_integer_hull(R, integer_hull(P)).equal


@settings(max_examples=10)
@given(st.integers(0, 5000))
def test_l_member_matches_lifted_membership(seed):
    P = random_instance(3, seed).polytope
    L = l_iterate(P, 1).polytope
    for v in vertices(explicit(L)) + [(Fraction(1, 2),) * 3, (0, Fraction(1, 2), 1)]:
        assert l_member(P, 1, v) == is_member(L, v)


@settings(max_examples=10)
@given(st.integers(0, 5000))
def test_operator_membership_routes_agree(seed):
    P = random_instance(3, seed).polytope
    B = b_k_polytope(P, 2).polytope
    T = t_k_polytope(P, 2).polytope
    grid = [tuple(Fraction(c, 2) for c in pt) for pt in itertools.product(range(3), repeat=3)]
    for x in grid:
        assert b_k_member(P, 2, x) == is_member(B, x)
        assert t_k_member(P, 2, x) == is_member(T, x)


def test_two_l_steps_close_the_square():
    P = random_instance(2, 3).polytope
    R = l_iterate(P, 2)
    assert R.operator == "L" and R.params == {"k": 2}
    assert equals_integer_hull(R.polytope, integer_hull(P)).equal


def test_l_step_result_uses_shortcut():
    P = stable_set_fractional(3).polytope
    res = l_step(P)
    assert not res.contains((Fraction(1, 2),) * 3)
    assert res.contains((third,) * 3) == is_member(res.polytope, (third,) * 3)


def test_l_iterate_budget():
    with pytest.raises(BudgetExceeded):
        l_iterate(stable_set_fractional(4).polytope, 3, max_aux=50)


def test_b_k_bounds():
    with pytest.raises(ValueError):
        b_k_polytope(stable_set_fractional(3).polytope, 4)
