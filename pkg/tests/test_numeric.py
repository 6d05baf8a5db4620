from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cutbranch.numeric import (
    Q, affine_rank, dot, format_rational, nullspace, parse_rational, parse_vector, primitive,
    rank, solve_linear_system,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)


def test_q_refuses_floats_and_bools():
    with pytest.raises(TypeError):
        Q(0.5)
    with pytest.raises(TypeError):
        Q(True)
    assert Q("3/6") == Fraction(1, 2)


def test_decimal_literals_rejected():
    with pytest.raises(ValueError):
        parse_rational("0.25")
    with pytest.raises(ValueError):
        parse_rational("  ")


def test_gmpy_values_coerce():
    gmpy2 = pytest.importorskip("gmpy2")
    assert Q(gmpy2.mpq(3, 9)) == Fraction(1, 3)


@given(rationals)
def test_format_parse_roundtrip(q):
    assert parse_rational(format_rational(q)) == q


def test_parse_vector():
    assert parse_vector("1/3, 0,2") == (Fraction(1, 3), 0, 2)


def test_primitive_scales_to_coprime_integers():
    assert primitive([Fraction(1, 2), Fraction(3, 4)], Fraction(5, 4)) == ((2, 3), 5)
    assert primitive([4, -6], 8) == ((2, -3), 4)


def test_dot_dimension_mismatch():
    with pytest.raises(ValueError):
        dot([1, 2], [1])


def test_linear_system_classification():
    assert solve_linear_system([[1, 1], [1, -1]], [2, 0]).point == (1, 1)
    assert solve_linear_system([[1, 1], [2, 2]], [1, 3]).status == "inconsistent"
    under = solve_linear_system([[1, 1, 0]], [1])
    assert under.status == "underdetermined" and len(under.nullspace) == 2


@given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=1, max_size=4),
       st.lists(rationals, min_size=3, max_size=3))
def test_solution_satisfies_system(M, x):
    rhs = [dot(row, x) for row in M]
    sol = solve_linear_system(M, rhs)
    assert sol.status != "inconsistent"
    assert all(dot(row, sol.point) == b for row, b in zip(M, rhs))
    for v in sol.nullspace:
        assert all(dot(row, v) == 0 for row in M)
    assert rank(M) + len(sol.nullspace) == 3


def test_nullspace_of_empty_matrix():
    assert len(nullspace([], 3)) == 3


def test_affine_rank():
    assert affine_rank([(0, 0), (1, 0), (0, 1)]) == 3
    assert affine_rank([(0, 0), (1, 1), (2, 2)]) == 2
