"""Polytopes, vertex enumeration, hulls and projection."""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cutbranch.geometry import (
    LIMITS, BudgetExceeded, dash_witness, equals_integer_hull, explicit, hull, hull_vertices,
    in_convex_hull, integer_hull, polytope_within, project, same_polytope, vertices,
    vertices_by_bases,
)
from cutbranch.lp import eq, ge, le
from cutbranch.polytope import Polytope, is_member, optimize

half = Fraction(1, 2)


def _random_polytope(n, seed, rows=3):
    rng = random.Random(seed)
    cons = []
    for _ in range(rows):
        a = [rng.randint(-3, 3) for _ in range(n)]
        cons.append(ge(a, rng.randint(-3, 1), n))
    return Polytope(n, cons)


def test_cube_vertices():
    assert len(vertices(Polytope.cube(3))) == 8


def test_simplex_vertices_and_hull():
    P = Polytope(3, [le([1, 1, 1], 1)])
    V = vertices(P)
    assert len(V) == 4
    H = hull(V)
    assert same_polytope(H, P)


@given(st.integers(2, 4), st.integers(0, 10_000), st.integers(1, 4))
def test_double_description_matches_basis_enumeration(n, seed, rows):
    P = _random_polytope(n, seed, rows)
    assert vertices(P) == vertices_by_bases(P)


@given(st.integers(0, 10_000))
def test_hull_of_vertices_reproduces_polytope(seed):
    P = _random_polytope(3, seed)
    V = vertices(P)
    if not V:
        assert P.is_empty()
        return
    H = hull(V)
    assert vertices(H) == V


def test_hull_of_lower_dimensional_set_has_equations():
    H = hull([(0, 0, 1), (1, 0, 1), (0, 1, 1)])
    assert any(c.sense == "=" for c in H.constraints)
    assert is_member(H, (half, 0, 1)) and not is_member(H, (half, 0, 0))


def test_empty_and_point_hulls():
    assert hull([], 2).is_empty()
    P = hull([(half, half)])
    assert vertices(P) == [(half, half)]


def test_hull_vertices_drops_interior_points():
    pts = [(0, 0), (2, 0), (0, 2), (Fraction(1, 2), Fraction(1, 2))]
    assert (Fraction(1, 2), Fraction(1, 2)) not in hull_vertices(pts)
    assert in_convex_hull(pts[:3], (1, 1)) and not in_convex_hull(pts[:3], (2, 2))


def test_restrict_pushes_fixings_into_unions():
    A = Polytope(2, [eq({0: 1}, 0, 2)])
    B = Polytope(2, [eq({0: 1}, 1, 2), le({1: 1}, half, 2)])
    U = Polytope.union([A, B])
    face = U.restrict(0, 1)
    assert not face.lifted
    assert is_member(face, (1, half)) and not is_member(face, (1, 1))
    # the lifted union itself is the hull of both parts
    assert is_member(U, (half, Fraction(3, 4))) and not is_member(U, (1, 1))


def test_union_of_empty_parts():
    E = Polytope(2, [ge([1, 1], 3)])
    assert Polytope.union([E, E]).kind == "empty"
    F = Polytope.cube(2)
    assert Polytope.union([E, F]) is F


def test_meet_flattens():
    a, b, c = (Polytope(2, [le([1, 0], 1)]) for _ in range(3))
    assert len(Polytope.meet([Polytope.meet([a, b]), c]).parts) == 3


@given(st.integers(0, 10_000))
def test_projection_matches_union_vertices(seed):
    P1, P2 = _random_polytope(2, seed), _random_polytope(2, seed + 1)
    if P1.is_empty() or P2.is_empty():
        return
    U = Polytope.union([P1, P2])
    fm = project(U)
    via_vertices = hull(vertices(P1) + vertices(P2))
    assert same_polytope(fm, via_vertices)
    assert same_polytope(explicit(U), via_vertices)


@given(st.integers(0, 10_000), st.booleans())
def test_decomposition_agrees_with_plain_lp(seed, meet):
    P1, P2 = _random_polytope(3, seed), _random_polytope(3, seed + 7)
    S = _random_polytope(3, seed + 13, rows=2)
    R = Polytope.meet([P1, Polytope.union([P1, P2])]) if meet else Polytope.union([P1, P2])
    assert polytope_within(R, S, True).equal == polytope_within(R, S, False).equal


def test_integer_hull_comparison_reports_witness():
    P = Polytope(2, [le([1, 1], Fraction(3, 2))])
    H = integer_hull(P)
    cmp = equals_integer_hull(P, H)
    assert not cmp.equal and sum(cmp.witness) > 1
    assert equals_integer_hull(Polytope(2, [le([1, 1], 1)]), H).equal


def test_optimize_directions():
    P = Polytope(2, [le([1, 1], 1)])
    assert optimize(P, (1, 2), "max").value == 2
    assert optimize(P, (1, 2), "min").value == 0


def test_vertex_budget():
    LIMITS.update(vertex_dim=2)
    with pytest.raises(BudgetExceeded):
        vertices(Polytope.cube(3))


def test_facet_budget():
    LIMITS.update(facet_candidates=5)
    with pytest.raises(BudgetExceeded):
        hull(list(itertools.product((0, 1), repeat=3)))


def test_dash_witness_lies_beyond_facet():
    S = [(1, 0), (0, 1)]
    R = [(1, 1), (2, Fraction(1, 2))]
    x = dash_witness(S, R, (1, 1), 1)
    assert x[0] + x[1] > 1
    for r in R:
        assert in_convex_hull(S + [r], x)
