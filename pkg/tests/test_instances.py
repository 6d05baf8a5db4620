import json
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from cutbranch.geometry import equals_integer_hull, integer_hull
from cutbranch.instances import (
    Graph, Instance, clique_fractional, degeneracy_ordering, greedy_stable_set, knapsack_sa_level,
    knapsack_sa_point, knapsack_uniform, max_clique, nogood, r3_example, random_instance,
    remark64, stable_set_fractional, triangles_limit,
)
from cutbranch.polytope import is_member

graphs = st.integers(1, 7).flatmap(
    lambda n: st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1]),
                       max_size=12).map(lambda es: Graph(n, es))
)


def _nx(G):
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges)
    return H


@given(graphs)
def test_degeneracy_matches_core_number(G):
    d, order = degeneracy_ordering(G)
    cores = nx.core_number(_nx(G))
    assert d == max(cores.values(), default=0)
    assert sorted(order) == list(range(G.n))


@given(graphs)
def test_max_clique_matches_networkx(G):
    assert max_clique(G) == max(len(c) for c in nx.find_cliques(_nx(G)))


@given(graphs)
def test_greedy_stable_set_is_stable(G):
    S = greedy_stable_set(G)
    assert not any(G.adjacent(u, v) for u in S for v in S if u < v)


def test_graph_validation_and_json():
    with pytest.raises(ValueError):
        Graph(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.perfect_matching(5)
    G = Graph.cycle(4)
    assert G.to_json()["edges"][0] == [1, 2]
    assert Graph.from_json(G.to_json()) == G


def test_instance_json_roundtrip():
    inst = knapsack_uniform(4, 3)
    back = Instance.from_json(json.loads(json.dumps(inst.to_json())))
    assert back.name == inst.name and back.metadata["eps"] == "2/3"
    assert [c.to_json() for c in back.polytope.constraints] == [c.to_json() for c in inst.polytope.constraints]
    assert back.analytic_hull.vertices == inst.analytic_hull.vertices


@pytest.mark.parametrize("make", [
    lambda: stable_set_fractional(4), lambda: knapsack_uniform(4, 3), lambda: r3_example(),
    lambda: nogood(3, [(0, 0, 0), (1, 1, 0)]),
])
def test_analytic_hulls_match_enumeration(make):
    inst = make()
    H = integer_hull(inst.polytope)
    assert sorted(H.vertices) == sorted(inst.analytic_hull.vertices)
    assert equals_integer_hull(H.facets, inst.analytic_hull).equal


def test_knapsack_formulas():
    assert [knapsack_sa_level(n, 3) for n in (4, 5, 6)] == [2, 2, 3]
    assert knapsack_sa_point(4, 3, 2) == (Fraction(2, 7),) * 4


def test_clique_metadata():
    inst = clique_fractional(Graph.perfect_matching(8))
    assert inst.metadata["k"] == 2 and inst.metadata["d"] == 1


def test_triangles_limit_shape():
    with pytest.raises(ValueError):
        triangles_limit(8)
    inst = triangles_limit(7)
    assert inst.metadata["m"] == 2 and len(inst.analytic_hull.vertices) == 64
    assert is_member(inst.polytope, (Fraction(1, 2),) * 6 + (1,))


def test_remark64_is_a_fractional_point():
    inst = remark64(3, 1)
    assert is_member(inst.polytope, (1, Fraction(1, 2), Fraction(1, 2)))
    assert inst.analytic_hull.empty


@given(st.integers(2, 4), st.integers(0, 10_000))
def test_random_instances_keep_half_point(n, seed):
    inst = random_instance(n, seed)
    assert is_member(inst.polytope, (Fraction(1, 2),) * n)
    assert random_instance(n, seed).to_json() == inst.to_json()
