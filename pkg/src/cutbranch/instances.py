"""Problem families: stable sets, cliques, knapsacks, no-goods and gadgets."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .geometry import IntegerHull, hull, integer_hull
from .lp import LinearConstraint, eq, ge, le
from .numeric import ONE, ZERO, Q, format_rational, is_binary
from .polytope import Polytope


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset

    def __init__(self, n: int, edges):
        norm = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)} outside 0..{n - 1}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(norm))

    def adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def neighbours(self, u: int) -> set:
        return {v for v in range(self.n) if v != u and self.adjacent(u, v)}

    def non_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in itertools.combinations(range(self.n), 2) if not self.adjacent(u, v)]

    def to_json(self) -> dict:
        return {"n": self.n, "edges": sorted([u + 1, v + 1] for u, v in self.edges)}

    @classmethod
    def from_json(cls, obj: dict) -> "Graph":
        return cls(int(obj["n"]), [(u - 1, v - 1) for u, v in obj["edges"]])

    # small families
    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, itertools.combinations(range(n), 2))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def perfect_matching(cls, n: int) -> "Graph":
        if n % 2:
            raise ValueError("perfect matching needs an even vertex count")
        return cls(n, [(2 * i, 2 * i + 1) for i in range(n // 2)])

    @classmethod
    def disjoint_triangles(cls, m: int) -> "Graph":
        edges = []
        for i in range(m):
            a, b, c = 3 * i, 3 * i + 1, 3 * i + 2
            edges += [(a, b), (a, c), (b, c)]
        return cls(3 * m, edges)


def max_clique(G: Graph) -> int:
    best = 1 if G.n else 0
    for size in range(2, G.n + 1):
        if any(all(G.adjacent(u, v) for u, v in itertools.combinations(C, 2))
               for C in itertools.combinations(range(G.n), size)):
            best = size
        else:
            break
    return best


def degeneracy_ordering(G: Graph) -> tuple[int, list[int]]:
    """Repeatedly remove a minimum-degree vertex (smallest index on ties)."""
    alive = set(range(G.n))
    order = []
    d = 0
    while alive:
        v = min(alive, key=lambda u: (len(G.neighbours(u) & alive), u))
        d = max(d, len(G.neighbours(v) & alive))
        order.append(v)
        alive.remove(v)
    return d, order


def greedy_stable_set(G: Graph) -> list[int]:
    """Scan a degeneracy order, keeping vertices with no kept neighbour."""
    _, order = degeneracy_ordering(G)
    chosen: list[int] = []
    for v in order:
        if not any(G.adjacent(v, u) for u in chosen):
            chosen.append(v)
    return sorted(chosen)


@dataclass
class Instance:
    name: str
    polytope: Polytope
    analytic_hull: IntegerHull | None = None
    metadata: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.polytope.n

    def to_json(self) -> dict:
        out = dict(self.polytope.to_json())
        out["name"] = self.name
        out["metadata"] = _jsonable(self.metadata)
        if self.analytic_hull is not None:
            H = self.analytic_hull
            out["analytic_hull"] = {
                "vertices": [[format_rational(v) for v in p] for p in H.vertices],
                "facets": H.facets.to_json() if H.facets is not None else None,
            }
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Instance":
        P = Polytope.from_json(obj)
        H = None
        if obj.get("analytic_hull"):
            verts = [tuple(Q(v) for v in p) for p in obj["analytic_hull"]["vertices"]]
            facets = obj["analytic_hull"].get("facets")
            H = IntegerHull(P.n, verts, Polytope.from_json(facets) if facets else None)
        return cls(obj.get("name", "instance"), P, H, dict(obj.get("metadata", {})))


def _jsonable(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, Graph):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_jsonable(v) for v in items]
    return value


def _hull_from_rows(n: int, rows: Sequence[LinearConstraint], points: Sequence) -> IntegerHull:
    return IntegerHull(n, sorted(points), Polytope(n, rows))


# --------------------------------------------------------------------------
# families


def stable_set_fractional(n: int) -> Instance:
    if n < 2:
        raise ValueError("need n >= 2")
    G = Graph.complete(n)
    rows = [le({u: 1, v: 1}, 1, n) for u, v in sorted(G.edges)]
    P = Polytope(n, rows, label=f"stable-K{n}")
    pts = [tuple(ZERO for _ in range(n))] + [tuple(ONE if i == j else ZERO for i in range(n)) for j in range(n)]
    H = _hull_from_rows(n, [le([1] * n, 1, n)], pts)
    return Instance(f"stable_set_K{n}", P, H, {"graph": G})


def clique_fractional(G: Graph) -> Instance:
    n = G.n
    rows = [le({u: 1, v: 1}, 1, n) for u, v in G.non_edges()]
    P = Polytope(n, rows, label="clique")
    d, order = degeneracy_ordering(G)
    return Instance("clique", P, None, {"graph": G, "k": max_clique(G), "d": d, "order": order})


def knapsack_uniform(n: int, q: int) -> Instance:
    if q < 3 or n < 1:
        raise ValueError("need q >= 3 and n >= 1")
    P = Polytope(n, [le([q] * n, 2 * (q - 1), n)], label=f"knapsack q={q}")
    pts = [tuple(ZERO for _ in range(n))] + [tuple(ONE if i == j else ZERO for i in range(n)) for j in range(n)]
    H = _hull_from_rows(n, [le([1] * n, 1, n)], pts)
    return Instance(f"knapsack_n{n}_q{q}", P, H, {"q": q, "k": 2, "eps": Fraction(2, q)})


def knapsack_sa_point(n: int, q: int, t: int) -> tuple:
    v = Fraction(2 * (q - 1), q) / (n + Fraction((t - 1) * (q - 1), q))
    return (v,) * n


def knapsack_sa_level(n: int, q: int) -> int:
    return (n * (q - 2)) // (q - 1)


def nogood_row(s: Sequence[int], n: int) -> LinearConstraint:
    coeffs = [ONE if v == 0 else -ONE for v in s]
    return ge(coeffs, Fraction(1, 2) - sum(1 for v in s if v == 1), n)


def nogood(n: int, S: Sequence[Sequence[int]]) -> Instance:
    S = sorted({tuple(int(v) for v in s) for s in S})
    if any(len(s) != n or not is_binary(s) for s in S):
        raise ValueError("S must hold 0/1 vectors of length n")
    P = Polytope(n, [nogood_row(s, n) for s in S], label="nogood")
    H = integer_hull(P) if n <= 8 else None
    return Instance("nogood", P, H, {"S": [list(s) for s in S]})


def triangles_limit(n: int) -> Instance:
    """Convex hull of the cube face ``x_n = 0`` and ``Q × {1}``."""
    if n < 7 or n % 6 != 1:
        raise ValueError("need n ≡ 1 (mod 6), n >= 7")
    m = (n - 1) // 3
    G = Graph.disjoint_triangles(m)
    A = Polytope(n, [eq({n - 1: 1}, 0, n)], label="A")
    q_rows = [le({u: 1, v: 1}, 1, n) for u, v in sorted(G.edges)]
    q_rows.append(ge({j: 1 for j in range(n - 1)}, Fraction(2 * m + 1, 2), n))
    q_rows.append(eq({n - 1: 1}, 1, n))
    B = Polytope(n, q_rows, label="Qx1")
    P = Polytope.union([A, B], prune=False)
    pts = [tuple(Q(b) for b in bits) + (ZERO,) for bits in itertools.product((0, 1), repeat=n - 1)]
    H = IntegerHull(n, sorted(pts), Polytope(n, [eq({n - 1: 1}, 0, n)]))
    blocks = [[3 * i + 1, 3 * i + 2, 3 * i + 3] for i in range(m)]
    return Instance(f"triangles_n{n}", P, H, {"m": m, "triangles": blocks, "graph": G})


R3_POINTS = (
    ("0", "0", "0"), ("1", "0", "0"), ("0", "1", "1"), ("1", "1", "1"),
    ("0", "0", "1/2"), ("1/2", "0", "1"), ("1", "1/2", "1"),
)


def r3_example() -> Instance:
    pts = [tuple(Q(v) for v in p) for p in R3_POINTS]
    P = hull(pts, 3)
    P = Polytope(3, P.constraints, box=True, label="r3")
    ints = [p for p in pts if is_binary(p)]
    H = IntegerHull(3, sorted(ints), Polytope(3, [eq([0, -1, 1], 0, 3)]))
    return Instance("r3", P, H, {"points": [list(p) for p in R3_POINTS]})


def remark64(n: int, k: int) -> Instance:
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    rows = [eq({j: 1}, 1 if j < k else Fraction(1, 2), n) for j in range(n)]
    P = Polytope(n, rows, label=f"point n={n} k={k}")
    return Instance(f"remark64_n{n}_k{k}", P, IntegerHull(n, [], None), {"k": k})


def random_instance(n: int, seed: int, rows: int | None = None) -> Instance:
    """Random ``a·x >= rhs`` rows with ``(1/2)·1`` kept feasible."""
    rng = random.Random(seed)
    count = rows if rows is not None else rng.randint(2, 4)
    cons = []
    while len(cons) < count:
        a = [rng.randint(-3, 3) for _ in range(n)]
        if not any(a):
            continue
        half = Fraction(sum(a), 2)
        rhs = (half.numerator // half.denominator) - rng.randint(0, 1)
        cons.append(ge(a, rhs, n))
    P = Polytope(n, cons, label=f"random n={n} seed={seed}")
    return Instance(f"random_n{n}_s{seed}", P, None, {"seed": seed})
